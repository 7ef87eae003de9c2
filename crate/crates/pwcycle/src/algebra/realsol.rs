//! Real solutions of a square polynomial system from its elimination chain.

use num_complex::Complex64;

use super::elim::Elimination;
use super::poly::{CompiledPoly, Poly, Var, NVARS};
use super::unipoly::{RootInterval, UniPoly};
use super::AlgebraError;

/// Relative residual |E| / max(1, sum of |terms|) used by every screen.
pub fn residual(e: &Poly, vals: &[f64; NVARS]) -> f64 {
    e.eval_f64(vals).abs() / e.eval_abs_f64(vals).max(1.0)
}

/// One real root of the eliminant with its multiplicity in the raw eliminant.
#[derive(Clone, Debug)]
pub struct EliminantRoot {
    pub interval: RootInterval,
    pub multiplicity: usize,
}

/// Real roots of `p` grouped by squarefree factor, refined to `tol`.
pub fn eliminant_roots(p: &UniPoly, tol: f64) -> Result<Vec<EliminantRoot>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = vec![];
    for (f, m) in p.squarefree_decomposition() {
        for iv in f.isolate_real_roots()? {
            out.push(EliminantRoot { interval: f.refine_root(&iv, tol), multiplicity: m });
        }
    }
    out.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    Ok(out)
}

/// All roots of a real polynomial (ascending coefficients), by Aberth iteration.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return vec![];
    }
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-13 * scale {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![Complex64::new(-c[0] / c[1], 0.0)];
    }
    if n == 2 {
        let (a, b, k) = (c[2], c[1], c[0]);
        let d = b * b - 4.0 * a * k;
        let q = if d >= 0.0 {
            -0.5 * (b + b.signum() * d.sqrt())
        } else {
            return vec![
                Complex64::new(-b / (2.0 * a), (-d).sqrt() / (2.0 * a)),
                Complex64::new(-b / (2.0 * a), -(-d).sqrt() / (2.0 * a)),
            ];
        };
        if q == 0.0 {
            return vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        }
        return vec![Complex64::new(q / a, 0.0), Complex64::new(k / q, 0.0)];
    }
    let lead = c[n];
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, k| m.max((k / lead).abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(c[n], 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            d = d * x + p;
            p = p * x + c[k];
        }
        (p, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, d) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Real roots, keeping those whose imaginary part is within rounding of zero.
pub fn near_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = complex_roots(coeffs)
        .into_iter()
        .filter(|r| r.im.abs() <= 1e-7 * (1.0 + r.re.abs()))
        .map(|r| r.re)
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
    out
}

/// Newton's method on a square system, keeping the iterate of least residual.
pub fn newton_polish(eqs: &[Poly], unknowns: &[Var], start: &[f64; NVARS]) -> [f64; NVARS] {
    let n = unknowns.len();
    if eqs.len() != n {
        return *start;
    }
    let f: Vec<CompiledPoly> = eqs.iter().map(CompiledPoly::new).collect();
    let jac: Vec<Vec<CompiledPoly>> = eqs
        .iter()
        .map(|e| unknowns.iter().map(|&v| CompiledPoly::new(&e.derivative(v))).collect())
        .collect();
    let mut x = *start;
    let r0: f64 = f.iter().map(|p| p.eval(&x).abs()).sum();
    let mut best = (r0, x);
    for _ in 0..30 {
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|j| jac[i][j].eval(&x)).collect();
                row.push(-f[i].eval(&x));
                row
            })
            .collect();
        let Some(dx) = gauss_solve(&mut a) else { break };
        let mut step = 0.0f64;
        for (j, &v) in unknowns.iter().enumerate() {
            x[v.0 as usize] += dx[j];
            step = step.max(dx[j].abs() / (1.0 + x[v.0 as usize].abs()));
        }
        let r: f64 = f.iter().map(|p| p.eval(&x).abs()).sum();
        if r.is_finite() && r <= best.0 {
            best = (r, x);
        }
        if step < 1e-16 {
            break;
        }
    }
    best.1
}

fn gauss_solve(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a.iter().flat_map(|r| r[..n].iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())?;
        if a[p][k].abs() <= 1e-14 * scale {
            return None;
        }
        a.swap(k, p);
        for i in k + 1..n {
            let m = a[i][k] / a[k][k];
            for j in k..=n {
                a[i][j] -= m * a[k][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (a[k][n] - s) / a[k][k];
    }
    Some(x)
}

/// Walks the elimination stages backwards from one value of the surviving
/// variable, solving at each stage the lowest-degree equation univariate in
/// the variable being recovered.  Returns every consistent real point after
/// Newton polishing on `original`, screened to residual below 1e-9.
pub fn back_substitute(
    el: &Elimination,
    survivor: Var,
    root: f64,
    original: &[Poly],
    unknowns: &[Var],
) -> Vec<[f64; NVARS]> {
    let mut start = [0.0; NVARS];
    start[survivor.0 as usize] = root;
    let mut partials = vec![start];
    let mut known = vec![survivor];
    for k in (0..el.order.len()).rev() {
        let var = el.order[k];
        let mut next = vec![];
        for vals in &partials {
            let usable: Vec<&Poly> = el.stages[k]
                .iter()
                .filter(|e| e.contains(var) && e.vars().iter().all(|v| *v == var || known.contains(v)))
                .collect();
            let mut by_degree = usable.clone();
            by_degree.sort_by_key(|e| (e.degree_in(var), e.num_terms()));
            for e in &by_degree {
                let coeffs: Vec<f64> = e.coeffs_in(var).iter().map(|c| c.eval_f64(vals)).collect();
                let sizes: Vec<f64> = e.coeffs_in(var).iter().map(|c| c.eval_abs_f64(vals)).collect();
                let scale = sizes.iter().fold(0.0f64, |m, s| m.max(*s)).max(1e-300);
                // vanishes identically at this point: try a different equation
                if coeffs.iter().enumerate().skip(1).all(|(i, c)| c.abs() <= 1e-10 * sizes[i].max(scale * 1e-3)) {
                    continue;
                }
                for r in near_real_roots(&coeffs) {
                    let mut cand = *vals;
                    cand[var.0 as usize] = r;
                    if usable.iter().all(|q| residual(q, &cand) < 1e-6) {
                        next.push(cand);
                    }
                }
                break;
            }
        }
        partials = next;
        known.push(var);
    }
    let mut out: Vec<[f64; NVARS]> = vec![];
    for p in partials {
        let q = newton_polish(original, unknowns, &p);
        if !original.iter().all(|e| residual(e, &q) < 1e-9) {
            continue;
        }
        let dup = out.iter().any(|o| {
            unknowns
                .iter()
                .all(|v| (o[v.0 as usize] - q[v.0 as usize]).abs() <= 1e-9 * (1.0 + q[v.0 as usize].abs()))
        });
        if !dup {
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::elim::eliminate;

    #[test]
    fn aberth_finds_all_roots() {
        // (x-1)(x-2)(x+3)(x^2+1)
        let c = [6.0, -7.0, 6.0, -6.0, 0.0, 1.0];
        let r = near_real_roots(&c);
        assert_eq!(r.len(), 3, "{r:?}");
        let z = complex_roots(&c);
        assert_eq!(z.len(), 5);
        for k in [1.0, 2.0, -3.0] {
            assert!(r.iter().any(|x| (x - k).abs() < 1e-10));
        }
    }

    #[test]
    fn circle_line_solutions() {
        let x = Poly::var(Var::Y1);
        let y = Poly::var(Var::Y2);
        let e1 = &(&x.pow(2) + &y.pow(2)) - &Poly::int(2);
        let e2 = &x - &y;
        let el = eliminate(&[e1.clone(), e2.clone()], &[Var::Y2]).unwrap();
        let u = el.univariate(Var::Y1).unwrap();
        let roots = eliminant_roots(&u, 1e-14).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            let s = back_substitute(&el, Var::Y1, r.interval.value(), &[e1.clone(), e2.clone()], &[Var::Y1, Var::Y2]);
            assert_eq!(s.len(), 1);
            assert!((s[0][2] - s[0][3]).abs() < 1e-12);
            assert!((s[0][2].abs() - 1.0).abs() < 1e-12);
        }
    }
}
