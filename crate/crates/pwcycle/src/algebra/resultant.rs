use super::poly::{Poly, Var};
use super::AlgebraError;

/// Sylvester matrix of `p` and `q` with respect to `v`.
pub fn sylvester(p: &Poly, q: &Poly, v: Var) -> Vec<Vec<Poly>> {
    let a = p.coeffs_in(v);
    let b = q.coeffs_in(v);
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free determinant over the polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Result<Poly, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::int(1));
    }
    let mut negate = false;
    let mut prev = Poly::int(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // prefer the sparsest nonzero pivot
            let swap = (k + 1..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].num_terms());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev)?;
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Resultant of `p` and `q` with respect to `v`.  Both must actually involve `v`.
pub fn resultant(p: &Poly, q: &Poly, v: Var) -> Result<Poly, AlgebraError> {
    if p.degree_in(v) == 0 || q.degree_in(v) == 0 {
        return Err(AlgebraError::NotEliminable(v.name().to_string()));
    }
    bareiss_det(sylvester(p, q, v))
}
