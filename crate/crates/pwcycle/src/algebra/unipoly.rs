use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, from_f64, rat, sign, to_f64, Rat};
use super::AlgebraError;

/// Univariate polynomial over the rationals, coefficients in ascending order.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct UniPoly {
    c: Vec<Rat>,
}

/// A real root lies in `(lo, hi]`; when `lo == hi` the root is exactly `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn exact(r: Rat) -> RootInterval {
        RootInterval { lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn value(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn overlaps(&self, o: &RootInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }
}

impl UniPoly {
    pub fn new(mut c: Vec<Rat>) -> UniPoly {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&k| rat(k)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { c: vec![] }
    }

    pub fn one() -> UniPoly {
        UniPoly { c: vec![Rat::one()] }
    }

    /// x - r
    pub fn linear_root(r: Rat) -> UniPoly {
        UniPoly::new(vec![-r, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for k in self.c.iter().rev() {
            acc = acc * x + k;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        sign(&self.eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for k in self.c.iter().rev() {
            acc = acc * x + to_f64(k);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.c.iter().enumerate().skip(1).map(|(i, k)| k * rat(i as i64)).collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.lead()))
    }

    /// Integer coefficients without common factor and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for k in &self.c {
            g = g.gcd(k.numer());
            l = l.lcm(k.denom());
        }
        let mut s = Rat::new(l, g);
        if self.lead().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    self.c.get(i).cloned().unwrap_or_else(Rat::zero)
                        + o.c.get(i).cloned().unwrap_or_else(Rat::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = self.c.clone();
        let dl = d.lead();
        let dd = d.degree();
        if r.len() < d.c.len() {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] / &dl;
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &t * dj;
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn squarefree(&self) -> UniPoly {
        if self.degree() < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.primitive()
    }

    /// Yun's decomposition: pairs (factor, multiplicity) with squarefree,
    /// pairwise coprime factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = vec![];
        if self.degree() < 1 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.div_rem(&a).unwrap().0;
        let mut c = d.div_rem(&a).unwrap().0;
        let mut dd = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() >= 1 {
            a = b.gcd(&dd);
            if a.degree() >= 1 {
                out.push((a.primitive(), i));
            }
            b = b.div_rem(&a).unwrap().0;
            c = dd.div_rem(&a).unwrap().0;
            dd = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Every real root has modulus strictly below the returned power of two.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.lead().abs();
        let mut m = Rat::zero();
        for k in &self.c[..self.c.len().saturating_sub(1)] {
            let q = k.abs() / &lead;
            if q > m {
                m = q;
            }
        }
        let b = m + Rat::one();
        let mut p = Rat::one();
        while p <= b {
            p *= rat(2);
        }
        p
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).unwrap();
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps signs and shortens coefficients
            let r = r.scale(&rat(-1));
            let k = r.primitive();
            let k = if sign(&k.lead()) == sign(&r.lead()) { k } else { k.scale(&rat(-1)) };
            seq.push(k);
        }
        seq
    }

    /// Number of distinct real roots in (lo, hi].
    pub fn count_roots(seq: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
        let va = variations(seq, lo);
        let vb = variations(seq, hi);
        va.saturating_sub(vb)
    }

    /// Disjoint isolating intervals for every distinct real root, sorted.
    pub fn isolate_real_roots(&self) -> Result<Vec<RootInterval>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if self.degree() == 0 {
            return Ok(vec![]);
        }
        let b = self.cauchy_bound();
        self.isolate_in(&-b.clone(), &b)
    }

    /// Isolating intervals for the roots in (lo, hi].
    pub fn isolate_in(&self, lo: &Rat, hi: &Rat) -> Result<Vec<RootInterval>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let p = self.squarefree();
        if p.degree() == 0 {
            return Ok(vec![]);
        }
        let seq = p.sturm_sequence();
        let mut out = vec![];
        let mut stack = vec![(lo.clone(), hi.clone(), UniPoly::count_roots(&seq, lo, hi))];
        while let Some((a, b, n)) = stack.pop() {
            match n {
                0 => {}
                1 => {
                    if p.sign_at(&b) == 0 {
                        out.push(RootInterval::exact(b));
                    } else {
                        out.push(RootInterval { lo: a, hi: b });
                    }
                }
                _ => {
                    let m = (&a + &b) / rat(2);
                    let nl = UniPoly::count_roots(&seq, &a, &m);
                    stack.push((m.clone(), b, n - nl));
                    stack.push((a, m, nl));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        Ok(out)
    }

    /// Shrinks an isolating interval of a squarefree polynomial to width at
    /// most `tol`.  Exact bisection, with a floating Newton step tried first and
    /// accepted only when exact sign checks confirm it brackets the root.
    pub fn refine_root(&self, iv: &RootInterval, tol: f64) -> RootInterval {
        if iv.is_exact() {
            return iv.clone();
        }
        let sh = self.sign_at(&iv.hi);
        if sh == 0 {
            return RootInterval::exact(iv.hi.clone());
        }
        let tol_r = from_f64(tol);
        let d = self.derivative();
        let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
        let mut newton_ok = true;
        while &hi - &lo > tol_r {
            if newton_ok {
                let m = to_f64(&((&lo + &hi) / rat(2)));
                let mut x = m;
                for _ in 0..4 {
                    let dx = self.eval_f64(x) / d.eval_f64(x);
                    if !dx.is_finite() {
                        break;
                    }
                    x -= dx;
                }
                let a = from_f64(x - tol / 4.0);
                let b = from_f64(x + tol / 4.0);
                if x.is_finite() && a > lo && b <= hi {
                    let sa = self.sign_at(&a);
                    let sb = self.sign_at(&b);
                    if sa == 0 {
                        return RootInterval::exact(a);
                    }
                    if sa == -sh && (sb == 0 || sb == sh) {
                        lo = a;
                        hi = b;
                        continue;
                    }
                }
                newton_ok = false;
            }
            let m = (&lo + &hi) / rat(2);
            match self.sign_at(&m) {
                0 => return RootInterval::exact(m),
                s if s == sh => hi = m,
                _ => lo = m,
            }
        }
        RootInterval { lo, hi }
    }

    /// Real roots of the squarefree part, each refined to `tol`.
    pub fn real_roots(&self, tol: f64) -> Result<Vec<RootInterval>, AlgebraError> {
        let p = self.squarefree();
        Ok(p.isolate_real_roots()?.iter().map(|iv| p.refine_root(iv, tol)).collect())
    }
}

fn variations(seq: &[UniPoly], x: &Rat) -> usize {
    let mut last = 0;
    let mut n = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

pub fn discriminant2(a: &Rat, b: &Rat, c: &Rat) -> Rat {
    b * b - rat(4) * a * c
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, k) in self.c.iter().enumerate().rev() {
            if k.is_zero() {
                continue;
            }
            let neg = k.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = k.abs();
            let coef = if a.is_one() && i > 0 { String::new() } else { fmt_rat(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 if coef.is_empty() => write!(f, "x")?,
                1 => write!(f, "{coef}*x")?,
                _ if coef.is_empty() => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
