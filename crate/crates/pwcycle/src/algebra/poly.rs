use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, rat, to_f64, Rat};
use super::unipoly::UniPoly;
use super::AlgebraError;

pub const NVARS: usize = 16;

/// Variable slot.  Slots 10..16 are free symbolic parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u8);

impl Var {
    pub const X: Var = Var(0);
    pub const Y: Var = Var(1);
    pub const Y1: Var = Var(2);
    pub const Y2: Var = Var(3);
    pub const Y3: Var = Var(4);
    pub const Y4: Var = Var(5);
    pub const U: Var = Var(6);
    pub const V: Var = Var(7);
    pub const W: Var = Var(8);
    pub const Z: Var = Var(9);

    pub fn param(i: u8) -> Var {
        assert!(i < 6, "only six parameter slots");
        Var(10 + i)
    }

    pub fn ordinate(i: usize) -> Var {
        Var(2 + i as u8)
    }

    pub fn name(self) -> &'static str {
        const NAMES: [&str; NVARS] = [
            "x", "y", "y1", "y2", "y3", "y4", "u", "v", "w", "z", "a", "b", "c", "d", "e", "f",
        ];
        NAMES[self.0 as usize]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        (0..NVARS as u8).map(Var).find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Mono = [u8; NVARS];

/// Sparse polynomial with exact rational coefficients.  Terms are kept in
/// lexicographic order with x > y > y1 > ... ; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(rat(c))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(v, 1, Rat::one())
    }

    pub fn monomial(v: Var, e: u8, c: Rat) -> Poly {
        let mut m = [0; NVARS];
        m[v.0 as usize] = e;
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rat)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rat::zero))
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Var) -> usize {
        self.terms.keys().map(|m| m[v.0 as usize] as usize).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m[v.0 as usize] > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..NVARS as u8).map(Var).filter(|&v| self.contains(v)).collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::int(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let i = v.0 as usize;
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = *m;
                m2[i] -= 1;
                out.add_term(m2, c * rat(m[i] as i64));
            }
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `v`; index is the power.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let i = v.0 as usize;
        let mut out = vec![Poly::zero(); self.degree_in(v) + 1];
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2[i] = 0;
            out[m[i] as usize].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out = &out + &(c * &Poly::monomial(v, k as u8, Rat::one()));
        }
        out
    }

    /// Replaces every occurrence of `v` by `by`.
    pub fn substitute(&self, v: Var, by: &Poly) -> Poly {
        if !self.contains(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        // Horner in v
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * by) + c;
        }
        acc
    }

    pub fn eval_partial(&self, v: Var, value: &Rat) -> Poly {
        self.substitute(v, &Poly::constant(value.clone()))
    }

    pub fn eval_all(&self, values: &[(Var, Rat)]) -> Poly {
        let mut p = self.clone();
        for (v, r) in values {
            p = p.eval_partial(*v, r);
        }
        p
    }

    /// Evaluates in floating point; `vals[i]` is the value of slot i.
    pub fn eval_f64(&self, vals: &[f64; NVARS]) -> f64 {
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = to_f64(c);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= vals[i].powi(e as i32);
                }
            }
            s += t;
        }
        s
    }

    /// Sum of absolute term values, the natural scale for a residual.
    pub fn eval_abs_f64(&self, vals: &[f64; NVARS]) -> f64 {
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = to_f64(c).abs();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= vals[i].abs().powi(e as i32);
                }
            }
            s += t;
        }
        s
    }

    pub fn to_unipoly(&self, v: Var) -> Option<UniPoly> {
        let coeffs = self.coeffs_in(v);
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            out.push(c.constant_value()?);
        }
        Some(UniPoly::new(out))
    }

    pub fn from_unipoly(p: &UniPoly, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(
                {
                    let mut m = [0; NVARS];
                    m[v.0 as usize] = k as u8;
                    m
                },
                c.clone(),
            );
        }
        out
    }

    /// Exact division; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, AlgebraError> {
        let (dm, dc) = d.leading().ok_or(AlgebraError::DivisionByZero)?;
        let (dm, dc) = (*dm, dc.clone());
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading() {
            if !rm.iter().zip(dm.iter()).all(|(a, b)| a >= b) {
                return Err(AlgebraError::InexactDivision);
            }
            let mut m = [0; NVARS];
            for i in 0..NVARS {
                m[i] = rm[i] - dm[i];
            }
            let c = rc / &dc;
            let t = Poly::from_terms([(m, c)]);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    /// Positive rational multiple with coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut k = Rat::new(l, g);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            k = -k;
        }
        self.scale(&k)
    }
}

/// Floating-point copy of a polynomial for fast repeated evaluation.
#[derive(Clone, Debug, Default)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &Poly) -> CompiledPoly {
        CompiledPoly {
            terms: p
                .terms()
                .map(|(m, c)| {
                    let pw = m
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (i, e as i32))
                        .collect();
                    (to_f64(c), pw)
                })
                .collect(),
        }
    }

    pub fn eval(&self, vals: &[f64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(c, pw)| pw.iter().fold(*c, |acc, &(i, e)| acc * vals[i].powi(e)))
            .sum()
    }

    /// Evaluation at (x, y) for polynomials in the plane variables only.
    pub fn eval_xy(&self, x: f64, y: f64) -> f64 {
        let mut vals = [0.0; NVARS];
        vals[0] = x;
        vals[1] = y;
        self.eval(&vals)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let n = Var(i as u8).name();
                    if e == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = [0u8; NVARS];
                for i in 0..NVARS {
                    m[i] = m1[i]
                        .checked_add(m2[i])
                        .expect("exponent overflow in polynomial product");
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
