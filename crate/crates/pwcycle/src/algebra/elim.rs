use super::poly::{Poly, Var};
use super::resultant::resultant;
use super::unipoly::UniPoly;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// Finitely many solutions, all among the roots of these final equations.
    Finite(Vec<Poly>),
    /// The solution set contains a curve (or worse).
    PositiveDimensional,
    /// No complex solution at all.
    Inconsistent,
}

/// Record of successive resultant elimination.  `stages[k]` holds the
/// equations left after eliminating `order[..k]`; back-substitution walks the
/// stages in reverse.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub order: Vec<Var>,
    pub stages: Vec<Vec<Poly>>,
    pub outcome: Outcome,
}

impl Elimination {
    /// First final equation, or None when the system has no finite eliminant.
    pub fn eliminant(&self) -> Option<&Poly> {
        match &self.outcome {
            Outcome::Finite(eqs) => eqs.first(),
            _ => None,
        }
    }

    /// Greatest common divisor of the final equations in `v`, when they are
    /// univariate.  This is the eliminant whose roots contain every solution
    /// coordinate in `v`.
    pub fn univariate(&self, v: Var) -> Option<UniPoly> {
        let Outcome::Finite(eqs) = &self.outcome else { return None };
        let mut g: Option<UniPoly> = None;
        for e in eqs {
            let u = e.to_unipoly(v)?;
            g = Some(match g {
                None => u,
                Some(h) => h.gcd(&u).primitive(),
            });
        }
        g
    }
}

/// Eliminates the variables of `order` one at a time from `eqs`.  At each step
/// the equation of lowest degree in the variable is the pivot and is paired
/// with every other equation containing it.
pub fn eliminate(eqs: &[Poly], order: &[Var]) -> Result<Elimination, AlgebraError> {
    let mut cur: Vec<Poly> = eqs.iter().filter(|e| !e.is_zero()).map(|e| e.primitive()).collect();
    let mut stages = vec![cur.clone()];
    let done = |stages: Vec<Vec<Poly>>, outcome| {
        Ok(Elimination { order: order.to_vec(), stages, outcome })
    };
    for &v in order {
        if cur.iter().any(|e| e.is_constant()) {
            return done(stages, Outcome::Inconsistent);
        }
        let (with, without): (Vec<Poly>, Vec<Poly>) = cur.into_iter().partition(|e| e.contains(v));
        if with.is_empty() {
            return done(stages, Outcome::PositiveDimensional);
        }
        let pivot_idx = (0..with.len())
            .min_by_key(|&i| (with[i].degree_in(v), with[i].num_terms()))
            .unwrap();
        let pivot = &with[pivot_idx];
        let mut next = without;
        for (i, q) in with.iter().enumerate() {
            if i == pivot_idx {
                continue;
            }
            let r = resultant(pivot, q, v)?;
            if r.is_zero() {
                return done(stages, Outcome::PositiveDimensional);
            }
            next.push(r.primitive());
        }
        next.dedup();
        cur = next;
        stages.push(cur.clone());
    }
    if cur.iter().any(|e| e.is_constant()) {
        return done(stages, Outcome::Inconsistent);
    }
    if cur.is_empty() {
        return done(stages, Outcome::PositiveDimensional);
    }
    done(stages, Outcome::Finite(cur))
}
