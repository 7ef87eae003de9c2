//! Exact polynomial arithmetic, resultant elimination and real-root isolation.

pub mod elim;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod realsol;
pub mod resultant;
pub mod unipoly;

pub use elim::{eliminate, Elimination, Outcome};
pub use poly::{CompiledPoly, Poly, Var, NVARS};
pub use rat::{parse_rat, rat, ratio, Rat};
pub use resultant::resultant;
pub use unipoly::{discriminant2, RootInterval, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("not eliminable: an operand does not involve {0}")]
    NotEliminable(String),
}
