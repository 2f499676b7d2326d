//! Exact arithmetic: rationals, half-integer Laurent polynomials, the
//! four-variable Krushkal polynomial and cyclotomic field elements.

mod cyclotomic;
mod krushkal;
mod laurent;
pub mod linalg;

pub use cyclotomic::{cyclotomic_polynomial, eval_at_root_power, eval_cyclotomic, CyclotomicElement};
pub use krushkal::KrushkalPoly;
pub use laurent::{Degree, HalfLaurent, IntAccumulator, Var};

/// Arbitrary precision rational; every coefficient in the crate is one of these.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable tag mismatch: {0:?} vs {1:?}")]
    VariableMismatch(Var, Var),
    #[error("half-integer exponent where an integer exponent is required")]
    HalfExponent,
    #[error("negative exponent where a polynomial is required")]
    NegativeExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("root power {power} is not primitive for conductor {conductor}")]
    NonPrimitiveRoot { conductor: u64, power: i64 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
