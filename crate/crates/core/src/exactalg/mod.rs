//! Exact arithmetic: linear forms, sparse polynomials and rational
//! functions in `s1, s2, s3`, and Laurent characters in `t1, t2, t3`.
//!
//! Every denominator that occurs in vertex measures and fixed-point
//! weights is a product of integer linear forms, so [`RatFunc`] keeps its
//! denominator factored and never needs a multivariate gcd.

mod character;
mod linear;
mod measure;
mod poly;
mod ratfunc;
mod text;

pub use character::{LaurentCharacter, LocalizedCharacter, Weight};
pub use linear::{LinearForm, LinearSubst};
pub use measure::{measure_from_character, FactoredMeasure};
pub use poly::{Exponent, MultiPoly};
pub use ratfunc::RatFunc;
pub use text::{parse_form, parse_poly, parse_ratfunc};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("divisor is not a product of linear forms")]
    NonLinearDenominator,
    #[error("denominator factor {0} vanishes under the substitution")]
    PoleHit(LinearForm),
    #[error("character has nonzero constant term {0}")]
    NonzeroConstantTerm(i64),
    #[error("zero weight has no linear form")]
    ZeroForm,
    #[error("linear form {0:?} is not canonical")]
    NonCanonicalForm([i64; 3]),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// The classical cubic ratio `(s1+s2)(s1+s3)(s2+s3) / (s1 s2 s3)`.
pub fn cubic_ratio() -> RatFunc {
    let mut m = FactoredMeasure::one();
    for k in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
        m.mul_vector_power(k, 1).expect("nonzero");
    }
    for k in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        m.mul_vector_power(k, -1).expect("nonzero");
    }
    m.to_ratfunc()
}

/// `(s2 + s3) / s1`.
pub fn leg_exponent() -> RatFunc {
    let mut m = FactoredMeasure::one();
    m.mul_vector_power([0, 1, 1], 1).expect("nonzero");
    m.mul_vector_power([1, 0, 0], -1).expect("nonzero");
    m.to_ratfunc()
}
