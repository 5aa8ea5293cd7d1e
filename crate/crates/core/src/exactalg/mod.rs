//! Exact arithmetic: rationals, sparse polynomials, rational functions, elimination.

pub mod gcd;
pub mod linalg;
pub mod mobius;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod resultant;
pub mod roots;
pub mod vars;

pub use gcd::{content_in, gcd, primitive_in, squarefree_decomposition, squarefree_part};
pub use linalg::{AffineSubspace, Field};
pub use mobius::{mobius_substitute, MobiusMap};
pub use num_rational::BigRational;
pub use parse::{parse_poly, parse_rational};
pub use poly::{int, rat, MultiPoly};
pub use ratfunc::RatFunc;
pub use resultant::{discriminant, divides, exact_divide, prem, resultant, strip_factor};
pub use roots::{rational_roots, splits_over_q};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgError {
    #[error("degenerate substitution")]
    DegenerateSubstitution,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("both operands are constant in {0}")]
    ConstantInVariable(String),
    #[error("degree in {var} must be at least {needed}")]
    DegreeTooSmall { var: String, needed: u32 },
    #[error("singular Mobius map")]
    SingularMobius,
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("parse error in {input:?}: {message}")]
    Parse { input: String, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
