//! Periods of Weierstrass families: Picard-Fuchs systems, their Riemann schemes, and the
//! algebraic PVI solutions obtained by following the apparent singularity.

mod renorm;
mod scheme;
mod system;
mod weierstrass;

pub use renorm::{
    alpha_from_scheme, derive, eliminate_parameter, mobius_reparametrization, rational_parametrization,
    renormalize, AlphaConvention, Derivation, Parametrization, Renormalization, DEFAULT_ORDER,
};
pub use scheme::{riemann_scheme, Locus, RiemannScheme, SchemePoint};
pub use system::{closed_form_ode, scalar_ode, FuchsianSystem, ScalarOde, Variant};
pub use weierstrass::{weierstrass_invariants, WeierstrassData};

use thiserror::Error;

use crate::exactalg::AlgError;

/// Base coordinate of the Weierstrass family.
pub const Z: &str = crate::exactalg::vars::Z;
/// Deformation parameter.
pub const PARAM: &str = "a";
/// Parameter introduced when the singular points need a square root of the parameter.
pub const CONIC_PARAM: &str = "s";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PfError {
    #[error("discriminant g2^3 - 27 g3^2 vanishes identically")]
    DegenerateFamily,
    #[error("entry (1,2) of the system vanishes; cannot eliminate the second period")]
    CannotEliminate,
    #[error("irregular singularity at {0}")]
    Irregular(String),
    #[error("exponents at {locus} depend on the parameter: {value}")]
    NonConstantExponent { locus: String, value: String },
    #[error("irrational exponents at {locus}: indicial discriminant {disc}")]
    IrrationalExponents { locus: String, disc: String },
    #[error("singular locus {0} has degree above two")]
    UnsupportedLocus(String),
    #[error("expected four singular points and one apparent point, found {singular} and {apparent}")]
    WrongPointCount { singular: usize, apparent: usize },
    #[error("no rational parametrization of {0}")]
    NoRationalPoint(String),
    #[error("ordering must be a permutation of 0..4")]
    BadOrdering,
    #[error("apparent point is sent to infinity")]
    ApparentAtInfinity,
    #[error("dependent parametrization")]
    DependentParametrization,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[cfg(test)]
mod tests;
