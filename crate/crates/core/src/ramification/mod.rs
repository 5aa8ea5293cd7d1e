//! Ramification of the projection `(λ, t) ↦ t` restricted to a curve `P(λ, t) = 0`.
//!
//! Places over a base point are read off Newton polygons at the singular fiber points,
//! recursing on repeated roots of edge polynomials.

mod faces;
mod fiber;
mod newton;

pub use faces::{
    belyi_check, face_curve, parse_partitions, sample_face_beta, BelyiReport, FaceSampler, FaceSpec,
};
pub use fiber::{fiber_partition, fiber_partitions, places_at_origin};
pub use newton::{newton_polygon, puiseux_leading, recenter, LeadingTerms, NewtonEdge, NewtonPolygon};

use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{parse_rational, AlgError};

/// Local fiber coordinate at a center.
pub const FIBER_LOCAL: &str = "x";
/// Local base coordinate at a center.
pub const BASE_LOCAL: &str = "s";
/// Variable of edge polynomials.
pub const EDGE_VAR: &str = "c";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RamificationError {
    #[error("non-generic sample: {0}")]
    NonGeneric(String),
    #[error("curve contains the fiber line through the center")]
    ComponentThroughCenter,
    #[error("curve contains the base fiber t = {0}")]
    FiberComponent(String),
    #[error("coefficients still involve parameters: {0}")]
    Parametric(String),
    #[error("diagonal center needs a finite base point")]
    DiagonalAtInfinity,
    #[error("impossible face: {0}")]
    ImpossibleFace(String),
    #[error("discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasePoint {
    Finite(BigRational),
    Infinity,
}

impl BasePoint {
    pub fn zero() -> Self {
        BasePoint::Finite(crate::exactalg::int(0))
    }

    pub fn one() -> Self {
        BasePoint::Finite(crate::exactalg::int(1))
    }

    /// The three branch points 0, 1, ∞ in table order.
    pub fn standard() -> [BasePoint; 3] {
        [Self::zero(), Self::one(), BasePoint::Infinity]
    }

    pub fn parse(s: &str) -> Result<Self, AlgError> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(BasePoint::Infinity),
            other => Ok(BasePoint::Finite(parse_rational(other)?)),
        }
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Finite(x) => write!(f, "{x}"),
            BasePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for BasePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FiberPoint {
    Finite(BigRational),
    /// The moving point λ = t.
    Diagonal,
    Infinity,
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberPoint::Finite(x) => write!(f, "{x}"),
            FiberPoint::Diagonal => write!(f, "t"),
            FiberPoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Center {
    pub fiber: FiberPoint,
    pub base: BasePoint,
}

impl Center {
    pub fn new(fiber: FiberPoint, base: BasePoint) -> Self {
        Center { fiber, base }
    }

    pub fn origin() -> Self {
        Center::new(FiberPoint::Finite(crate::exactalg::int(0)), BasePoint::zero())
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(lambda = {}, t = {})", self.fiber, self.base)
    }
}

/// Sorted ramification indices, printed like `1+1+2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable();
        Partition(parts)
    }

    pub fn parse(s: &str) -> Result<Self, AlgError> {
        let parts = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split('+')
            .map(|x| {
                x.trim().parse::<u32>().map_err(|e| AlgError::Parse {
                    input: s.to_string(),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Partition::new(parts))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests;
