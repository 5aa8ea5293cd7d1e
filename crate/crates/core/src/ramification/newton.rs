//! Newton polygons at a center, in (base exponent, fiber exponent) coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{BasePoint, Center, FiberPoint, RamificationError, BASE_LOCAL, EDGE_VAR, FIBER_LOCAL};
use crate::exactalg::vars::{LAMBDA, T};
use crate::exactalg::{squarefree_decomposition, MultiPoly};

/// One segment of the polygon. Branches along it have `x ~ c s^slope` with `φ(c) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonEdge {
    /// Endpoint with the larger fiber exponent.
    pub from: (u32, u32),
    pub to: (u32, u32),
    #[serde(serialize_with = "ser_rat")]
    pub slope: BigRational,
    /// Denominator of the slope: the ramification index of every simple branch on this edge.
    pub index: u32,
    /// `φ(c)` divided by its lowest power of c.
    pub edge_poly: MultiPoly,
    /// `ψ` with `φ(c) = ψ(c^index)`.
    pub reduced_poly: MultiPoly,
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonPolygon {
    /// Support of the recentered polynomial as (base exponent, fiber exponent).
    pub support: Vec<(u32, u32)>,
    /// Edges ordered by increasing slope, from `(0, m)` down to the base axis.
    pub edges: Vec<NewtonEdge>,
}

impl NewtonPolygon {
    /// Multiplicity of the center as a root of the fiber polynomial.
    pub fn fiber_multiplicity(&self) -> u32 {
        self.edges.first().map_or(0, |e| e.from.1)
    }
}

/// Moves `center` to the origin: the result is a polynomial in `x` (fiber) and `s` (base).
pub fn recenter(p: &MultiPoly, center: &Center) -> Result<MultiPoly, RamificationError> {
    let s = MultiPoly::var(BASE_LOCAL);
    let x = MultiPoly::var(FIBER_LOCAL);
    let q = match &center.base {
        BasePoint::Finite(t0) => p.substitute(T, &(&MultiPoly::constant(t0.clone()) + &s)),
        BasePoint::Infinity => p.substitute_ratio(T, &MultiPoly::one(), &s)?.0,
    };
    let q = match &center.fiber {
        FiberPoint::Finite(l0) => q.substitute(LAMBDA, &(&MultiPoly::constant(l0.clone()) + &x)),
        FiberPoint::Diagonal => {
            let BasePoint::Finite(t0) = &center.base else {
                return Err(RamificationError::DiagonalAtInfinity);
            };
            let shift = &(&MultiPoly::constant(t0.clone()) + &s) + &x;
            q.substitute(LAMBDA, &shift)
        }
        FiberPoint::Infinity => q.substitute_ratio(LAMBDA, &MultiPoly::one(), &x)?.0,
    };
    Ok(q)
}

pub fn newton_polygon(p: &MultiPoly, center: &Center) -> Result<NewtonPolygon, RamificationError> {
    polygon_of(&recenter(p, center)?)
}

/// Newton polygon of a polynomial in the local coordinates `x`, `s`.
pub(crate) fn polygon_of(q: &MultiPoly) -> Result<NewtonPolygon, RamificationError> {
    let coeffs: BTreeMap<(u32, u32), MultiPoly> = q
        .collect_in(&[BASE_LOCAL, FIBER_LOCAL])
        .into_iter()
        .map(|(k, c)| ((k[0], k[1]), c))
        .collect();
    let support: Vec<(u32, u32)> = coeffs.keys().copied().collect();
    let start = support
        .iter()
        .filter(|(i, _)| *i == 0)
        .min_by_key(|(_, j)| *j)
        .copied()
        .ok_or(RamificationError::FiberComponent("center".into()))?;
    if !support.iter().any(|(_, j)| *j == 0) {
        return Err(RamificationError::ComponentThroughCenter);
    }
    let mut edges = Vec::new();
    let mut cur = start;
    while cur.1 > 0 {
        // next vertex: smallest breakpoint slope, ties broken toward the base axis
        let mut best: Option<(BigRational, (u32, u32))> = None;
        for &(i, j) in &support {
            if j >= cur.1 {
                continue;
            }
            let mu = BigRational::new(
                BigInt::from(i as i64 - cur.0 as i64),
                BigInt::from(cur.1 - j),
            );
            let better = match &best {
                None => true,
                Some((m, (_, bj))) => mu < *m || (mu == *m && j < *bj),
            };
            if better {
                best = Some((mu, (i, j)));
            }
        }
        let (mu, next) = best.expect("a point on the base axis exists");
        let on_edge: Vec<((u32, u32), &MultiPoly)> = coeffs
            .iter()
            .filter(|(&(i, j), _)| {
                let lhs = BigRational::from_integer(BigInt::from(i)) + &mu * BigInt::from(j);
                let rhs = BigRational::from_integer(BigInt::from(next.0)) + &mu * BigInt::from(next.1);
                j >= next.1 && j <= cur.1 && lhs == rhs
            })
            .map(|(k, c)| (*k, c))
            .collect();
        let index = mu.denom().to_u32().expect("small slope denominator");
        let c = MultiPoly::var(EDGE_VAR);
        let mut edge_poly = MultiPoly::zero();
        let mut reduced_poly = MultiPoly::zero();
        for ((_, j), coeff) in &on_edge {
            let k = j - next.1;
            edge_poly = &edge_poly + &(*coeff * &c.pow(k));
            reduced_poly = &reduced_poly + &(*coeff * &c.pow(k / index));
        }
        edges.push(NewtonEdge { from: cur, to: next, slope: mu, index, edge_poly, reduced_poly });
        cur = next;
    }
    Ok(NewtonPolygon { support, edges })
}

/// Leading Puiseux data of the branches through a center, one entry per edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingTerms {
    #[serde(serialize_with = "ser_rat")]
    pub exponent: BigRational,
    pub index: u32,
    pub edge_poly: MultiPoly,
    /// Number of simple roots of the reduced edge polynomial; each is one place of the given index.
    pub simple_roots: u32,
    /// Repeated factors of the reduced edge polynomial with multiplicities.
    pub repeated: Vec<(MultiPoly, u32)>,
}

pub fn puiseux_leading(p: &MultiPoly, center: &Center) -> Result<Vec<LeadingTerms>, RamificationError> {
    let poly = newton_polygon(p, center)?;
    Ok(poly
        .edges
        .into_iter()
        .map(|e| {
            let dec = squarefree_decomposition(&e.reduced_poly, EDGE_VAR);
            let simple_roots = dec.iter().filter(|(_, k)| *k == 1).map(|(f, _)| f.deg(EDGE_VAR)).sum();
            let repeated = dec.into_iter().filter(|(_, k)| *k > 1).collect();
            LeadingTerms {
                exponent: e.slope,
                index: e.index,
                edge_poly: e.edge_poly,
                simple_roots,
                repeated,
            }
        })
        .collect())
}

