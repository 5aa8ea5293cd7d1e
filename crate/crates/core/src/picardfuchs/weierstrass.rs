use serde::Serialize;

use super::{PfError, Z};
use crate::exactalg::{parse_poly, MultiPoly};

/// A family `y² = 4x³ − g2(z) x − g3(z)` depending on a parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeierstrassData {
    pub id: u32,
    pub g2: MultiPoly,
    pub g3: MultiPoly,
}

impl WeierstrassData {
    pub fn new(id: u32, g2: MultiPoly, g3: MultiPoly) -> Result<Self, PfError> {
        let w = WeierstrassData { id, g2, g3 };
        weierstrass_invariants(&w)?;
        Ok(w)
    }

    pub fn parse(id: u32, g2: &str, g3: &str) -> Result<Self, PfError> {
        Self::new(id, parse_poly(g2)?, parse_poly(g3)?)
    }
}

/// `(Δ, δ)` with `Δ = g2³ − 27 g3²` and `δ = 3 g3 g2' − 2 g2 g3'`.
pub fn weierstrass_invariants(w: &WeierstrassData) -> Result<(MultiPoly, MultiPoly), PfError> {
    let big = &w.g2.pow(3) - &w.g3.pow(2).scale(&crate::exactalg::int(27));
    if big.is_zero() {
        return Err(PfError::DegenerateFamily);
    }
    let small = &(&w.g3 * &w.g2.derivative(Z)).scale(&crate::exactalg::int(3))
        - &(&w.g2 * &w.g3.derivative(Z)).scale(&crate::exactalg::int(2));
    Ok((big, small))
}
