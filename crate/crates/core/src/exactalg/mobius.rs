//! Fractional-linear substitutions.

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::AlgError;

/// `x -> (a x + b) / (c x + d)` with coefficients free of `x`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct MobiusMap {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl MobiusMap {
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> Result<Self, AlgError> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(AlgError::SingularMobius);
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusMap { a: RatFunc::one(), b: RatFunc::zero(), c: RatFunc::zero(), d: RatFunc::one() }
    }

    pub fn determinant(&self) -> RatFunc {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// The inverse map `x -> (d x - b) / (-c x + a)`.
    pub fn inverse(&self) -> Self {
        MobiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MobiusMap) -> Self {
        MobiusMap {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        }
    }

    /// Image of a finite value, `None` when it lands on infinity.
    pub fn apply(&self, x: &RatFunc) -> Option<RatFunc> {
        let den = &(&self.c * x) + &self.d;
        if den.is_zero() {
            return None;
        }
        Some(&(&(&self.a * x) + &self.b) / &den)
    }

    /// Image of infinity, `None` when infinity is fixed.
    pub fn apply_infinity(&self) -> Option<RatFunc> {
        if self.c.is_zero() {
            None
        } else {
            Some(&self.a / &self.c)
        }
    }

    /// The map as a rational function of `var`.
    pub fn as_ratfunc(&self, var: &str) -> RatFunc {
        let x = RatFunc::var(var);
        &(&(&self.a * &x) + &self.b) / &(&(&self.c * &x) + &self.d)
    }
}

/// Substitutes `var := m(var)` into `p`, clears the denominator with the minimal power
/// `(c var + d)^deg_var(p)` (after bringing the coefficients to a common denominator),
/// and returns the primitive part.
pub fn mobius_substitute(p: &MultiPoly, var: &str, m: &MobiusMap) -> Result<MultiPoly, AlgError> {
    if m.determinant().is_zero() {
        return Err(AlgError::SingularMobius);
    }
    for coeff in [&m.a, &m.b, &m.c, &m.d] {
        if coeff.has_var(var) {
            return Err(AlgError::Invariant(format!("Mobius coefficient depends on {var}")));
        }
    }
    let x = RatFunc::var(var);
    let num = &(&m.a * &x) + &m.b;
    let den = &(&m.c * &x) + &m.d;
    // num/den = (N/Dn) / (D/Dd) = (N Dd) / (D Dn)
    let n = num.num() * den.den();
    let d = den.num() * num.den();
    let (out, _) = p.substitute_ratio(var, &n, &d)?;
    Ok(out.primitive())
}
