//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::resultant::exact_divide;
use super::AlgError;

/// `num / den` with `gcd(num, den) = 1` and `den` having lex leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: MultiPoly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (exact_divide(&num, &g).unwrap(), exact_divide(&den, &g).unwrap())
            }
        };
        let lc = den.leading_coefficient();
        let inv = lc.recip();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.num.constant_value() / self.den.constant_value())
        } else {
            None
        }
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.num.has_var(name) || self.den.has_var(name)
    }

    pub fn recip(&self) -> Result<Self, AlgError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self, name: &str) -> Self {
        let n = &(&self.num.derivative(name) * &self.den) - &(&self.num * &self.den.derivative(name));
        Self::reduce(n, &self.den * &self.den)
    }

    /// Substitutes a rational value for a variable; fails if the denominator vanishes.
    pub fn eval(&self, name: &str, value: &BigRational) -> Result<Self, AlgError> {
        Self::new(self.num.eval(name, value), self.den.eval(name, value))
    }

    /// Substitutes another rational function for a variable.
    pub fn substitute(&self, name: &str, r: &RatFunc) -> Result<Self, AlgError> {
        if !self.has_var(name) {
            return Ok(self.clone());
        }
        let (n, dn) = self.num.substitute_ratio(name, &r.num, &r.den)?;
        let (d, dd) = self.den.substitute_ratio(name, &r.num, &r.den)?;
        // n / r.den^dn  over  d / r.den^dd
        let (n, d) = if dn >= dd {
            (n, &d * &r.den.pow(dn - dd))
        } else {
            (&n * &r.den.pow(dd - dn), d)
        };
        Self::new(n, d)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        RatFunc::reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_polynomial() && o.is_polynomial() {
            return RatFunc::reduce(&self.num * &o.num, &self.den * &o.den);
        }
        // cross-cancel before multiplying to keep operands small
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = exact_divide(&self.num, &g1).unwrap();
        let d2 = exact_divide(&o.den, &g1).unwrap();
        let n2 = exact_divide(&o.num, &g2).unwrap();
        let d1 = exact_divide(&self.den, &g2).unwrap();
        RatFunc::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.recip().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

/// Handy for tests and data files: a rational constant as a function.
pub fn rf(n: i64, d: i64) -> RatFunc {
    RatFunc::constant(BigRational::new(n.into(), d.into()))
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Rational value at a full point, or `None` if the denominator vanishes there.
    pub fn eval_all(
        &self,
        point: &std::collections::BTreeMap<String, BigRational>,
    ) -> Result<Option<BigRational>, AlgError> {
        let d = self.den.eval_all(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.eval_all(point)? / d))
    }
}
