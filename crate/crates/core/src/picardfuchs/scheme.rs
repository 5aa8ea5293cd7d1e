use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::system::coprime_base;
use super::{PfError, ScalarOde, Z};
use crate::exactalg::{
    discriminant, divides, int, squarefree_decomposition, strip_factor, MultiPoly, RatFunc,
};

/// A singular locus: the roots of an irreducible factor in z (over Q(a)), or z = ∞.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Locus {
    Root(MultiPoly),
    Infinity,
}

impl Locus {
    /// Number of points of the locus.
    pub fn count(&self) -> usize {
        match self {
            Locus::Root(f) => f.deg(Z) as usize,
            Locus::Infinity => 1,
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Root(p) => write!(f, "{p} = 0"),
            Locus::Infinity => write!(f, "z = inf"),
        }
    }
}

impl Serialize for Locus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ser_pair<S: Serializer>(x: &(BigRational, BigRational), s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&x.0.to_string())?;
    t.serialize_element(&x.1.to_string())?;
    t.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemePoint {
    pub locus: Locus,
    /// Local exponents, larger first.
    #[serde(serialize_with = "ser_pair")]
    pub exponents: (BigRational, BigRational),
    /// For apparent points: whether the Frobenius recursion is free of logarithms.
    pub log_free: Option<bool>,
}

impl SchemePoint {
    /// Exponent difference θ ≥ 0.
    pub fn theta(&self) -> BigRational {
        (&self.exponents.0 - &self.exponents.1).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiemannScheme {
    /// Singular fibers and z = ∞.
    pub points: Vec<SchemePoint>,
    /// Zeros of δ that are not singular fibers.
    pub apparent: Vec<SchemePoint>,
    /// Sum of all exponents, each locus counted with its number of points.
    #[serde(serialize_with = "crate::picardfuchs::scheme::ser_rat")]
    pub exponent_sum: BigRational,
    /// Fuchs relation: the sum equals (number of singular points) − 2.
    pub fuchs_relation: bool,
}

pub(crate) fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl RiemannScheme {
    pub fn singular_point_count(&self) -> usize {
        self.points.iter().map(|p| p.locus.count()).sum()
    }

    pub fn apparent_point_count(&self) -> usize {
        self.apparent.iter().map(|p| p.locus.count()).sum()
    }
}

/// Arithmetic in Q(a)[z]/(f) for f of degree one or two; elements are `c0 + c1 z`.
struct LocusField {
    /// Coefficients f0, f1, f2 (f2 = 0 for a linear factor).
    f: [RatFunc; 3],
    quadratic: bool,
}

type Elem = [RatFunc; 2];

impl LocusField {
    fn new(f: &MultiPoly) -> Self {
        let c = f.coeffs_in(Z);
        let get = |k: usize| c.get(k).cloned().map(RatFunc::from_poly).unwrap_or_default();
        LocusField { f: [get(0), get(1), get(2)], quadratic: f.deg(Z) == 2 }
    }

    fn times_z(&self, x: &Elem) -> Elem {
        if self.quadratic {
            // z² = −(f1 z + f0)/f2
            let r0 = &self.f[0] / &self.f[2];
            let r1 = &self.f[1] / &self.f[2];
            [-&(&x[1] * &r0), &x[0] - &(&x[1] * &r1)]
        } else {
            // z = −f0/f1
            let root = -&(&self.f[0] / &self.f[1]);
            [&x[0] * &root, RatFunc::zero()]
        }
    }

    fn reduce(&self, p: &MultiPoly) -> Elem {
        let mut acc: Elem = [RatFunc::zero(), RatFunc::zero()];
        for c in p.coeffs_in(Z).iter().rev() {
            let shifted = self.times_z(&acc);
            acc = [&shifted[0] + &RatFunc::from_poly(c.clone()), shifted[1].clone()];
        }
        acc
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let low = [&x[0] * &y[0], &(&x[0] * &y[1]) + &(&x[1] * &y[0])];
        let zz = self.times_z(&self.times_z(&[&x[1] * &y[1], RatFunc::zero()]));
        [&low[0] + &zz[0], &low[1] + &zz[1]]
    }

    fn inv(&self, x: &Elem) -> Result<Elem, PfError> {
        if !self.quadratic || x[1].is_zero() {
            let r = x[0].recip()?;
            return Ok([r, RatFunc::zero()]);
        }
        // conjugate z̄ = −f1/f2 − z; norm = x·x̄ ∈ Q(a)
        let trace = -&(&self.f[1] / &self.f[2]);
        let conj = [&x[0] + &(&x[1] * &trace), -&x[1]];
        let norm = self.mul(x, &conj);
        let n = norm[0].recip()?;
        Ok([&conj[0] * &n, &conj[1] * &n])
    }

    fn constant(&self, x: &Elem, locus: &str) -> Result<BigRational, PfError> {
        if !x[1].is_zero() {
            return Err(PfError::NonConstantExponent { locus: locus.into(), value: format!("{} + ({}) z", x[0], x[1]) });
        }
        x[0].constant_value().ok_or_else(|| PfError::NonConstantExponent {
            locus: locus.into(),
            value: x[0].to_string(),
        })
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Roots of `r² + b r + c`, larger first.
fn quadratic_roots(b: &BigRational, c: &BigRational, locus: &str) -> Result<(BigRational, BigRational), PfError> {
    let disc = b * b - c * BigInt::from(4);
    let s = rational_sqrt(&disc)
        .ok_or_else(|| PfError::IrrationalExponents { locus: locus.into(), disc: disc.to_string() })?;
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(((-b + &s) / &two, (-b - &s) / two))
}

fn multiplicity(p: &MultiPoly, f: &MultiPoly) -> (u32, MultiPoly) {
    if p.is_zero() {
        return (u32::MAX, MultiPoly::zero());
    }
    let (q, k) = strip_factor(p, f);
    (k, q)
}

/// Indicial data `(A, B)` with `r(r−1) + A r + B = 0` at the roots of `f`.
fn indicial_at(ode: &ScalarOde, f: &MultiPoly) -> Result<(BigRational, BigRational), PfError> {
    let name = f.to_string();
    let (k0, g0) = multiplicity(&ode.p0, f);
    let (k1, g1) = multiplicity(&ode.p1, f);
    let (k2, g2) = multiplicity(&ode.p2, f);
    let field = LocusField::new(f);
    let fp = f.derivative(Z);
    let g0r = field.reduce(&g0);
    let fpr = field.reduce(&fp);
    let a = if k1 >= k0 {
        int(0)
    } else if k1 + 1 == k0 {
        let den = field.mul(&fpr, &g0r);
        field.constant(&field.mul(&field.reduce(&g1), &field.inv(&den)?), &name)?
    } else {
        return Err(PfError::Irregular(name));
    };
    let b = if k2 == u32::MAX || k2 + 1 >= k0 {
        int(0)
    } else if k2 + 2 == k0 {
        let den = field.mul(&field.mul(&fpr, &fpr), &g0r);
        field.constant(&field.mul(&field.reduce(&g2), &field.inv(&den)?), &name)?
    } else {
        return Err(PfError::Irregular(name));
    };
    Ok((a, b))
}

/// Exponents at z = ∞ with the convention η ~ z^(−ρ).
fn exponents_at_infinity(ode: &ScalarOde) -> Result<(BigRational, BigRational), PfError> {
    let d0 = ode.p0.deg(Z) as i64;
    let limit = |p: &MultiPoly, shift: i64| -> Result<BigRational, PfError> {
        if p.is_zero() {
            return Ok(int(0));
        }
        let d = p.deg(Z) as i64 + shift;
        if d < d0 {
            Ok(int(0))
        } else if d == d0 {
            let r = &RatFunc::from_poly(p.leading_coeff_in(Z)) / &RatFunc::from_poly(ode.p0.leading_coeff_in(Z));
            r.constant_value().ok_or_else(|| PfError::NonConstantExponent { locus: "z = inf".into(), value: r.to_string() })
        } else {
            Err(PfError::Irregular("z = inf".into()))
        }
    };
    let p_inf = limit(&ode.p1, 1)?;
    let q_inf = limit(&ode.p2, 2)?;
    // ρ(ρ+1) − P∞ ρ + Q∞ = 0
    quadratic_roots(&(int(1) - p_inf), &q_inf, "z = inf")
}

/// Coefficient of x^k in the expansion of `p` at `z = r + x`, as a rational function.
fn taylor(p: &MultiPoly, r: &RatFunc, order: usize) -> Vec<RatFunc> {
    let x = RatFunc::var("__x");
    let shifted = RatFunc::from_poly(p.clone()).substitute(Z, &(r + &x)).expect("finite root");
    // the denominator is free of x
    let num = shifted.num().coeffs_in("__x");
    let den = RatFunc::from_poly(shifted.den().clone());
    (0..=order)
        .map(|k| num.get(k).map_or(RatFunc::zero(), |c| &RatFunc::from_poly(c.clone()) / &den))
        .collect()
}

/// Obstruction to a logarithm-free solution at a linear locus with integer exponent gap.
fn log_free_at(ode: &ScalarOde, f: &MultiPoly, low: &BigRational, gap: u32) -> Result<bool, PfError> {
    let c = f.coeffs_in(Z);
    let root = -&(&RatFunc::from_poly(c[0].clone()) / &RatFunc::from_poly(c[1].clone()));
    let (m, _) = multiplicity(&ode.p0, f);
    let n = gap as usize;
    let order = m as usize + n;
    let a = taylor(&ode.p0, &root, order);
    let b = taylor(&ode.p1, &root, order);
    let d = taylor(&ode.p2, &root, order);
    let at = |v: &Vec<RatFunc>, k: i64| if k < 0 { RatFunc::zero() } else { v.get(k as usize).cloned().unwrap_or_default() };
    let fj = |j: usize, s: &BigRational| -> RatFunc {
        let m = m as i64;
        let j = j as i64;
        let s_rf = RatFunc::constant(s.clone());
        let s1 = RatFunc::constant(s - int(1));
        &(&(&at(&a, m + j) * &(&s_rf * &s1)) + &(&at(&b, m - 1 + j) * &s_rf)) + &at(&d, m - 2 + j)
    };
    let mut coeffs = vec![RatFunc::one()];
    for k in 1..=n {
        let mut sum = RatFunc::zero();
        for j in 1..=k {
            let sigma = low + BigRational::from_integer(BigInt::from(k - j));
            sum = &sum + &(&coeffs[k - j] * &fj(j, &sigma));
        }
        if k == n {
            return Ok(sum.is_zero());
        }
        let sigma = low + BigRational::from_integer(BigInt::from(k));
        let f0 = fj(0, &sigma);
        coeffs.push(-&(&sum / &f0));
    }
    Ok(true)
}

/// Splits a quadratic factor whose discriminant is a square in Q[a].
fn split_if_possible(f: &MultiPoly) -> Vec<MultiPoly> {
    if f.deg(Z) != 2 {
        return vec![f.clone()];
    }
    let disc = discriminant(f, Z).expect("quadratic");
    let Some(root) = poly_sqrt(&disc) else {
        return vec![f.clone()];
    };
    let c = f.coeffs_in(Z);
    let two_f2 = c[2].scale(&int(2));
    let z = MultiPoly::var(Z);
    // 2 f2 z + f1 ∓ √disc
    vec![
        (&(&(&two_f2 * &z) + &c[1]) - &root).primitive(),
        (&(&(&two_f2 * &z) + &c[1]) + &root).primitive(),
    ]
}

/// Square root in Q[a] if it exists.
pub(crate) fn poly_sqrt(p: &MultiPoly) -> Option<MultiPoly> {
    if p.is_zero() {
        return Some(MultiPoly::zero());
    }
    let vars = p.vars().to_vec();
    let mut cur = p.clone();
    let mut root = MultiPoly::one();
    for v in &vars {
        let dec = squarefree_decomposition(&cur, v);
        for (f, k) in &dec {
            if k % 2 == 1 {
                return None;
            }
            root = &root * &f.pow(k / 2);
            cur = crate::exactalg::exact_divide(&cur, &f.pow(*k)).ok()?;
        }
    }
    if !cur.is_constant() {
        return None;
    }
    let c = rational_sqrt(&cur.constant_value())?;
    let out = root.scale(&c);
    if &(&out * &out) == p { Some(out) } else { None }
}

pub fn riemann_scheme(ode: &ScalarOde) -> Result<RiemannScheme, PfError> {
    let mut points = Vec::new();
    let mut apparent = Vec::new();
    for base in coprime_base(&[ode.discriminant.clone(), ode.delta.clone()]) {
        for f in split_if_possible(&base) {
            if f.deg(Z) > 2 {
                return Err(PfError::UnsupportedLocus(f.to_string()));
            }
            let (a, b) = indicial_at(ode, &f)?;
            // r² + (A − 1) r + B = 0
            let exps = quadratic_roots(&(a - int(1)), &b, &f.to_string())?;
            let singular = divides(&f, &ode.discriminant);
            let log_free = if singular {
                None
            } else {
                let gap = &exps.0 - &exps.1;
                if gap.is_integer() && gap > int(0) && f.deg(Z) == 1 {
                    let g = gap.to_integer().to_string().parse::<u32>().unwrap_or(0);
                    Some(log_free_at(ode, &f, &exps.1, g)?)
                } else {
                    Some(gap.is_zero())
                }
            };
            let point = SchemePoint { locus: Locus::Root(f), exponents: exps, log_free };
            if singular {
                points.push(point);
            } else {
                apparent.push(point);
            }
        }
    }
    points.sort_by(|x, y| x.locus.cmp(&y.locus));
    points.push(SchemePoint { locus: Locus::Infinity, exponents: exponents_at_infinity(ode)?, log_free: None });
    let mut sum = BigRational::zero();
    let mut n = 0usize;
    for p in points.iter().chain(apparent.iter()) {
        let k = p.locus.count();
        sum += (&p.exponents.0 + &p.exponents.1) * BigInt::from(k);
        n += k;
    }
    let fuchs_relation = sum == BigRational::from_integer(BigInt::from(n as i64 - 2));
    Ok(RiemannScheme { points, apparent, exponent_sum: sum, fuchs_relation })
}
