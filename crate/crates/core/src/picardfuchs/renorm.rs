use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::scheme::poly_sqrt;
use super::{
    riemann_scheme, scalar_ode, FuchsianSystem, Locus, PfError, RiemannScheme, ScalarOde, Variant,
    WeierstrassData, CONIC_PARAM, PARAM, Z,
};
use crate::exactalg::vars::{LAMBDA, T};
use crate::exactalg::{
    content_in, discriminant, exact_divide, gcd, int, rational_roots, resultant, squarefree_decomposition,
    squarefree_part, MobiusMap, MultiPoly, RatFunc,
};

/// Slot order used when none is given: finite rational loci go to 0 and ∞ in listing order,
/// the remaining two points to 1 and t. Slots are indexed like α: (∞, 0, 1, t).
pub const DEFAULT_ORDER: [usize; 4] = [1, 0, 2, 3];

/// `a = a(param)` together with a square root of the discriminant of the quadratic locus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parametrization {
    pub param: String,
    pub a_of_param: RatFunc,
    /// Square root of the quadratic locus discriminant (1 when there is none).
    pub sqrt_disc: RatFunc,
}

impl Parametrization {
    fn identity() -> Self {
        Parametrization { param: PARAM.into(), a_of_param: RatFunc::var(PARAM), sqrt_disc: RatFunc::one() }
    }

    fn pull_back(&self, r: &RatFunc) -> Result<RatFunc, PfError> {
        if self.param == PARAM {
            return Ok(r.clone());
        }
        Ok(r.substitute(PARAM, &self.a_of_param)?)
    }
}

/// Writes a nonzero rational as `c · r²` with `c` a squarefree integer; returns `(c, r)`.
fn split_square(x: &BigRational) -> (BigInt, BigRational) {
    let mut n = x.numer() * x.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    n = n.abs();
    let mut root = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let pp = &p * &p;
        while (&n % &pp).is_zero() {
            n /= &pp;
            root *= &p;
        }
        p += 1;
    }
    (n * sign, BigRational::new(root, x.denom().clone()))
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let (c, r) = split_square(x);
    if c == BigInt::from(1) { Some(r) } else if x.is_zero() { Some(int(0)) } else { None }
}

/// Rational parametrization `a = a(s)` with `disc(a(s))` a square, for discriminants whose
/// squarefree part has degree at most two in a.
pub fn rational_parametrization(disc: &MultiPoly) -> Result<Parametrization, PfError> {
    if let Some(r) = poly_sqrt(disc) {
        return Ok(Parametrization { sqrt_disc: RatFunc::from_poly(r), ..Parametrization::identity() });
    }
    let dec = squarefree_decomposition(disc, PARAM);
    let mut full = MultiPoly::one();
    let mut odd = MultiPoly::one();
    let mut half = MultiPoly::one();
    for (f, k) in &dec {
        full = &full * &f.pow(*k);
        half = &half * &f.pow(k / 2);
        if k % 2 == 1 {
            odd = &odd * f;
        }
    }
    let c0 = exact_divide(disc, &full)?;
    if !c0.is_constant() {
        return Err(PfError::NoRationalPoint(disc.to_string()));
    }
    let (c, r) = split_square(&c0.constant_value());
    // disc = r² half² · q with q = c · odd
    let q = odd.scale(&BigRational::from_integer(c));
    let s = RatFunc::var(CONIC_PARAM);
    let coeffs: Vec<BigRational> = q.coeffs_in(PARAM).iter().map(|x| x.constant_value()).collect();
    let (a_of, v_of) = match q.deg(PARAM) {
        1 => {
            // a = (s² − q0)/q1, v = s
            let a = (&s.pow(2) - &RatFunc::constant(coeffs[0].clone())).scale(&num_traits::Inv::inv(coeffs[1].clone()));
            (a, s.clone())
        }
        2 => {
            let (a0, v0) = conic_point(&q, &coeffs).ok_or_else(|| PfError::NoRationalPoint(q.to_string()))?;
            // line v − v0 = s (a − a0) meets the conic again at a0 + u
            let dq = &(&coeffs[2] * BigInt::from(2)) * &a0 + &coeffs[1];
            let num = &RatFunc::constant(dq) - &s.scale(&(&v0 * BigInt::from(2)));
            let den = &s.pow(2) - &RatFunc::constant(coeffs[2].clone());
            let u = &num / &den;
            (&RatFunc::constant(a0) + &u, &RatFunc::constant(v0) + &(&s * &u))
        }
        _ => return Err(PfError::NoRationalPoint(q.to_string())),
    };
    let half_rf = RatFunc::from_poly(half).substitute(PARAM, &a_of)?;
    let sqrt_disc = &(&half_rf * &v_of).scale(&r);
    Ok(Parametrization { param: CONIC_PARAM.into(), a_of_param: a_of, sqrt_disc: sqrt_disc.clone() })
}

/// A rational point on `v² = q(a)`: a rational root of q, or a small search.
fn conic_point(q: &MultiPoly, c: &[BigRational]) -> Option<(BigRational, BigRational)> {
    if let Ok(roots) = rational_roots(q, PARAM) {
        if let Some((r, _)) = roots.first() {
            return Some((r.clone(), int(0)));
        }
    }
    for h in 1..=60i64 {
        for d in 1..=h {
            let n = h - d;
            for sign in [1, -1] {
                let a0 = BigRational::new(BigInt::from(sign * n), BigInt::from(d));
                let val = &(&(&c[2] * &a0) + &c[1]) * &a0 + &c[0];
                if let Some(v) = rational_sqrt(&val) {
                    return Some((a0, v));
                }
            }
        }
    }
    None
}

/// A singular point after choosing square roots: its scheme entry and value (None = ∞).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointValue {
    pub scheme_index: usize,
    pub value: Option<RatFunc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Renormalization {
    pub parametrization: Parametrization,
    /// The four singular points in listing order.
    pub points: Vec<PointValue>,
    /// `order[i]` is the listed point sent to slot i of (∞, 0, 1, t).
    pub order: [usize; 4],
    pub lambda: RatFunc,
    pub t: RatFunc,
    pub map: MobiusMap,
}

/// Möbius map sending p0 ↦ 0, p1 ↦ 1, p_inf ↦ ∞ (None stands for ∞).
fn mobius_through(p0: &Option<RatFunc>, p1: &Option<RatFunc>, pinf: &Option<RatFunc>) -> Result<MobiusMap, PfError> {
    let one = RatFunc::one();
    let zero = RatFunc::zero();
    let m = match (p0, p1, pinf) {
        (Some(a), Some(b), None) => {
            let k = (b - a).recip()?;
            MobiusMap::new(k.clone(), -&(a * &k), zero, one)?
        }
        (None, Some(b), Some(c)) => MobiusMap::new(zero, b - c, one, -c)?,
        (Some(a), None, Some(c)) => MobiusMap::new(one.clone(), -a, one, -c)?,
        (Some(a), Some(b), Some(c)) => {
            let u = b - c;
            let v = b - a;
            MobiusMap::new(u.clone(), -&(a * &u), v.clone(), -&(c * &v))?
        }
        _ => return Err(PfError::BadOrdering),
    };
    Ok(m)
}

fn image(m: &MobiusMap, p: &Option<RatFunc>) -> Option<RatFunc> {
    match p {
        Some(x) => m.apply(x),
        None => m.apply_infinity(),
    }
}

fn linear_root(f: &MultiPoly) -> RatFunc {
    let c = f.coeffs_in(Z);
    -&(&RatFunc::from_poly(c[0].clone()) / &RatFunc::from_poly(c[1].clone()))
}

/// Sends the singular points to 0, 1, ∞ and t according to `order`, and follows the apparent point.
pub fn renormalize(scheme: &RiemannScheme, order: [usize; 4]) -> Result<Renormalization, PfError> {
    let mut sorted = order;
    sorted.sort_unstable();
    if sorted != [0, 1, 2, 3] {
        return Err(PfError::BadOrdering);
    }
    let singular = scheme.singular_point_count();
    let apparent = scheme.apparent_point_count();
    if singular != 4 || apparent != 1 {
        return Err(PfError::WrongPointCount { singular, apparent });
    }
    let quadratics: Vec<usize> = (0..scheme.points.len())
        .filter(|&i| scheme.points[i].locus.count() == 2)
        .collect();
    let par = match quadratics.as_slice() {
        [] => Parametrization::identity(),
        [i] => {
            let Locus::Root(f) = &scheme.points[*i].locus else { unreachable!() };
            rational_parametrization(&discriminant(f, Z)?)?
        }
        _ => return Err(PfError::UnsupportedLocus("two irreducible quadratic loci".into())),
    };
    // listing order: z = 0, other finite rational loci, ∞, then the conjugate pair
    let mut linear: Vec<usize> = (0..scheme.points.len())
        .filter(|&i| matches!(&scheme.points[i].locus, Locus::Root(f) if f.deg(Z) == 1))
        .collect();
    linear.sort_by_key(|&i| match &scheme.points[i].locus {
        Locus::Root(f) if *f == MultiPoly::var(Z) => 0,
        _ => 1,
    });
    let mut points = Vec::new();
    for i in linear {
        let Locus::Root(f) = &scheme.points[i].locus else { unreachable!() };
        points.push(PointValue { scheme_index: i, value: Some(par.pull_back(&linear_root(f))?) });
    }
    let inf = scheme.points.iter().position(|p| p.locus == Locus::Infinity).expect("infinity listed");
    points.push(PointValue { scheme_index: inf, value: None });
    for &i in &quadratics {
        let Locus::Root(f) = &scheme.points[i].locus else { unreachable!() };
        let c: Vec<RatFunc> = f
            .coeffs_in(Z)
            .into_iter()
            .map(|x| par.pull_back(&RatFunc::from_poly(x)))
            .collect::<Result<_, _>>()?;
        let two_f2 = c[2].scale(&int(2));
        for sign in [1, -1] {
            let w = par.sqrt_disc.scale(&int(sign));
            let root = &(&(-&c[1]) + &w) / &two_f2;
            let check = &(&(&(&c[2] * &root) + &c[1]) * &root) + &c[0];
            if !check.is_zero() {
                return Err(crate::exactalg::AlgError::Invariant("conic root check failed".into()).into());
            }
            points.push(PointValue { scheme_index: i, value: Some(root) });
        }
    }
    let Locus::Root(app) = &scheme.apparent[0].locus else { unreachable!() };
    let app_value = par.pull_back(&linear_root(app))?;
    let val = |slot: usize| points[order[slot]].value.clone();
    let map = mobius_through(&val(1), &val(2), &val(0))?;
    let t = image(&map, &val(3)).ok_or(PfError::BadOrdering)?;
    let lambda = map.apply(&app_value).ok_or(PfError::ApparentAtInfinity)?;
    Ok(Renormalization { parametrization: par, points, order, lambda, t, map })
}

/// How exponent differences θ become PVI parameters; slots are (∞, 0, 1, t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlphaConvention {
    /// α_i = θ_i²/2 at every slot.
    Squared,
    /// α_0 = (θ_∞ − 1)²/2, the others θ²/2.
    ShiftedAtInfinity,
}

pub fn alpha_from_scheme(
    scheme: &RiemannScheme,
    renorm: &Renormalization,
    convention: AlphaConvention,
) -> [BigRational; 4] {
    [0, 1, 2, 3].map(|slot| {
        let theta = scheme.points[renorm.points[renorm.order[slot]].scheme_index].theta();
        let th = if slot == 0 && convention == AlphaConvention::ShiftedAtInfinity { theta - int(1) } else { theta };
        &th * &th / BigRational::from_integer(BigInt::from(2))
    })
}

/// Implicit equation of the curve `(λ(param), t(param))`.
pub fn eliminate_parameter(lambda: &RatFunc, t: &RatFunc, param: &str) -> Result<MultiPoly, PfError> {
    let e1 = &(&MultiPoly::var(LAMBDA) * lambda.den()) - lambda.num();
    let e2 = &(&MultiPoly::var(T) * t.den()) - t.num();
    let r = resultant(&e1, &e2, param)?;
    if r.is_zero() || !r.has_var(LAMBDA) || !r.has_var(T) {
        return Err(PfError::DependentParametrization);
    }
    // drop factors free of λ or of t
    let r = exact_divide(&r, &content_in(&r, LAMBDA))?;
    let r = exact_divide(&r, &content_in(&r, T))?;
    Ok(squarefree_part(&r, LAMBDA).primitive())
}

/// A Möbius change of parameter μ with `(λ1, t1)(μ(p2)) = (λ2, t2)(p2)`, if one exists.
pub fn mobius_reparametrization(
    first: (&RatFunc, &RatFunc, &str),
    second: (&RatFunc, &RatFunc, &str),
) -> Option<MobiusMap> {
    let (l1, t1, k) = first;
    let (l2, t2, s) = second;
    let mut pairs: Vec<(BigRational, BigRational)> = Vec::new();
    for n in 2..40i64 {
        if pairs.len() == 3 {
            break;
        }
        let s0 = BigRational::new(BigInt::from(n), BigInt::from(3));
        let (Ok(lv), Ok(tv)) = (l2.eval(s, &s0), t2.eval(s, &s0)) else { continue };
        let (Some(lv), Some(tv)) = (lv.constant_value(), tv.constant_value()) else { continue };
        let e1 = &(l1.num() - &l1.den().scale(&lv)).rename(k, "__k");
        let e2 = &(t1.num() - &t1.den().scale(&tv)).rename(k, "__k");
        let g = gcd(e1, e2);
        let Ok(roots) = rational_roots(&g, "__k") else { continue };
        if roots.len() == 1 && g.deg("__k") == 1 {
            let k0 = roots[0].0.clone();
            if !l1.den().eval(k, &k0).is_zero() && !t1.den().eval(k, &k0).is_zero() {
                pairs.push((s0, k0));
            }
        }
    }
    if pairs.len() < 3 {
        return None;
    }
    let c = |x: &BigRational| Some(RatFunc::constant(x.clone()));
    let from = mobius_through(&c(&pairs[0].0), &c(&pairs[1].0), &c(&pairs[2].0)).ok()?;
    let to = mobius_through(&c(&pairs[0].1), &c(&pairs[1].1), &c(&pairs[2].1)).ok()?;
    let mu = to.inverse().compose(&from);
    let mu_rf = mu.as_ratfunc(s);
    let same = |f1: &RatFunc, f2: &RatFunc| f1.substitute(k, &mu_rf).map(|x| &x == f2).unwrap_or(false);
    (same(l1, l2) && same(t1, t2)).then_some(mu)
}

/// Everything computed for one Weierstrass family, system and slot order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Derivation {
    pub row: u32,
    pub variant: Variant,
    pub ode: ScalarOde,
    pub scheme: RiemannScheme,
    pub renormalization: Renormalization,
    pub alpha: [String; 4],
    #[serde(skip)]
    pub alpha_values: [BigRational; 4],
    pub curve: MultiPoly,
}

pub fn derive(
    w: &WeierstrassData,
    variant: Variant,
    order: [usize; 4],
    convention: AlphaConvention,
) -> Result<Derivation, PfError> {
    let sys = FuchsianSystem::new(w, variant)?;
    let ode = scalar_ode(&sys)?;
    let scheme = riemann_scheme(&ode)?;
    let renormalization = renormalize(&scheme, order)?;
    let alpha_values = alpha_from_scheme(&scheme, &renormalization, convention);
    let curve = eliminate_parameter(&renormalization.lambda, &renormalization.t, &renormalization.parametrization.param)?;
    Ok(Derivation {
        row: w.id,
        variant,
        ode,
        scheme,
        renormalization,
        alpha: alpha_values.clone().map(|x| x.to_string()),
        alpha_values,
        curve,
    })
}
