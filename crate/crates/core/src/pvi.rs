//! Residue oracle for the sixth Painlevé equation.
//!
//! A curve `P(λ, t) = 0` solves PVI_α on every branch iff the numerator of
//! `λ'' - RHS(λ, λ', t)`, with λ', λ'' taken by implicit differentiation, vanishes modulo P.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{
    divides, exact_divide, gcd, parse_poly, prem, rat, AffineSubspace, AlgError, MultiPoly,
    RatFunc,
};
use crate::exactalg::vars::{LAMBDA, T};

pub const BETA_VARS: [&str; 4] = ["b0", "b1", "b2", "b3"];
pub const ALPHA_VARS: [&str; 4] = ["alpha0", "alpha1", "alpha2", "alpha3"];

/// Four entries indexed like (α0, α1, α2, α3) or (β0, β1, β2, β3); each may involve parameters.
pub type Quadruple = [MultiPoly; 4];

pub fn quadruple_from_rationals(v: &[BigRational; 4]) -> Quadruple {
    [0, 1, 2, 3].map(|i| MultiPoly::constant(v[i].clone()))
}

pub fn quadruple_from_strs(v: [&str; 4]) -> Result<Quadruple, AlgError> {
    Ok([parse_poly(v[0])?, parse_poly(v[1])?, parse_poly(v[2])?, parse_poly(v[3])?])
}

/// Symbolic β = (b0, b1, b2, b3).
pub fn symbolic_beta() -> Quadruple {
    BETA_VARS.map(MultiPoly::var)
}

/// Numeric value of a quadruple without parameters.
pub fn numeric(q: &Quadruple) -> Option<[BigRational; 4]> {
    if q.iter().all(|x| x.is_constant()) {
        Some([0, 1, 2, 3].map(|i| q[i].constant_value()))
    } else {
        None
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PviError {
    #[error("curve has degree zero in lambda")]
    ConstantInLambda,
    #[error("curve is not squarefree in lambda")]
    NotSquarefree,
    #[error("curve contains the trivial component {0} = 0")]
    TrivialComponent(String),
    #[error("curve has parameter coefficients; use the parametric solver")]
    ParametricCurve,
    #[error("unknown face identity {0:?}")]
    UnknownFace(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// The curve polynomial obtained by clearing denominators in
/// `β0 - β1 t/λ² + β2 (t-1)/(λ-1)² - β3 t(t-1)/(λ-t)² = 0`.
pub fn build_curve_poly(beta: &Quadruple) -> MultiPoly {
    let l = MultiPoly::var(LAMBDA);
    let t = MultiPoly::var(T);
    let one = MultiPoly::one();
    let l1 = &l - &one;
    let lt = &l - &t;
    let t1 = &t - &one;
    let l2 = l.pow(2);
    let l12 = l1.pow(2);
    let lt2 = lt.pow(2);
    let term0 = &beta[0] * &(&(&l2 * &l12) * &lt2);
    let term1 = &beta[1] * &(&(&t * &l12) * &lt2);
    let term2 = &beta[2] * &(&(&t1 * &l2) * &lt2);
    let term3 = &beta[3] * &(&(&(&t * &t1) * &l2) * &l12);
    &(&(&term0 - &term1) + &term2) - &term3
}

/// The β3 = 0 reduced curve `β0 λ²(λ-1)² - β1 t (λ-1)² + β2 (t-1) λ²`.
pub fn build_reduced_curve_poly(beta: &[MultiPoly; 3]) -> MultiPoly {
    let l = MultiPoly::var(LAMBDA);
    let t = MultiPoly::var(T);
    let one = MultiPoly::one();
    let l1 = &l - &one;
    let l2 = l.pow(2);
    let l12 = l1.pow(2);
    let a = &beta[0] * &(&l2 * &l12);
    let b = &beta[1] * &(&t * &l12);
    let c = &beta[2] * &(&(&t - &one) * &l2);
    &(&a - &b) + &c
}

/// λ' = -P_t / P_λ and λ'' = ∂λ'/∂t + λ' ∂λ'/∂λ as reduced rational functions.
pub fn implicit_derivatives(p: &MultiPoly) -> Result<(RatFunc, RatFunc), PviError> {
    let pl = p.derivative(LAMBDA);
    if pl.is_zero() {
        return Err(PviError::ConstantInLambda);
    }
    let pt = p.derivative(T);
    let d1 = RatFunc::new(-&pt, pl)?;
    let d2 = &d1.derivative(T) + &(&d1 * &d1.derivative(LAMBDA));
    Ok((d1, d2))
}

fn check_curve(p: &MultiPoly) -> Result<(), PviError> {
    if p.deg(LAMBDA) == 0 {
        return Err(PviError::ConstantInLambda);
    }
    let l = MultiPoly::var(LAMBDA);
    let t = MultiPoly::var(T);
    for (name, f) in [("lambda", l.clone()), ("lambda - 1", &l - &MultiPoly::one()), ("lambda - t", &l - &t)] {
        if divides(&f, p) {
            return Err(PviError::TrivialComponent(name.to_string()));
        }
    }
    let g = gcd(p, &p.derivative(LAMBDA));
    if g.deg(LAMBDA) > 0 {
        return Err(PviError::NotSquarefree);
    }
    Ok(())
}

/// Numerator of PVI_α along the curve before reduction modulo P, with α encoded through
/// `n_alpha = N_(α0, α1, α2, α3 - 1/2)`.
fn residue_numerator(p: &MultiPoly, n_alpha: &MultiPoly) -> MultiPoly {
    let one = MultiPoly::one();
    let l = MultiPoly::var(LAMBDA);
    let t = MultiPoly::var(T);
    let pt = p.derivative(T);
    let d = p.derivative(LAMBDA);
    let ptt = pt.derivative(T);
    let ptl = pt.derivative(LAMBDA);
    let pll = d.derivative(LAMBDA);
    let d2 = d.pow(2);
    let pt2 = pt.pow(2);
    // E2 = -(P_tt D² - 2 P_tλ P_t D + P_λλ P_t²), so that λ'' = E2 / D³
    let e2 = -(&(&(&ptt * &d2) - &(&(&ptl * &pt) * &d).scale(&rat(2, 1))) + &(&pll * &pt2));
    let l1 = &l - &one;
    let lt = &l - &t;
    let big_l = &(&l * &l1) * &lt;
    let big_t = &t * &(&t - &one);
    let s1 = big_l.derivative(LAMBDA);
    let s2 = &(&(&t.scale(&rat(2, 1)) - &one) * &lt) + &big_t;
    let t2 = big_t.pow(2);
    let r1 = (&(&t2 * &big_l) * &e2).scale(&rat(2, 1));
    let r2 = &(&(&t2 * &s1) * &pt2) * &d;
    let r3 = (&(&(&(&big_t * &l) * &l1) * &s2) * &(&pt * &d2)).scale(&rat(2, 1));
    let r4 = (&d.pow(3) * n_alpha).scale(&rat(2, 1));
    &(&(&r1 - &r2) - &r3) - &r4
}

fn alpha_curve(alpha: &Quadruple) -> MultiPoly {
    let shifted = [
        alpha[0].clone(),
        alpha[1].clone(),
        alpha[2].clone(),
        &alpha[3] - &MultiPoly::constant(rat(1, 2)),
    ];
    build_curve_poly(&shifted)
}

/// Primitive part of the pseudo-remainder of the cleared PVI_α numerator modulo P.
/// The zero polynomial means every branch of P solves PVI_α.
pub fn pvi_residue(p: &MultiPoly, alpha: &Quadruple) -> Result<MultiPoly, PviError> {
    check_curve(p)?;
    let r = residue_numerator(p, &alpha_curve(alpha));
    Ok(prem(&r, p, LAMBDA)?.primitive())
}

/// Linear system `rows · (α0, α1, α2, α3, 1) = 0` whose solutions are the α solved by P.
/// Entries are polynomials in whatever parameters P carries.
fn alpha_system(p: &MultiPoly) -> Result<Vec<Vec<MultiPoly>>, PviError> {
    check_curve(p)?;
    let alpha = ALPHA_VARS.map(MultiPoly::var);
    let r = residue_numerator(p, &alpha_curve(&alpha));
    let r = prem(&r, p, LAMBDA)?;
    let mut rows = Vec::new();
    for (_, c) in r.collect_in(&[LAMBDA, T]) {
        let mut row: Vec<MultiPoly> = ALPHA_VARS.iter().map(|v| c.coeff_of(v, 1)).collect();
        let mut c0 = c.clone();
        for v in ALPHA_VARS {
            c0 = c0.eval(v, &BigRational::zero());
        }
        row.push(c0);
        rows.push(row);
    }
    Ok(dedup_rows(rows))
}

fn dedup_rows(rows: Vec<Vec<MultiPoly>>) -> Vec<Vec<MultiPoly>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for row in rows {
        // normalize by the first nonzero entry's content so scalar multiples collapse
        let Some(lead) = row.iter().find(|x| !x.is_zero()) else { continue };
        let c = lead.content();
        let norm: Vec<MultiPoly> = row.iter().map(|x| x.scale(&c.recip())).collect();
        let key: Vec<String> = norm.iter().map(|x| x.to_string()).collect();
        if seen.insert(key) {
            out.push(norm);
        }
    }
    out
}

/// The affine subspace of α ∈ Q⁴ for which every branch of P solves PVI_α, or `None`.
pub fn solve_alpha_subspace(p: &MultiPoly) -> Result<Option<AffineSubspace<BigRational>>, PviError> {
    if p.vars().iter().any(|v| v != LAMBDA && v != T) {
        return Err(PviError::ParametricCurve);
    }
    let rows = alpha_system(p)?
        .into_iter()
        .map(|r| r.iter().map(|x| x.constant_value()).collect())
        .collect();
    Ok(AffineSubspace::from_equations(rows, 4))
}

/// As [`solve_alpha_subspace`] for curves whose coefficients involve parameters; the answer
/// lives over the rational function field of those parameters.
pub fn solve_alpha_subspace_parametric(
    p: &MultiPoly,
) -> Result<Option<AffineSubspace<RatFunc>>, PviError> {
    let rows = alpha_system(p)?
        .into_iter()
        .map(|r| r.into_iter().map(RatFunc::from_poly).collect())
        .collect();
    Ok(AffineSubspace::from_equations(rows, 4))
}

/// The α-subspace of a pattern like `(a, 1/8, a, a)`: every entry affine in the parameters.
pub fn pattern_subspace(pattern: &Quadruple, params: &[&str]) -> AffineSubspace<BigRational> {
    let mut base = Vec::with_capacity(4);
    for x in pattern {
        let mut c = x.clone();
        for v in params {
            c = c.eval(v, &BigRational::zero());
        }
        base.push(c.constant_value());
    }
    let dirs = params
        .iter()
        .map(|v| pattern.iter().map(|x| x.coeff_of(v, 1).constant_value()).collect())
        .collect();
    AffineSubspace::new(base, dirs)
}

/// Parameter names occurring in a quadruple, in canonical order.
pub fn parameters_of(q: &Quadruple) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for x in q {
        for v in x.vars() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
    }
    names.sort_by(|a, b| crate::exactalg::vars::compare_vars(a, b));
    names
}

/// Substitutes numeric values for parameters in a quadruple.
pub fn specialize(q: &Quadruple, values: &BTreeMap<String, BigRational>) -> Quadruple {
    q.clone().map(|x| {
        let mut y = x;
        for (k, v) in values {
            y = y.eval(k, v);
        }
        y
    })
}

/// Difference curve: the curve P must divide `N_(α' - α'')` when it solves both equations.
pub fn difference_curve(a1: &Quadruple, a2: &Quadruple) -> MultiPoly {
    let beta = [0, 1, 2, 3].map(|i| &a1[i] - &a2[i]);
    build_curve_poly(&beta)
}

/// Which side of a face identity is expanded: the full curve or its β3 = 0 reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdentitySide {
    Full,
    Reduced,
}

/// One factorization identity `curve|_face = scalar · Π factors`.
#[derive(Debug, Clone, Serialize)]
pub struct FaceIdentity {
    pub id: &'static str,
    /// Substitutions `b_i := expression in the remaining b_j`.
    pub relations: Vec<(&'static str, &'static str)>,
    pub side: IdentitySide,
    pub scalar: &'static str,
    pub factors: Vec<&'static str>,
}

pub fn face_identity_catalog() -> Vec<FaceIdentity> {
    vec![
        FaceIdentity {
            id: "b0=b2,b1=b3",
            relations: vec![("b2", "b0"), ("b3", "b1")],
            side: IdentitySide::Full,
            scalar: "1",
            factors: vec!["lambda^2 - 2*lambda + t", "b0*lambda^2*(lambda-t)^2 - b1*t^2*(lambda-1)^2"],
        },
        FaceIdentity {
            id: "b0=b1=b2=b3",
            relations: vec![("b1", "b0"), ("b2", "b0"), ("b3", "b0")],
            side: IdentitySide::Full,
            scalar: "b0",
            factors: vec!["lambda^2 - 2*lambda + t", "lambda^2 - 2*lambda*t + t", "lambda^2 - t"],
        },
        FaceIdentity {
            id: "b0=b1=b2,b3=9b0",
            relations: vec![("b1", "b0"), ("b2", "b0"), ("b3", "9*b0")],
            side: IdentitySide::Full,
            scalar: "b0",
            factors: vec![
                "lambda^2 - 2*lambda + 2*lambda*t - t",
                "t^2 - 4*lambda^3*t + 6*lambda^2*t - 4*lambda*t + lambda^4",
            ],
        },
        FaceIdentity {
            id: "b3=0",
            relations: vec![("b3", "0")],
            side: IdentitySide::Full,
            scalar: "1",
            factors: vec![
                "(lambda - t)^2",
                "b0*lambda^2*(lambda-1)^2 - b1*t*(lambda-1)^2 + b2*(t-1)*lambda^2",
            ],
        },
        FaceIdentity {
            id: "b3=0,b0=4b1=4b2",
            relations: vec![("b1", "b0/4"), ("b2", "b0/4"), ("b3", "0")],
            side: IdentitySide::Reduced,
            scalar: "b0",
            factors: vec!["2*lambda - 1", "2*lambda^3 - 3*lambda^2 + t"],
        },
        FaceIdentity {
            id: "b3=0,b1=4b0=4b2",
            relations: vec![("b1", "4*b0"), ("b2", "b0"), ("b3", "0")],
            side: IdentitySide::Reduced,
            scalar: "b0",
            factors: vec!["lambda - 2", "lambda^3 - 3*lambda*t + 2*t"],
        },
        FaceIdentity {
            id: "b3=0,b0=b1=b2",
            relations: vec![("b1", "b0"), ("b2", "b0"), ("b3", "0")],
            side: IdentitySide::Reduced,
            scalar: "b0",
            factors: vec!["lambda^4 - 2*lambda^3 + 2*lambda*t - t"],
        },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceIdentityCheck {
    pub id: String,
    /// The identity holds exactly with the stated scalar.
    pub exact: bool,
    /// The stated product divides the curve with a quotient free of λ and t.
    pub holds_up_to_scalar: bool,
    /// `curve / (stated product)` when that quotient is free of λ and t.
    pub scalar_ratio: Option<String>,
}

/// Substitutes a face's β relations into the symbolic curve and compares with the stated product.
pub fn verify_face_factorization(face_id: &str) -> Result<FaceIdentityCheck, PviError> {
    let face = face_identity_catalog()
        .into_iter()
        .find(|f| f.id == face_id)
        .ok_or_else(|| PviError::UnknownFace(face_id.to_string()))?;
    let mut beta = symbolic_beta();
    for (var, expr) in &face.relations {
        let value = parse_poly(expr)?;
        for b in beta.iter_mut() {
            *b = b.substitute(var, &value);
        }
    }
    let lhs = match face.side {
        IdentitySide::Full => build_curve_poly(&beta),
        IdentitySide::Reduced => build_reduced_curve_poly(&[beta[0].clone(), beta[1].clone(), beta[2].clone()]),
    };
    let mut product = MultiPoly::one();
    for f in &face.factors {
        product = &product * &parse_poly(f)?;
    }
    let rhs = &product * &parse_poly(face.scalar)?;
    let exact = lhs == rhs;
    let ratio = match exact_divide(&lhs, &product) {
        Ok(q) if !q.has_var(LAMBDA) && !q.has_var(T) && !q.is_zero() => {
            let r = RatFunc::new(q, parse_poly(face.scalar)?)?;
            Some(r)
        }
        _ => None,
    };
    Ok(FaceIdentityCheck {
        id: face.id.to_string(),
        exact,
        holds_up_to_scalar: ratio.is_some(),
        scalar_ratio: ratio.map(|r| r.to_string()),
    })
}

/// `N(0,t)`, `N(1,t)`, `N(t,t)` and the λ⁶ coefficient of the symbolic curve.
pub fn boundary_values() -> [(String, MultiPoly); 4] {
    let n = build_curve_poly(&symbolic_beta());
    let t = MultiPoly::var(T);
    [
        ("N(0,t)".into(), n.substitute(LAMBDA, &MultiPoly::zero())),
        ("N(1,t)".into(), n.substitute(LAMBDA, &MultiPoly::one())),
        ("N(t,t)".into(), n.substitute(LAMBDA, &t)),
        ("[lambda^6]N".into(), n.coeff_of(LAMBDA, 6)),
    ]
}

pub fn one_half() -> BigRational {
    BigRational::one() / BigRational::from_integer(2.into())
}
