//! Multivariate gcd by recursion on variables with subresultant sequences.

use super::poly::MultiPoly;
use super::resultant::{exact_divide, prem};

/// Gcd normalized to primitive form (integer coefficients, positive leading coefficient).
/// The gcd of two constants is 1; `gcd(0, 0) = 0`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.primitive();
    }
    if q.is_zero() {
        return p.primitive();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one();
    }
    let var = main_var(p, q);
    match (p.has_var(&var), q.has_var(&var)) {
        (true, true) => gcd_in(p, q, &var),
        (true, false) => gcd(&content_in(p, &var), q),
        (false, true) => gcd(p, &content_in(q, &var)),
        (false, false) => unreachable!("main_var occurs in one operand"),
    }
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a MultiPoly>>(items: I) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for x in items {
        g = gcd(&g, x);
        if g.is_one() {
            break;
        }
    }
    g
}

fn main_var(p: &MultiPoly, q: &MultiPoly) -> String {
    let a = p.vars().first();
    let b = q.vars().first();
    match (a, b) {
        (Some(x), Some(y)) => {
            if super::vars::compare_vars(x, y).is_le() {
                x.clone()
            } else {
                y.clone()
            }
        }
        (Some(x), None) => x.clone(),
        (None, Some(y)) => y.clone(),
        (None, None) => unreachable!(),
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &MultiPoly, var: &str) -> MultiPoly {
    gcd_many(p.coeffs_in(var).iter().filter(|c| !c.is_zero()))
}

/// `p` divided by its content in `var`, then normalized to primitive form.
pub fn primitive_in(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let c = content_in(p, var);
    exact_divide(p, &c).expect("content divides").primitive()
}

fn gcd_in(p: &MultiPoly, q: &MultiPoly, var: &str) -> MultiPoly {
    let cp = content_in(p, var);
    let cq = content_in(q, var);
    let d = gcd(&cp, &cq);
    let mut a = exact_divide(p, &cp).expect("content divides");
    let mut b = exact_divide(q, &cq).expect("content divides");
    if a.deg(var) < b.deg(var) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let delta = a.deg(var) - b.deg(var);
        let r = prem(&a, &b, var).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        if r.deg(var) == 0 {
            b = MultiPoly::one();
            break;
        }
        a = b;
        let div = &g * &h.pow(delta);
        b = exact_divide(&r, &div).expect("subresultant division");
        g = a.leading_coeff_in(var);
        h = if delta == 0 {
            h
        } else {
            exact_divide(&g.pow(delta), &h.pow(delta - 1)).expect("subresultant h update")
        };
    }
    (&d * &primitive_in(&b, var)).primitive()
}

/// Squarefree decomposition in `var`: factors `f_i` with `p = c * prod f_i^i` up to content.
/// Entry `(f, i)` is returned only for non-constant `f`.
pub fn squarefree_decomposition(p: &MultiPoly, var: &str) -> Vec<(MultiPoly, u32)> {
    // Yun's algorithm over Q[params]
    let mut out = Vec::new();
    if p.deg(var) == 0 {
        return out;
    }
    let p = primitive_in(p, var);
    let dp = p.derivative(var);
    let a0 = gcd(&p, &dp);
    let mut b = exact_divide(&p, &a0).unwrap();
    let mut c = exact_divide(&dp, &a0).unwrap();
    let mut d = &c - &b.derivative(var);
    let mut i = 1;
    loop {
        if b.deg(var) == 0 {
            break;
        }
        let a = gcd(&b, &d);
        if a.deg(var) > 0 {
            out.push((a.primitive(), i));
        }
        b = exact_divide(&b, &a).unwrap();
        c = exact_divide(&d, &a).unwrap();
        d = &c - &b.derivative(var);
        i += 1;
    }
    out
}

/// Squarefree part in `var` (product of the distinct factors).
pub fn squarefree_part(p: &MultiPoly, var: &str) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for (f, _) in squarefree_decomposition(p, var) {
        acc = &acc * &f;
    }
    acc.primitive()
}
