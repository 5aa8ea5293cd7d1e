//! Division, pseudo-division and subresultant elimination.

use super::poly::MultiPoly;
use super::AlgError;

/// Exact division `p / q`, or [`AlgError::NotDivisible`] if `q` does not divide `p`.
///
/// Runs multivariate division with lex leading terms; when `q | p` every intermediate
/// remainder stays a multiple of `q`, so a leading-term mismatch proves non-divisibility.
pub fn exact_divide(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, AlgError> {
    if q.is_zero() {
        return Err(AlgError::DivisionByZero);
    }
    if q.is_constant() {
        return Ok(p.scale(&q.constant_value().recip()));
    }
    let (lq_mono, lq_coeff) = q.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let q_vars = q.vars().to_vec();
    let mut r = p.clone();
    let mut quotient = MultiPoly::zero();
    while !r.is_zero() {
        let (rm, rc) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // every variable of q must occur in r's leading monomial with at least q's exponent
        let mut factor = MultiPoly::constant(rc / &lq_coeff);
        for (v, &e) in r.vars().iter().zip(&rm) {
            let need = q_vars.iter().position(|w| w == v).map_or(0, |i| lq_mono[i]);
            if e < need {
                return Err(AlgError::NotDivisible);
            }
            if e > need {
                factor = &factor * &MultiPoly::var(v).pow(e - need);
            }
        }
        for (i, v) in q_vars.iter().enumerate() {
            if lq_mono[i] > 0 && !r.has_var(v) {
                return Err(AlgError::NotDivisible);
            }
        }
        r = &r - &(&factor * q);
        quotient = &quotient + &factor;
    }
    Ok(quotient)
}

/// True iff `q` divides `p` exactly.
pub fn divides(q: &MultiPoly, p: &MultiPoly) -> bool {
    exact_divide(p, q).is_ok()
}

fn strip(c: &mut Vec<MultiPoly>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

/// Pseudo-remainder on coefficient vectors: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem_coeffs(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = b.len() - 1;
    let mut r = a.to_vec();
    strip(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let lb = &b[n];
    let mut e = (r.len() - b.len() + 1) as i64;
    while !r.is_empty() && r.len() > n {
        let d = r.len() - 1;
        let lr = r[d].clone();
        let shift = d - n;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                r[k + shift] = &r[k + shift] - &(&lr * bk);
            }
        }
        strip(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    r
}

/// Pseudo-remainder of `a` by `b` with respect to `var`, with the full factor
/// `lc(b)^(deg a - deg b + 1)` so that the result is independent of early termination.
pub fn prem(a: &MultiPoly, b: &MultiPoly, var: &str) -> Result<MultiPoly, AlgError> {
    if b.is_zero() {
        return Err(AlgError::DivisionByZero);
    }
    let r = prem_coeffs(&a.coeffs_in(var), &b.coeffs_in(var));
    Ok(MultiPoly::from_coeffs(var, &r))
}

fn divide_all(c: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    c.iter()
        .map(|x| exact_divide(x, d).expect("subresultant division must be exact"))
        .collect()
}

/// Resultant in `var` by the subresultant pseudo-remainder sequence.
///
/// Sign convention is Sylvester's: `Res(a, b) = lc(a)^deg b * prod b(roots of a)`.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, var: &str) -> Result<MultiPoly, AlgError> {
    if a.is_zero() || b.is_zero() {
        return Ok(MultiPoly::zero());
    }
    let (da, db) = (a.deg(var), b.deg(var));
    if da == 0 && db == 0 {
        return Err(AlgError::ConstantInVariable(var.to_string()));
    }
    if db == 0 {
        return Ok(b.pow(da));
    }
    if da == 0 {
        return Ok(a.pow(db));
    }
    let mut ca = a.coeffs_in(var);
    let mut cb = b.coeffs_in(var);
    let mut s = MultiPoly::one();
    if da < db {
        std::mem::swap(&mut ca, &mut cb);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let (deg_a, deg_b) = (ca.len() - 1, cb.len() - 1);
        let delta = (deg_a - deg_b) as u32;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            s = -s;
        }
        let r = prem_coeffs(&ca, &cb);
        if r.is_empty() {
            return Ok(MultiPoly::zero());
        }
        ca = cb;
        let div = &g * &h.pow(delta);
        cb = divide_all(&r, &div);
        g = ca.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            exact_divide(&g.pow(delta), &h.pow(delta - 1)).expect("subresultant h update")
        };
        if cb.len() == 1 {
            let d = (ca.len() - 1) as u32;
            let lb = cb[0].clone();
            let hh = exact_divide(&lb.pow(d), &h.pow(d - 1)).expect("subresultant final step");
            return Ok(&s * &hh);
        }
    }
}

/// Discriminant `(-1)^(n(n-1)/2) Res(p, p') / lc(p)` in `var`.
pub fn discriminant(p: &MultiPoly, var: &str) -> Result<MultiPoly, AlgError> {
    let n = p.deg(var);
    if n < 2 {
        return Err(AlgError::DegreeTooSmall { var: var.to_string(), needed: 2 });
    }
    let r = resultant(p, &p.derivative(var), var)?;
    let lc = p.leading_coeff_in(var);
    let d = exact_divide(&r, &lc).map_err(|_| {
        AlgError::Invariant(format!("leading coefficient does not divide resultant of {p}"))
    })?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Repeatedly divides `p` by `f` and returns the quotient and the multiplicity removed.
pub fn strip_factor(p: &MultiPoly, f: &MultiPoly) -> (MultiPoly, u32) {
    let mut cur = p.clone();
    let mut k = 0;
    if f.is_constant() || p.is_zero() {
        return (cur, 0);
    }
    while let Ok(q) = exact_divide(&cur, f) {
        cur = q;
        k += 1;
    }
    (cur, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    /// Sylvester determinant by cofactor expansion over MultiPoly, independent of the PRS.
    fn sylvester(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
        let ca: Vec<_> = a.coeffs_in(var).into_iter().rev().collect();
        let cb: Vec<_> = b.coeffs_in(var).into_iter().rev().collect();
        let (m, n) = (ca.len() - 1, cb.len() - 1);
        let size = m + n;
        let mut mat = vec![vec![MultiPoly::zero(); size]; size];
        for i in 0..n {
            for (j, c) in ca.iter().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in cb.iter().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        det(&mat)
    }

    fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = MultiPoly::zero();
        for j in 0..m.len() {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn quadratic_and_derivative() {
        // Sylvester determinant of [[1,0,-t],[2,0,0],[0,2,0]] is -4t
        let r = resultant(&p("lambda^2 - t"), &p("2*lambda"), "lambda").unwrap();
        assert_eq!(r, p("-4*t"));
        assert_eq!(r, sylvester(&p("lambda^2 - t"), &p("2*lambda"), "lambda"));
    }

    #[test]
    fn linear_elimination() {
        let r = resultant(&p("lambda - t^2"), &p("lambda + t"), "lambda").unwrap();
        assert_eq!(r, p("t^2 + t"));
    }

    #[test]
    fn parametric_coefficients() {
        let a = p("a*lambda^2 - b*t");
        let b = p("2*a*lambda");
        let r = resultant(&a, &b, "lambda").unwrap();
        assert_eq!(r, sylvester(&a, &b, "lambda"));
        assert_eq!(r, p("-4*a^2*b*t"));
    }

    #[test]
    fn matches_sylvester_on_mixed_degrees() {
        let cases = [
            ("x^3 - 2*x*y + 1", "y*x^2 + x - y^2"),
            ("x^4 + y*x + 3", "x^2 - y"),
            ("2*x^2 + y", "x^5 - x*y^2 + 7"),
            ("x^3 + x", "x^3 - x^2 + y"),
        ];
        for (a, b) in cases {
            let (a, b) = (p(a), p(b));
            assert_eq!(resultant(&a, &b, "x").unwrap(), sylvester(&a, &b, "x"), "{a} / {b}");
        }
    }

    #[test]
    fn common_factor_gives_zero() {
        let r = resultant(&p("(x - y)*(x + 1)"), &p("(x - y)*(x - 2)"), "x").unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn both_constant_is_an_error() {
        assert!(resultant(&p("t"), &p("t + 1"), "lambda").is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p("lambda^2 - t"), "lambda").unwrap(), p("4*t"));
        assert_eq!(discriminant(&p("lambda^2 - 2*lambda + t"), "lambda").unwrap(), p("4 - 4*t"));
        // cubic x^3 + px + q has discriminant -4p^3 - 27q^2
        assert_eq!(
            discriminant(&p("x^3 + u*x + v"), "x").unwrap(),
            p("-4*u^3 - 27*v^2")
        );
    }

    #[test]
    fn exact_division() {
        assert_eq!(exact_divide(&p("lambda^4 - t^2"), &p("lambda^2 - t")).unwrap(), p("lambda^2 + t"));
        assert!(matches!(
            exact_divide(&p("lambda^2 - t"), &p("lambda - 1")),
            Err(AlgError::NotDivisible)
        ));
        assert!(matches!(exact_divide(&p("t"), &p("lambda")), Err(AlgError::NotDivisible)));
    }

    #[test]
    fn pseudo_remainder() {
        let r = prem(&p("x^3 + y"), &p("y*x - 1"), "x").unwrap();
        // y^3 (x^3 + y) = (y x - 1)(...) + 1 + y^4
        assert_eq!(r, p("1 + y^4"));
    }

    #[test]
    fn factor_stripping() {
        let (q, k) = strip_factor(&p("t^3*(t-1)^2*(t+5)"), &p("t - 1"));
        assert_eq!(k, 2);
        assert_eq!(q, p("t^3*(t+5)"));
    }
}
