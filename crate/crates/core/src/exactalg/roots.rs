//! Rational roots of univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};


use super::poly::MultiPoly;
use super::resultant::exact_divide;
use super::AlgError;

/// Positive divisors by trial division; `None` when the number is too large to factor naively.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return Some(vec![]);
    }
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots with multiplicities, sorted ascending.
/// Fails if `p` involves a variable other than `var` or has coefficients too large to search.
pub fn rational_roots(p: &MultiPoly, var: &str) -> Result<Vec<(BigRational, u32)>, AlgError> {
    if p.vars().iter().any(|v| v != var) {
        return Err(AlgError::Invariant(format!("{p} is not univariate in {var}")));
    }
    let mut cur = p.primitive();
    let mut out = Vec::new();
    let x = MultiPoly::var(var);
    // zero roots first
    let low = cur.low_degree(var);
    if low > 0 {
        out.push((BigRational::zero(), low));
        cur = exact_divide(&cur, &x.pow(low))?;
    }
    while cur.deg(var) > 0 {
        let coeffs = cur.primitive().coeffs_in(var);
        let a0 = coeffs[0].constant_value().to_integer();
        let an = coeffs.last().unwrap().constant_value().to_integer();
        let (Some(nums), Some(dens)) = (divisors(&a0), divisors(&an)) else {
            return Err(AlgError::Invariant(format!("coefficients of {p} too large for root search")));
        };
        let mut found = None;
        'search: for q in &dens {
            for n in &nums {
                if n.gcd(q) != BigInt::one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = BigRational::new(n * sign, q.clone());
                    if cur.eval(var, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else { break };
        let lin = &x - &MultiPoly::constant(r.clone());
        let mut k = 0;
        while let Ok(q) = exact_divide(&cur, &lin) {
            cur = q;
            k += 1;
        }
        out.push((r, k));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Sum of multiplicities of the rational roots; equal to the degree iff `p` splits over Q.
pub fn splits_over_q(p: &MultiPoly, var: &str) -> Result<bool, AlgError> {
    let n: u32 = rational_roots(p, var)?.iter().map(|(_, k)| k).sum();
    Ok(n == p.deg(var))
}
