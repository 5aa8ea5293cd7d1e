//! Partitions of the projection degree over a base point.

use super::newton::polygon_of;
use super::{BasePoint, Partition, RamificationError, BASE_LOCAL, EDGE_VAR, FIBER_LOCAL};
use crate::exactalg::vars::{LAMBDA, T};
use crate::exactalg::{int, rational_roots, squarefree_decomposition, AlgError, MultiPoly};

fn only_vars(p: &MultiPoly, allowed: &[&str]) -> Result<(), RamificationError> {
    if p.vars().iter().all(|v| allowed.contains(&v.as_str())) {
        Ok(())
    } else {
        Err(RamificationError::Parametric(p.to_string()))
    }
}

/// Ramification indices of the places through the origin of `q(x, s) = 0`.
pub fn places_at_origin(q: &MultiPoly) -> Result<Vec<u32>, RamificationError> {
    only_vars(q, &[BASE_LOCAL, FIBER_LOCAL])?;
    let poly = polygon_of(q)?;
    let mut parts = Vec::new();
    for edge in &poly.edges {
        for (f, k) in squarefree_decomposition(&edge.reduced_poly, EDGE_VAR) {
            if k == 1 {
                parts.extend(std::iter::repeat_n(edge.index, f.deg(EDGE_VAR) as usize));
                continue;
            }
            if edge.index != 1 {
                return Err(RamificationError::NonGeneric(format!(
                    "repeated root of {} on an edge of slope {}",
                    edge.edge_poly, edge.slope
                )));
            }
            let roots = rational_roots(&f, EDGE_VAR)?;
            if roots.len() as u32 != f.deg(EDGE_VAR) {
                return Err(RamificationError::NonGeneric(format!(
                    "irrational repeated root of {}",
                    edge.edge_poly
                )));
            }
            let p = edge.slope.numer().to_string().parse::<u32>().expect("positive slope");
            let s = MultiPoly::var(BASE_LOCAL);
            let x = MultiPoly::var(FIBER_LOCAL);
            for (c0, _) in roots {
                // x = s^p (c0 + x1), then divide out the power of s
                let shift = &s.pow(p) * &(&MultiPoly::constant(c0) + &x);
                let q1 = q.substitute(FIBER_LOCAL, &shift);
                let low = q1.low_degree(BASE_LOCAL);
                let q1 = crate::exactalg::exact_divide(&q1, &s.pow(low))?;
                let sub = places_at_origin(&q1)?;
                if sub.iter().sum::<u32>() != k {
                    return Err(AlgError::Invariant(format!(
                        "branch recursion found {} places of total index {}, expected {k}",
                        sub.len(),
                        sub.iter().sum::<u32>()
                    ))
                    .into());
                }
                parts.extend(sub);
            }
        }
    }
    Ok(parts)
}

/// Ramification indices of all places of the compactified fiber over `t0`.
pub fn fiber_partition(p: &MultiPoly, t0: &BasePoint) -> Result<Partition, RamificationError> {
    only_vars(p, &[LAMBDA, T])?;
    let d = p.deg(LAMBDA);
    if d == 0 {
        return Err(AlgError::DegreeTooSmall { var: LAMBDA.into(), needed: 1 }.into());
    }
    let s = MultiPoly::var(BASE_LOCAL);
    let b = match t0 {
        BasePoint::Finite(v) => p.substitute(T, &(&MultiPoly::constant(v.clone()) + &s)),
        BasePoint::Infinity => p.substitute_ratio(T, &MultiPoly::one(), &s)?.0,
    };
    let f = b.eval(BASE_LOCAL, &int(0));
    if f.is_zero() {
        return Err(RamificationError::FiberComponent(t0.to_string()));
    }
    let mut parts = Vec::new();
    for (g, k) in squarefree_decomposition(&f, LAMBDA) {
        if k == 1 {
            parts.extend(std::iter::repeat_n(1, g.deg(LAMBDA) as usize));
            continue;
        }
        let roots = rational_roots(&g, LAMBDA)?;
        if roots.len() as u32 != g.deg(LAMBDA) {
            return Err(RamificationError::NonGeneric(format!(
                "irrational multiple point {g} over t = {t0}"
            )));
        }
        for (l0, _) in roots {
            let q = b.substitute(LAMBDA, &(&MultiPoly::constant(l0) + &MultiPoly::var(FIBER_LOCAL)));
            let sub = places_at_origin(&q)?;
            debug_assert_eq!(sub.iter().sum::<u32>(), k);
            parts.extend(sub);
        }
    }
    let m_inf = d - f.deg(LAMBDA);
    if m_inf == 1 {
        parts.push(1);
    } else if m_inf > 1 {
        let q = b.substitute_ratio(LAMBDA, &MultiPoly::one(), &MultiPoly::var(FIBER_LOCAL))?.0;
        parts.extend(places_at_origin(&q)?);
    }
    let part = Partition::new(parts);
    if part.degree() != d {
        return Err(AlgError::Invariant(format!(
            "partition {part} over t = {t0} does not sum to the degree {d}"
        ))
        .into());
    }
    Ok(part)
}

/// Partitions over t = 0, 1, ∞.
pub fn fiber_partitions(p: &MultiPoly) -> Result<[Partition; 3], RamificationError> {
    let [a, b, c] = BasePoint::standard();
    Ok([fiber_partition(p, &a)?, fiber_partition(p, &b)?, fiber_partition(p, &c)?])
}
