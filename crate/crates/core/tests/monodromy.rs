//! Numeric cross-check of fiber partitions: continue the roots of P(λ, t) around a small loop
//! encircling the base point and read the partition off the cycle type of the monodromy.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use pvi_core::exactalg::MultiPoly;
use pvi_core::ramification::{belyi_check, face_curve, fiber_partitions, sample_face_beta, FaceSpec, Partition};

fn coeffs_at(p: &MultiPoly, t: Complex64) -> Vec<Complex64> {
    let vars = p.vars();
    let li = vars.iter().position(|v| v == "lambda").unwrap();
    let ti = vars.iter().position(|v| v == "t");
    let d = p.deg("lambda") as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); d + 1];
    for (m, c) in p.terms() {
        let tpow = ti.map_or(0, |i| m[i]) as i32;
        out[m[li] as usize] += t.powi(tpow) * c.to_f64().unwrap();
    }
    out
}

fn eval(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a)
}

/// Durand-Kerner polishing from a previous set of roots.
fn polish(c: &[Complex64], roots: &mut [Complex64]) {
    let lc = *c.last().unwrap();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..roots.len() {
            let mut den = lc;
            for j in 0..roots.len() {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(c, roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if delta < 1e-14 {
            break;
        }
    }
}

fn initial_roots(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let mut r: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(1.3, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    polish(c, &mut r);
    r
}

/// Numeric roots of the branch points away from 0, 1, ∞, from the exact discriminant.
fn extra_branch_points(p: &MultiPoly) -> Vec<Complex64> {
    let extra = belyi_check(p).unwrap().extra_factor;
    let d = extra.deg("t") as usize;
    if d == 0 {
        return Vec::new();
    }
    let mut c = vec![Complex64::new(0.0, 0.0); d + 1];
    let vars = extra.vars();
    let ti = vars.iter().position(|v| v == "t").unwrap();
    for (m, coef) in extra.terms() {
        c[m[ti] as usize] += coef.to_f64().unwrap();
    }
    let mut r = initial_roots(&c);
    for _ in 0..50 {
        polish(&c, &mut r);
    }
    r
}

/// Loop radius small (or large) enough that no other branch point is enclosed.
fn loop_radius(center: Option<f64>, others: &[Complex64]) -> f64 {
    match center {
        Some(t0) => others
            .iter()
            .map(|z| (z - Complex64::new(t0, 0.0)).norm() / 4.0)
            .fold(1e-3, f64::min),
        None => others.iter().map(|z| z.norm() * 4.0).fold(1e3, f64::max),
    }
}

fn monodromy_partition(p: &MultiPoly, center: Option<f64>) -> Partition {
    let radius = loop_radius(center, &extra_branch_points(p));
    let path = |theta: f64| match center {
        Some(t0) => Complex64::new(t0, 0.0) + Complex64::from_polar(radius, theta),
        None => Complex64::from_polar(radius, theta),
    };
    let steps = 1500;
    let start = initial_roots(&coeffs_at(p, path(0.0)));
    let mut roots = start.clone();
    for k in 1..=steps {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
        let c = coeffs_at(p, path(theta));
        let mut next = roots.clone();
        polish(&c, &mut next);
        // keep labels by nearest-neighbour matching
        let mut used = vec![false; next.len()];
        let mut matched = vec![Complex64::new(0.0, 0.0); next.len()];
        for (i, r) in roots.iter().enumerate() {
            let j = (0..next.len())
                .filter(|j| !used[*j])
                .min_by(|a, b| (next[*a] - r).norm().partial_cmp(&(next[*b] - r).norm()).unwrap())
                .unwrap();
            used[j] = true;
            matched[i] = next[j];
        }
        roots = matched;
    }
    let perm: Vec<usize> = roots
        .iter()
        .map(|r| {
            (0..start.len())
                .min_by(|a, b| (start[*a] - r).norm().partial_cmp(&(start[*b] - r).norm()).unwrap())
                .unwrap()
        })
        .collect();
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        cycles.push(len);
    }
    Partition::new(cycles)
}

#[test]
fn newton_polygon_partitions_match_numeric_monodromy() {
    let faces = [
        "generic",
        "b0=b2",
        "b0=b2,b1=b3",
        "b0=b1=b2",
        "b0=b1=b2=b3",
        "b3=0",
        "b0=b2,b3=0",
        "b0=b1=b2,b3=0",
        "b2=b3=0",
        "b1=b3",
        "b0=b3",
        "b1=0",
    ];
    for id in faces {
        let beta = sample_face_beta(&FaceSpec::parse(id).unwrap(), 3).unwrap();
        let curve = face_curve(&beta);
        let exact = fiber_partitions(&curve).unwrap();
        let numeric = [Some(0.0), Some(1.0), None].map(|c| monodromy_partition(&curve, c));
        assert_eq!(exact, numeric, "face {id}, beta {beta:?}");
    }
}
