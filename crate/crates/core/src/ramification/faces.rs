//! Faces of the arrangement W = ∪{βi = βj} ∪ {βk = 0}, sampling, and the Belyi test.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Partition, RamificationError};
use crate::exactalg::vars::{LAMBDA, T};
use crate::exactalg::{discriminant, int, primitive_in, strip_factor, MultiPoly};
use crate::pvi::{build_curve_poly, quadruple_from_rationals};

/// Relations cutting out a face: equalities βi = βj and vanishings βk = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSpec {
    pub id: String,
    pub equalities: Vec<(usize, usize)>,
    pub vanishings: Vec<usize>,
}

impl FaceSpec {
    pub fn generic() -> Self {
        FaceSpec { id: "generic".into(), equalities: vec![], vanishings: vec![] }
    }

    /// Parses ids such as `b0=b2,b3=0` or `b0=b1=b2`; `generic` is the empty face.
    pub fn parse(id: &str) -> Result<Self, RamificationError> {
        let id = id.trim();
        let mut face = FaceSpec { id: id.to_string(), equalities: vec![], vanishings: vec![] };
        if id == "generic" || id.is_empty() {
            face.id = "generic".into();
            return Ok(face);
        }
        for rel in id.split(',') {
            let mut idx = Vec::new();
            let mut zero = false;
            for term in rel.split('=') {
                match term.trim() {
                    "0" => zero = true,
                    t => {
                        let k = t
                            .strip_prefix('b')
                            .and_then(|k| k.parse::<usize>().ok())
                            .filter(|k| *k < 4)
                            .ok_or_else(|| RamificationError::ImpossibleFace(format!("bad term {t:?} in {id:?}")))?;
                        idx.push(k);
                    }
                }
            }
            for w in idx.windows(2) {
                face.equalities.push((w[0], w[1]));
            }
            if zero {
                face.vanishings.extend(idx.iter().copied());
            }
        }
        Ok(face)
    }

    /// Equivalence classes of indices and, for each, whether it is forced to vanish.
    fn classes(&self) -> Vec<(Vec<usize>, bool)> {
        fn find(r: &[usize; 4], mut i: usize) -> usize {
            while r[i] != i {
                i = r[i];
            }
            i
        }
        let mut root = [0usize, 1, 2, 3];
        for &(a, b) in &self.equalities {
            let (ra, rb) = (find(&root, a), find(&root, b));
            root[ra.max(rb)] = ra.min(rb);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..4 {
            groups.entry(find(&root, i)).or_default().push(i);
        }
        groups
            .into_values()
            .map(|c| {
                let z = c.iter().any(|i| self.vanishings.contains(i));
                (c, z)
            })
            .collect()
    }
}

/// Seeded sampler of points on a face and off every other hyperplane of W.
pub struct FaceSampler {
    classes: Vec<(Vec<usize>, bool)>,
    rng: ChaCha8Rng,
}

impl FaceSampler {
    pub fn new(face: &FaceSpec, seed: u64) -> Result<Self, RamificationError> {
        let classes = face.classes();
        if classes.iter().all(|(_, z)| *z) {
            return Err(RamificationError::ImpossibleFace(format!("{} forces β = 0", face.id)));
        }
        Ok(FaceSampler { classes, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    fn draw(&mut self) -> i64 {
        self.rng.gen_range(-50..=50)
    }

    pub fn next_beta(&mut self) -> [BigRational; 4] {
        let free = self.classes.iter().filter(|(_, z)| !*z).count();
        let mut beta = [int(0), int(0), int(0), int(0)];
        if free == 1 {
            // a single projective point
            for (c, z) in &self.classes {
                if !*z {
                    for &i in c {
                        beta[i] = int(1);
                    }
                }
            }
            return beta;
        }
        loop {
            let vals: Vec<i64> = (0..free).map(|_| self.draw()).collect();
            let distinct = vals.iter().enumerate().all(|(i, v)| *v != 0 && !vals[..i].contains(v));
            if !distinct {
                continue;
            }
            let mut it = vals.into_iter();
            for (c, z) in &self.classes {
                let v = if *z { 0 } else { it.next().unwrap() };
                for &i in c {
                    beta[i] = int(v);
                }
            }
            return beta;
        }
    }
}

pub fn sample_face_beta(face: &FaceSpec, seed: u64) -> Result<[BigRational; 4], RamificationError> {
    Ok(FaceSampler::new(face, seed)?.next_beta())
}

/// `N_β` with its trivial components λ, λ−1, λ−t removed.
pub fn face_curve(beta: &[BigRational; 4]) -> MultiPoly {
    let mut p = build_curve_poly(&quadruple_from_rationals(beta));
    let l = MultiPoly::var(LAMBDA);
    for f in [l.clone(), &l - &MultiPoly::one(), &l - &MultiPoly::var(T)] {
        p = strip_factor(&p, &f).0;
    }
    primitive_in(&p, LAMBDA)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BelyiReport {
    pub belyi: bool,
    pub discriminant: MultiPoly,
    /// What is left of the discriminant after removing all factors t and t−1.
    pub extra_factor: MultiPoly,
}

/// Whether the projection to t is branched only over 0, 1, ∞.
pub fn belyi_check(p: &MultiPoly) -> Result<BelyiReport, RamificationError> {
    if p.vars().iter().any(|v| v != LAMBDA && v != T) {
        return Err(RamificationError::Parametric(p.to_string()));
    }
    let disc = discriminant(p, LAMBDA)?;
    if disc.is_zero() {
        return Err(RamificationError::ZeroDiscriminant);
    }
    let t = MultiPoly::var(T);
    let mut rest = strip_factor(&disc, &t).0;
    rest = strip_factor(&rest, &(&t - &MultiPoly::one())).0;
    let extra_factor = rest.primitive();
    Ok(BelyiReport { belyi: extra_factor.is_constant(), discriminant: disc, extra_factor })
}

/// Partition triple as printed in a table row, e.g. `1+1+1+3`.
pub fn parse_partitions(s: &[&str; 3]) -> Result<[Partition; 3], crate::exactalg::AlgError> {
    Ok([Partition::parse(s[0])?, Partition::parse(s[1])?, Partition::parse(s[2])?])
}
