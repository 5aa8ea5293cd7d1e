//! The S4 symmetry of the curve family: birational maps of (λ, t), the permutation action on
//! quadruples, stabilizers and orbits.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use crate::exactalg::vars::{LAMBDA, T};
use crate::exactalg::{
    mobius_substitute, primitive_in, AlgError, MobiusMap, MultiPoly, RatFunc,
};
use crate::exactalg::ratfunc::rf;

pub type Perm = [usize; 4];

/// Coordinate permutations of the generators: x¹ swaps slots 1,2; x² swaps 0,1; x³ swaps 1,3.
pub const GENERATOR_PERMS: [Perm; 3] = [[0, 2, 1, 3], [1, 0, 2, 3], [0, 3, 2, 1]];

const IDENTITY: Perm = [0, 1, 2, 3];

/// A group element with its canonical (shortest, then lexicographically first) word.
/// Words read left to right: `[1, 3]` applies x¹ first, then x³.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct S4Element {
    pub word: Vec<u8>,
    pub perm: Perm,
}

impl fmt::Debug for S4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for S4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.word.iter().map(|g| format!("x{g}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Permutation of "g then h".
fn then(g: &Perm, h: &Perm) -> Perm {
    [0, 1, 2, 3].map(|i| g[h[i]])
}

fn invert(p: &Perm) -> Perm {
    let mut out = [0; 4];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

struct Group {
    elements: Vec<S4Element>,
    by_perm: HashMap<Perm, usize>,
}

fn group() -> &'static Group {
    static G: OnceLock<Group> = OnceLock::new();
    G.get_or_init(|| {
        let mut elements = vec![S4Element { word: Vec::new(), perm: IDENTITY }];
        let mut by_perm = HashMap::from([(IDENTITY, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, gp) in GENERATOR_PERMS.iter().enumerate() {
                let perm = then(&elements[i].perm, gp);
                if by_perm.contains_key(&perm) {
                    continue;
                }
                let mut word = elements[i].word.clone();
                word.push(k as u8 + 1);
                by_perm.insert(perm, elements.len());
                queue.push_back(elements.len());
                elements.push(S4Element { word, perm });
            }
        }
        Group { elements, by_perm }
    })
}

impl S4Element {
    pub fn identity() -> Self {
        Self::from_perm(IDENTITY)
    }

    pub fn generator(k: u8) -> Self {
        assert!((1..=3).contains(&k), "generators are x1, x2, x3");
        Self::from_perm(GENERATOR_PERMS[k as usize - 1])
    }

    pub fn from_perm(p: Perm) -> Self {
        let g = group();
        g.elements[g.by_perm[&p]].clone()
    }

    /// Canonical element for an arbitrary word.
    pub fn from_word(word: &[u8]) -> Self {
        let mut p = IDENTITY;
        for &k in word {
            p = then(&p, &GENERATOR_PERMS[k as usize - 1]);
        }
        Self::from_perm(p)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &S4Element) -> Self {
        Self::from_perm(then(&self.perm, &other.perm))
    }

    pub fn inverse(&self) -> Self {
        Self::from_perm(invert(&self.perm))
    }

    pub fn order(&self) -> usize {
        let mut p = self.perm;
        let mut k = 1;
        while p != IDENTITY {
            p = then(&p, &self.perm);
            k += 1;
        }
        k
    }

    pub fn is_identity(&self) -> bool {
        self.perm == IDENTITY
    }
}

/// All 24 elements in canonical (BFS) order.
pub fn all_elements() -> Vec<S4Element> {
    group().elements.clone()
}

/// The coordinate action `result[i] = v[perm[i]]`, for β and α quadruples alike.
pub fn quadruple_action<T: Clone>(g: &S4Element, v: &[T; 4]) -> [T; 4] {
    [0, 1, 2, 3].map(|i| v[g.perm[i]].clone())
}

/// The Möbius maps of a generator: (λ-map with coefficients in t, t-map).
pub fn generator_maps(k: u8) -> (MobiusMap, MobiusMap) {
    let t = RatFunc::var(T);
    match k {
        // λ -> 1 - λ, t -> 1 - t
        1 => (
            MobiusMap { a: rf(-1, 1), b: rf(1, 1), c: rf(0, 1), d: rf(1, 1) },
            MobiusMap { a: rf(-1, 1), b: rf(1, 1), c: rf(0, 1), d: rf(1, 1) },
        ),
        // λ -> 1/λ, t -> 1/t
        2 => (
            MobiusMap { a: rf(0, 1), b: rf(1, 1), c: rf(1, 1), d: rf(0, 1) },
            MobiusMap { a: rf(0, 1), b: rf(1, 1), c: rf(1, 1), d: rf(0, 1) },
        ),
        // λ -> (t - λ)/(t - 1), t -> t/(t - 1)
        3 => (
            MobiusMap { a: rf(-1, 1), b: t.clone(), c: rf(0, 1), d: &t - &rf(1, 1) },
            MobiusMap { a: rf(1, 1), b: rf(0, 1), c: rf(1, 1), d: rf(-1, 1) },
        ),
        _ => panic!("generators are x1, x2, x3"),
    }
}

/// `P ∘ x` for one generator: both coordinates substituted simultaneously.
fn apply_generator(k: u8, p: &MultiPoly) -> Result<MultiPoly, AlgError> {
    let (lmap, tmap) = generator_maps(k);
    // the λ-map's coefficients are in the original t, so substitute t first
    let q = mobius_substitute(p, T, &tmap)?;
    let q = mobius_substitute(&q, LAMBDA, &lmap)?;
    Ok(normalize_curve(&q))
}

/// Canonical representative of a curve up to units: λ-content removed, primitive.
pub fn normalize_curve(p: &MultiPoly) -> MultiPoly {
    if p.deg(LAMBDA) == 0 {
        return p.primitive();
    }
    primitive_in(p, LAMBDA)
}

/// Applies the generator substitutions of the word from left to right.
pub fn transform_curve(g: &S4Element, p: &MultiPoly) -> Result<MultiPoly, AlgError> {
    let mut q = normalize_curve(p);
    for &k in &g.word {
        q = apply_generator(k, &q)?;
    }
    Ok(q)
}

/// Where the base point `t0` goes under the t-map of `g`'s word (∞ encoded as `None`).
pub fn base_point_image(g: &S4Element, t0: Option<BigRational>) -> Option<BigRational> {
    let mut cur = t0;
    for &k in &g.word {
        let (_, tmap) = generator_maps(k);
        let x = cur.map(RatFunc::constant);
        cur = match x {
            Some(x) => tmap.apply(&x).map(|r| r.constant_value().expect("constant")),
            None => tmap.apply_infinity().map(|r| r.constant_value().expect("constant")),
        };
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    pub elements: Vec<S4Element>,
    pub label: String,
}

impl Subgroup {
    pub fn from_elements(mut elements: Vec<S4Element>) -> Self {
        elements.sort_by_key(|e| group().by_perm[&e.perm]);
        elements.dedup();
        let label = label_of(&elements);
        Subgroup { elements, label }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Closure under composition and inverses.
    pub fn is_subgroup(&self) -> bool {
        let set: BTreeSet<Perm> = self.elements.iter().map(|e| e.perm).collect();
        set.contains(&IDENTITY)
            && self.elements.iter().all(|a| {
                set.contains(&invert(&a.perm))
                    && self.elements.iter().all(|b| set.contains(&then(&a.perm, &b.perm)))
            })
    }
}

/// Isomorphism label from the order and the element-order census.
fn label_of(elements: &[S4Element]) -> String {
    let n = elements.len();
    let has_order4 = elements.iter().any(|e| e.order() == 4);
    match n {
        1 => "1",
        2 => "S2",
        3 => "Z3",
        4 if has_order4 => "Z4",
        4 => "S2xS2",
        6 => "S3",
        8 => "D4",
        12 => "A4",
        24 => "S4",
        _ => "?",
    }
    .to_string()
}

pub fn stabilizer_of_curve(p: &MultiPoly) -> Result<Subgroup, AlgError> {
    let base = normalize_curve(p);
    let mut keep = Vec::new();
    for g in all_elements() {
        if transform_curve(&g, &base)? == base {
            keep.push(g);
        }
    }
    Ok(Subgroup::from_elements(keep))
}

pub fn stabilizer_of_alpha(alpha: &[BigRational; 4]) -> Subgroup {
    Subgroup::from_elements(
        all_elements()
            .into_iter()
            .filter(|g| &quadruple_action(g, alpha) == alpha)
            .collect(),
    )
}

/// Elements mapping the set of quadruples onto itself.
pub fn set_stabilizer(points: &[[BigRational; 4]]) -> Subgroup {
    let set: BTreeSet<&[BigRational; 4]> = points.iter().collect();
    Subgroup::from_elements(
        all_elements()
            .into_iter()
            .filter(|g| {
                let image: Vec<[BigRational; 4]> = points.iter().map(|p| quadruple_action(g, p)).collect();
                image.iter().all(|x| set.contains(x))
            })
            .collect(),
    )
}

/// The S4-orbit of a curve: one entry per coset representative, in canonical element order.
pub fn curve_orbit(p: &MultiPoly) -> Result<Vec<(S4Element, MultiPoly)>, AlgError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in all_elements() {
        let q = transform_curve(&g, p)?;
        if seen.insert(q.to_string()) {
            out.push((g, q));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, rat};
    use crate::pvi::{build_curve_poly, symbolic_beta};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn twenty_four_elements_and_involutions() {
        let els = all_elements();
        assert_eq!(els.len(), 24);
        for k in 1..=3 {
            let g = S4Element::generator(k);
            assert!(g.then(&g).is_identity());
        }
        assert_eq!(S4Element::from_word(&[1, 1, 3, 3]), S4Element::identity());
    }

    #[test]
    fn quadruple_examples() {
        let v = [1, 2, 3, 4];
        assert_eq!(quadruple_action(&S4Element::generator(1), &v), [1, 3, 2, 4]);
        assert_eq!(quadruple_action(&S4Element::generator(2), &v), [2, 1, 3, 4]);
        assert_eq!(quadruple_action(&S4Element::identity(), &v), v);
    }

    #[test]
    fn word_action_composes_left_to_right() {
        let v = ["b0", "b1", "b2", "b3"];
        let g = S4Element::from_word(&[1, 2]);
        let step = quadruple_action(&S4Element::generator(2), &quadruple_action(&S4Element::generator(1), &v));
        assert_eq!(quadruple_action(&g, &v), step);
    }

    #[test]
    fn generator_images_of_curves() {
        let x1 = S4Element::generator(1);
        assert!(transform_curve(&x1, &p("lambda^2 - t")).unwrap().equal_up_to_unit(&p("lambda^2 - 2*lambda + t")));
        let x2 = S4Element::generator(2);
        let image = transform_curve(&x2, &p("2*lambda^3 - 3*lambda^2 + t")).unwrap();
        assert!(image.equal_up_to_unit(&p("lambda^3 - 3*t*lambda + 2*t")));
        assert!(transform_curve(&x2, &p("lambda^2 - t")).unwrap().equal_up_to_unit(&p("lambda^2 - t")));
    }

    #[test]
    fn equivariance_for_every_element() {
        let beta = symbolic_beta();
        let n = build_curve_poly(&beta);
        for g in all_elements() {
            let lhs = transform_curve(&g, &n).unwrap();
            let rhs = normalize_curve(&build_curve_poly(&quadruple_action(&g, &beta)));
            assert_eq!(lhs, rhs, "{g}");
        }
    }

    #[test]
    fn stabilizers_of_examples() {
        assert_eq!(stabilizer_of_curve(&p("lambda^2 - t")).unwrap().label, "D4");
        let s3 = p("lambda^4 - 6*lambda^2*t + 4*lambda*t + 4*lambda*t^2 - 3*t^2");
        assert_eq!(stabilizer_of_curve(&s3).unwrap().label, "S3");
        let s2 = p("-2*lambda^3 + 3*t*lambda^2 + 3*lambda^2 - 6*t*lambda + t^2 + t");
        assert_eq!(stabilizer_of_curve(&s2).unwrap().label, "S2");
        let zero = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(stabilizer_of_alpha(&zero).label, "S4");
        let v = [rat(1, 8), rat(1, 8), rat(1, 18), rat(1, 18)];
        assert_eq!(stabilizer_of_alpha(&v).label, "S2xS2");
        let w = [rat(1, 2), rat(1, 18), rat(1, 8), rat(1, 8)];
        assert_eq!(stabilizer_of_alpha(&w).label, "S2");
    }

    #[test]
    fn stabilizers_are_subgroups() {
        for curve in ["lambda^2 - t", "lambda^3 - 3*t*lambda + 2*t", "lambda^4 - 2*t*lambda^3 + 2*t^2*lambda - t^3"] {
            assert!(stabilizer_of_curve(&p(curve)).unwrap().is_subgroup());
        }
    }

    #[test]
    fn base_points_are_permuted() {
        let x3 = S4Element::generator(3);
        assert_eq!(base_point_image(&x3, Some(rat(0, 1))), Some(rat(0, 1)));
        assert_eq!(base_point_image(&x3, Some(rat(1, 1))), None);
        assert_eq!(base_point_image(&x3, None), Some(rat(1, 1)));
    }
}
