//! Exact linear algebra over Q and over rational function fields.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratfunc::RatFunc;

/// The handful of field operations Gaussian elimination needs.
pub trait Field: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one().div(&m[row][col]);
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

/// Affine subspace `base + span(directions)` of F^n in canonical form:
/// directions in reduced row echelon form, base zero at every pivot coordinate.
#[derive(Clone, PartialEq)]
pub struct AffineSubspace<F: Field> {
    base: Vec<F>,
    directions: Vec<Vec<F>>,
}

impl<F: Field> AffineSubspace<F> {
    pub fn new(base: Vec<F>, directions: Vec<Vec<F>>) -> Self {
        let n = base.len();
        let mut dirs = directions;
        for d in &dirs {
            assert_eq!(d.len(), n, "direction length mismatch");
        }
        let pivots = rref(&mut dirs, n);
        let mut base = base;
        for (d, &pc) in dirs.iter().zip(&pivots) {
            let f = base[pc].clone();
            if !f.is_zero() {
                for (b, x) in base.iter_mut().zip(d) {
                    *b = b.sub(&f.mul(x));
                }
            }
        }
        AffineSubspace { base, directions: dirs }
    }

    pub fn point(p: Vec<F>) -> Self {
        Self::new(p, Vec::new())
    }

    /// Affine hull of a nonempty point set.
    pub fn span(points: &[Vec<F>]) -> Self {
        assert!(!points.is_empty(), "affine span of an empty set");
        let p0 = &points[0];
        let dirs = points[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(x, y)| x.sub(y)).collect())
            .collect();
        Self::new(p0.clone(), dirs)
    }

    /// Solutions of `sum_j rows[i][j] x_j + rows[i][n] = 0`; `None` if inconsistent.
    pub fn from_equations(rows: Vec<Vec<F>>, n: usize) -> Option<Self> {
        let mut m = rows;
        for r in &m {
            assert_eq!(r.len(), n + 1, "equation length mismatch");
        }
        let pivots = rref(&mut m, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut base = vec![F::zero(); n];
        for (row, &pc) in m.iter().zip(&pivots) {
            base[pc] = row[n].neg();
        }
        let mut dirs = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); n];
            v[free] = F::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = row[free].neg();
            }
            dirs.push(v);
        }
        Some(Self::new(base, dirs))
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn base(&self) -> &[F] {
        &self.base
    }

    pub fn directions(&self) -> &[Vec<F>] {
        &self.directions
    }

    pub fn contains(&self, p: &[F]) -> bool {
        let diff: Vec<F> = p.iter().zip(&self.base).map(|(x, y)| x.sub(y)).collect();
        let mut m = self.directions.clone();
        m.push(diff);
        let n = self.base.len();
        rref(&mut m, n).len() == self.directions.len()
    }

    pub fn contains_subspace(&self, other: &AffineSubspace<F>) -> bool {
        if !self.contains(&other.base) {
            return false;
        }
        let mut m = self.directions.clone();
        m.extend(other.directions.iter().cloned());
        rref(&mut m, self.base.len()).len() == self.directions.len()
    }

    /// Smallest affine subspace containing both.
    pub fn join(&self, other: &AffineSubspace<F>) -> Self {
        let mut dirs = self.directions.clone();
        dirs.extend(other.directions.iter().cloned());
        dirs.push(other.base.iter().zip(&self.base).map(|(x, y)| x.sub(y)).collect());
        Self::new(self.base.clone(), dirs)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> AffineSubspace<G> {
        AffineSubspace::new(
            self.base.iter().map(&f).collect(),
            self.directions.iter().map(|d| d.iter().map(&f).collect()).collect(),
        )
    }

    /// Point `base + sum params[i] * directions[i]`.
    pub fn at(&self, params: &[F]) -> Vec<F> {
        let mut p = self.base.clone();
        for (d, s) in self.directions.iter().zip(params) {
            for (x, y) in p.iter_mut().zip(d) {
                *x = x.add(&s.mul(y));
            }
        }
        p
    }
}

impl<F: Field> fmt::Display for AffineSubspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[F]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "({})", show(&self.base))?;
        for d in &self.directions {
            write!(f, " + span({})", show(d))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for AffineSubspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineSubspace[{self}]")
    }
}

impl<F: Field> serde::Serialize for AffineSubspace<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let strs = |v: &[F]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("AffineSubspace", 3)?;
        st.serialize_field("dimension", &self.dim())?;
        st.serialize_field("base", &strs(&self.base))?;
        st.serialize_field(
            "directions",
            &self.directions.iter().map(|d| strs(d)).collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::{int, rat};

    fn v(xs: &[(i64, i64)]) -> Vec<BigRational> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn span_of_line_points() {
        let l = AffineSubspace::span(&[v(&[(0, 1), (1, 8), (0, 1), (0, 1)]), v(&[(1, 8); 4])]);
        assert_eq!(l.dim(), 1);
        let expected = AffineSubspace::new(v(&[(0, 1), (1, 8), (0, 1), (0, 1)]), vec![v(&[(1, 1), (0, 1), (1, 1), (1, 1)])]);
        assert_eq!(l, expected);
        assert!(l.contains(&v(&[(3, 1), (1, 8), (3, 1), (3, 1)])));
        assert!(!l.contains(&v(&[(3, 1), (1, 8), (3, 1), (2, 1)])));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = AffineSubspace::new(v(&[(1, 1), (1, 1), (2, 1), (2, 1)]), vec![v(&[(2, 1), (2, 1), (0, 1), (0, 1)]), v(&[(1, 1), (1, 1), (1, 1), (1, 1)])]);
        let b = AffineSubspace::new(v(&[(0, 1); 4]), vec![v(&[(0, 1), (0, 1), (3, 1), (3, 1)]), v(&[(-1, 1), (-1, 1), (0, 1), (0, 1)])]);
        assert_eq!(a, b);
        assert_eq!(a.base(), &v(&[(0, 1); 4])[..]);
    }

    #[test]
    fn equations() {
        // x0 = x1, x2 = x3
        let rows = vec![
            vec![int(1), int(-1), int(0), int(0), int(0)],
            vec![int(0), int(0), int(1), int(-1), int(0)],
        ];
        let s = AffineSubspace::from_equations(rows, 4).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[(1, 8), (1, 8), (1, 18), (1, 18)])));
        let bad = vec![vec![int(0), int(0), int(0), int(0), int(1)]];
        assert!(AffineSubspace::<BigRational>::from_equations(bad, 4).is_none());
    }

    #[test]
    fn join_and_containment() {
        let p = AffineSubspace::point(v(&[(0, 1); 4]));
        let q = AffineSubspace::point(v(&[(1, 1), (1, 1), (0, 1), (0, 1)]));
        let l = p.join(&q);
        assert_eq!(l.dim(), 1);
        assert!(l.contains_subspace(&p));
        assert!(!p.contains_subspace(&l));
    }
}
