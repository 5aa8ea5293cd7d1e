//! Sparse multivariate polynomials over Q.
//!
//! Exponent vectors are dense and indexed by the polynomial's own variable list, which is
//! always sorted by [`compare_vars`] and never contains a variable that does not occur.
//! Keys compare lexicographically, so the last entry of the map is the lex leading term
//! with the first variable most significant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vars::{compare_vars, merge_vars};
use super::AlgError;

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigRational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over an arbitrary variable list.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut acc = MultiPoly::zero();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            let mut m = MultiPoly::constant(c);
            for (v, e) in vars.iter().zip(exps) {
                if e > 0 {
                    m = &m * &MultiPoly::var(v).pow(e);
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_one()
    }

    /// Value of a constant polynomial; zero for non-constants is not meaningful, so callers check.
    pub fn constant_value(&self) -> BigRational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.var_index(name).is_some()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Degree in `name`; `None` for the zero polynomial.
    pub fn degree(&self, name: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    /// Degree in `name`, treating the zero polynomial as degree 0.
    pub fn deg(&self, name: &str) -> u32 {
        self.degree(name).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Leading term in lex order (first variable most significant).
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Re-indexes into a superset variable list.
    fn lift(&self, target: &[String]) -> BTreeMap<Monomial, BigRational> {
        if self.vars.as_slice() == target {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v).expect("target must contain all vars"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, &k) in map.iter().enumerate() {
                    e[k] = m[i];
                }
                (e, c.clone())
            })
            .collect()
    }

    /// Drops variables that no longer occur.
    fn normalized(vars: Vec<String>, terms: BTreeMap<Monomial, BigRational>) -> Self {
        let n = vars.len();
        let mut used = vec![false; n];
        for m in terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return MultiPoly { vars, terms };
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let new_vars = keep.iter().map(|&i| vars[i].clone()).collect();
        let new_terms = terms
            .into_iter()
            .map(|(m, c)| (keep.iter().map(|&i| m[i]).collect(), c))
            .collect();
        MultiPoly { vars: new_vars, terms: new_terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.var_index(name) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            terms.insert(e, c * BigInt::from(m[i]));
        }
        Self::normalized(self.vars.clone(), terms)
    }

    /// Coefficients in `name`, index = power. Empty for the zero polynomial.
    pub fn coeffs_in(&self, name: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(name) else {
            return if self.is_zero() { Vec::new() } else { vec![self.clone()] };
        };
        let d = self.deg(name) as usize;
        let mut parts: Vec<BTreeMap<Monomial, BigRational>> = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e[i] as usize;
            e[i] = 0;
            parts[k].insert(e, c.clone());
        }
        parts
            .into_iter()
            .map(|t| Self::normalized(self.vars.clone(), t))
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs(name: &str, coeffs: &[MultiPoly]) -> Self {
        let x = MultiPoly::var(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn leading_coeff_in(&self, name: &str) -> MultiPoly {
        self.coeffs_in(name).pop().unwrap_or_default()
    }

    /// Coefficient of `name^k`.
    pub fn coeff_of(&self, name: &str, k: u32) -> MultiPoly {
        self.coeffs_in(name)
            .into_iter()
            .nth(k as usize)
            .unwrap_or_default()
    }

    /// Lowest power of `name` occurring (0 for the zero polynomial).
    pub fn low_degree(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    /// Splits into coefficients of monomials in `names`, keyed by the exponent tuple over `names`.
    pub fn collect_in(&self, names: &[&str]) -> BTreeMap<Vec<u32>, MultiPoly> {
        let idx: Vec<Option<usize>> = names.iter().map(|n| self.var_index(n)).collect();
        let mut parts: BTreeMap<Vec<u32>, BTreeMap<Monomial, BigRational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = idx.iter().map(|i| i.map_or(0, |i| m[i])).collect();
            let mut e = m.clone();
            for i in idx.iter().flatten() {
                e[*i] = 0;
            }
            parts.entry(key).or_default().insert(e, c.clone());
        }
        parts
            .into_iter()
            .map(|(k, t)| (k, Self::normalized(self.vars.clone(), t)))
            .collect()
    }

    /// Substitutes a rational constant for a variable.
    pub fn eval(&self, name: &str, value: &BigRational) -> Self {
        let coeffs = self.coeffs_in(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &acc.scale(value) + c;
        }
        acc
    }

    /// Evaluates every variable; missing variables are an error.
    pub fn eval_all(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, AlgError> {
        let mut p = self.clone();
        for v in self.vars.clone() {
            let x = point
                .get(&v)
                .ok_or_else(|| AlgError::UnboundVariable(v.clone()))?;
            p = p.eval(&v, x);
        }
        Ok(p.constant_value())
    }

    /// Polynomial substitution `name := q`.
    pub fn substitute(&self, name: &str, q: &MultiPoly) -> Self {
        if !self.has_var(name) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Substitutes `name := num/den` and clears denominators with `den^d`, `d = deg_name(self)`.
    /// Returns the numerator together with `d`.
    pub fn substitute_ratio(
        &self,
        name: &str,
        num: &MultiPoly,
        den: &MultiPoly,
    ) -> Result<(MultiPoly, u32), AlgError> {
        if den.is_zero() {
            return Err(AlgError::DegenerateSubstitution);
        }
        let d = self.deg(name);
        let coeffs = self.coeffs_in(name);
        if coeffs.is_empty() {
            return Ok((MultiPoly::zero(), 0));
        }
        // sum c_k num^k den^(d-k), Horner style
        let mut num_pows = vec![MultiPoly::one()];
        for k in 1..=d as usize {
            num_pows.push(&num_pows[k - 1] * num);
        }
        let mut den_pows = vec![MultiPoly::one()];
        for k in 1..=d as usize {
            den_pows.push(&den_pows[k - 1] * den);
        }
        let mut acc = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(c * &num_pows[k]) * &den_pows[d as usize - k]);
        }
        Ok((acc, d))
    }

    /// Renames variables; the result is re-sorted into canonical order.
    pub fn rename(&self, from: &str, to: &str) -> Self {
        if !self.has_var(from) {
            return self.clone();
        }
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (v, &e) in self.vars.iter().zip(m) {
                if e > 0 {
                    let name = if v == from { to } else { v.as_str() };
                    t = &t * &MultiPoly::var(name).pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Rational content: positive number c with self/c having coprime integer coefficients
    /// and a positive leading coefficient up to sign. Sign of the returned value follows
    /// the leading coefficient, so `self / content()` has positive leading coefficient.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut c = BigRational::new(g, l);
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        c
    }

    /// Integer coefficients, gcd 1, positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Equality after normalizing both sides to primitive form.
    pub fn equal_up_to_unit(&self, other: &MultiPoly) -> bool {
        self.primitive() == other.primitive()
    }

    /// If `other = c * self` for a rational constant c, returns c.
    pub fn unit_ratio(&self, other: &MultiPoly) -> Option<BigRational> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let c = other.leading_coefficient() / self.leading_coefficient();
        if &self.scale(&c) == other {
            Some(c)
        } else {
            None
        }
    }

    fn binary(&self, other: &MultiPoly, negate: bool) -> Self {
        let vars = if self.vars == other.vars {
            self.vars.clone()
        } else {
            merge_vars(&self.vars, &other.vars)
        };
        let mut terms = self.lift(&vars);
        for (m, c) in other.lift(&vars) {
            let c = if negate { -c } else { c };
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Self::normalized(vars, terms)
    }

    fn product(&self, other: &MultiPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let vars = if self.vars == other.vars {
            self.vars.clone()
        } else {
            merge_vars(&self.vars, &other.vars)
        };
        let a = self.lift(&vars);
        let b = other.lift(&vars);
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let p = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += p;
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::normalized(vars, terms)
    }
}

impl From<BigRational> for MultiPoly {
    fn from(c: BigRational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::from_int(n)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        self.binary(other, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        self.binary(other, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        self.product(other)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: MultiPoly) -> MultiPoly {
        self.binary(&other, false)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: MultiPoly) -> MultiPoly {
        self.binary(&other, true)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: MultiPoly) -> MultiPoly {
        self.product(&other)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form: terms from the lex-leading one down, `c * v1^e1*v2` joined by ` + `.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(m)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_coeff(c))?;
            } else {
                write!(f, "{} * {}", fmt_coeff(c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but deterministic order, used to sort factor lists.
impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let vo = self.vars.len().cmp(&other.vars.len()).then_with(|| {
            for (x, y) in self.vars.iter().zip(&other.vars) {
                let o = compare_vars(x, y);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        });
        vo.then_with(|| self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse_poly(&s).map_err(serde::de::Error::custom)
    }
}
