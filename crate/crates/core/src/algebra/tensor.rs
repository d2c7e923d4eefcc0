//! The infinite tensor power `⊗^∞A` restricted to finitely supported elements.
//!
//! A basis string assigns an atom of `A` to finitely many positions; every
//! other position carries the unit. Elements are sparse maps from such
//! strings to coefficients. A dense view at level `k` expands each implicit
//! unit into `Σᵢ xᵢ`, giving a vector over the `dᵏ` atomic strings, indexed
//! with position 1 as the most significant digit.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{distinct, AtomicAlgebra, Element, RealFunction};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// Positions (1-based) with an explicit atom (0-based basis index).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(BTreeMap<usize, usize>);

impl MultiIndex {
    /// The empty string: the unit at every position.
    pub fn unit() -> Self {
        Self::default()
    }

    /// Builds an index from `(position, basis index)` pairs.
    pub fn from_pairs(algebra: &AtomicAlgebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(pos, idx) in pairs {
            if pos == 0 {
                return Err(Error::InvalidIndex("positions are 1-based".into()));
            }
            algebra.check_index(idx)?;
            if map.insert(pos, idx).is_some() {
                return Err(Error::InvalidIndex(format!("position {pos} given twice")));
            }
        }
        Ok(Self(map))
    }

    /// The full string `i₁ i₂ … i_k` at positions `1..=k`.
    pub fn from_string(algebra: &AtomicAlgebra, symbols: &[usize]) -> Result<Self> {
        let pairs: Vec<_> = symbols.iter().enumerate().map(|(p, &i)| (p + 1, i)).collect();
        Self::from_pairs(algebra, &pairs)
    }

    pub fn get(&self, pos: usize) -> Option<usize> {
        self.0.get(&pos).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&p, &i)| (p, i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest explicit position, 0 for the unit string.
    pub fn support_level(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Product of two basis strings: `None` when some position carries two
    /// different atoms (`xᵢxⱼ = 0`), otherwise the merged string.
    fn product(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (&p, &j) in &other.0 {
            match out.insert(p, j) {
                Some(i) if i != j => return None,
                _ => {}
            }
        }
        Some(Self(out))
    }

    fn shifted(&self, by: usize) -> Self {
        Self(self.0.iter().map(|(&p, &i)| (p + by, i)).collect())
    }
}

/// A finitely supported element of `⊗^∞A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorRepr<T>", into = "TensorRepr<T>")]
#[serde(bound = "T: Scalar")]
pub struct TensorElement<T> {
    factor_algebra: AtomicAlgebra,
    terms: BTreeMap<MultiIndex, Complex<T>>,
    level: usize,
}

impl<T: Scalar> TensorElement<T> {
    pub fn zero(algebra: &AtomicAlgebra) -> Self {
        Self {
            factor_algebra: algebra.clone(),
            terms: BTreeMap::new(),
            level: 0,
        }
    }

    pub fn scalar(algebra: &AtomicAlgebra, c: Complex<T>) -> Self {
        Self::term(algebra, MultiIndex::unit(), c)
    }

    pub fn identity(algebra: &AtomicAlgebra) -> Self {
        Self::scalar(algebra, Complex::new(T::one(), T::zero()))
    }

    /// `c · (basis string)`; the level is the string's support.
    pub fn term(algebra: &AtomicAlgebra, idx: MultiIndex, c: Complex<T>) -> Self {
        let level = idx.support_level();
        let mut terms = BTreeMap::new();
        terms.insert(idx, c);
        let mut out = Self {
            factor_algebra: algebra.clone(),
            terms,
            level,
        };
        out.canonicalize(T::default_tau_zero());
        out
    }

    /// Sums `(index, coefficient)` pairs. Each index must be valid for `algebra`.
    pub fn from_terms(
        algebra: &AtomicAlgebra,
        terms: impl IntoIterator<Item = (MultiIndex, Complex<T>)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
        let mut level = 0;
        for (idx, c) in terms {
            for (_, i) in idx.iter() {
                algebra.check_index(i)?;
            }
            level = level.max(idx.support_level());
            *map.entry(idx).or_insert_with(|| Complex::new(T::zero(), T::zero())) += c;
        }
        let mut out = Self {
            factor_algebra: algebra.clone(),
            terms: map,
            level,
        };
        out.canonicalize(T::default_tau_zero());
        Ok(out)
    }

    /// Level-1 copy of an element: `Σᵢ aᵢ xᵢ` at position 1.
    pub fn from_element(x: &Element<T>) -> Self {
        Self::embed(x, 1)
    }

    /// `x̂_k = 1 ⊗ ⋯ ⊗ 1 ⊗ x ⊗ 1 ⊗ ⋯` with `x` at position `k ≥ 1`.
    pub fn embed(x: &Element<T>, k: usize) -> Self {
        assert!(k >= 1, "positions are 1-based");
        let algebra = x.algebra();
        let mut terms = BTreeMap::new();
        for (i, &c) in x.coeffs().iter().enumerate() {
            let mut m = BTreeMap::new();
            m.insert(k, i);
            terms.insert(MultiIndex(m), c);
        }
        let mut out = Self {
            factor_algebra: algebra.clone(),
            terms,
            level: k,
        };
        out.canonicalize(T::default_tau_zero());
        out
    }

    /// Projection onto a single atomic string `i₁ ⋯ i_k`.
    pub fn string_projection(algebra: &AtomicAlgebra, symbols: &[usize]) -> Result<Self> {
        let idx = MultiIndex::from_string(algebra, symbols)?;
        let mut out = Self::term(algebra, idx, Complex::new(T::one(), T::zero()));
        out.level = symbols.len();
        Ok(out)
    }

    /// Moves a level-≤1 element to position `k`.
    pub fn embed_at(&self, k: usize) -> Result<Self> {
        if self.level > 1 {
            return Err(Error::InvalidArgument(format!(
                "embed_at needs a level-1 operand, got level {}",
                self.level
            )));
        }
        if k == 0 {
            return Err(Error::InvalidIndex("positions are 1-based".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(idx, &c)| {
                let m = idx.iter().map(|(_, i)| (k, i)).collect();
                (MultiIndex(m), c)
            })
            .collect();
        Ok(Self {
            factor_algebra: self.factor_algebra.clone(),
            terms,
            level: k,
        })
    }

    #[inline]
    pub fn factor_algebra(&self) -> &AtomicAlgebra {
        &self.factor_algebra
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.level
    }

    /// Largest explicit position among stored terms.
    pub fn support_level(&self) -> usize {
        self.terms.keys().map(MultiIndex::support_level).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same element viewed at a higher level.
    pub fn with_level(mut self, k: usize) -> Result<Self> {
        let support = self.support_level();
        if k < support {
            return Err(Error::LevelTooSmall {
                requested: k,
                support,
            });
        }
        self.level = k;
        Ok(self)
    }

    /// Drops coefficients with modulus below `zero`.
    pub fn canonicalize(&mut self, zero: T) {
        self.terms.retain(|_, c| c.norm() >= zero);
    }

    fn combine(&self, other: &Self, sign: T) -> Result<Self> {
        self.factor_algebra.check_same(&other.factor_algebra)?;
        let mut terms = self.terms.clone();
        for (idx, &c) in &other.terms {
            *terms
                .entry(idx.clone())
                .or_insert_with(|| Complex::new(T::zero(), T::zero())) += c * sign;
        }
        let mut out = Self {
            factor_algebra: self.factor_algebra.clone(),
            terms,
            level: self.level.max(other.level),
        };
        out.canonicalize(T::default_tau_zero());
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, T::one())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -T::one())
    }

    /// Factorwise product with `xᵢ·1 = xᵢ` and `xᵢxⱼ = δᵢⱼxᵢ`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.factor_algebra.check_same(&other.factor_algebra)?;
        let mut terms: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
        for (ia, &ca) in &self.terms {
            for (ib, &cb) in &other.terms {
                if let Some(idx) = ia.product(ib) {
                    *terms
                        .entry(idx)
                        .or_insert_with(|| Complex::new(T::zero(), T::zero())) += ca * cb;
                }
            }
        }
        let mut out = Self {
            factor_algebra: self.factor_algebra.clone(),
            terms,
            level: self.level.max(other.level),
        };
        out.canonicalize(T::default_tau_zero());
        Ok(out)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let mut out = Self {
            factor_algebra: self.factor_algebra.clone(),
            terms: self.terms.iter().map(|(i, &a)| (i.clone(), a * c)).collect(),
            level: self.level,
        };
        out.canonicalize(T::default_tau_zero());
        out
    }

    pub fn star(&self) -> Self {
        Self {
            factor_algebra: self.factor_algebra.clone(),
            terms: self.terms.iter().map(|(i, a)| (i.clone(), a.conj())).collect(),
            level: self.level,
        }
    }

    /// `a ⊗ b`: `b`'s positions are shifted past `a`'s level.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        self.factor_algebra.check_same(&other.factor_algebra)?;
        let shift = self.level;
        let mut terms: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
        for (ia, &ca) in &self.terms {
            for (ib, &cb) in &other.terms {
                let mut m = ia.0.clone();
                m.extend(ib.shifted(shift).0);
                *terms
                    .entry(MultiIndex(m))
                    .or_insert_with(|| Complex::new(T::zero(), T::zero())) += ca * cb;
            }
        }
        let mut out = Self {
            factor_algebra: self.factor_algebra.clone(),
            terms,
            level: self.level + other.level,
        };
        out.canonicalize(T::default_tau_zero());
        Ok(out)
    }

    /// Dense coefficient vector over the `dᵏ` atomic strings of length `k`.
    pub fn truncate_to_level(&self, k: usize) -> Result<Vec<Complex<T>>> {
        let support = self.support_level();
        if k < support {
            return Err(Error::LevelTooSmall {
                requested: k,
                support,
            });
        }
        let d = self.factor_algebra.dim();
        let total = d
            .checked_pow(k as u32)
            .ok_or_else(|| Error::InvalidArgument(format!("{d}^{k} strings overflow")))?;
        let mut dense = vec![Complex::new(T::zero(), T::zero()); total];
        // place value of position p (1-based) is d^(k-p)
        let place: Vec<usize> = (1..=k).map(|p| d.pow((k - p) as u32)).collect();
        for (idx, &c) in &self.terms {
            let mut base = 0usize;
            let mut free = Vec::with_capacity(k);
            for p in 1..=k {
                match idx.get(p) {
                    Some(i) => base += i * place[p - 1],
                    None => free.push(place[p - 1]),
                }
            }
            // every assignment of atoms to the implicit-unit positions
            let combos = d.pow(free.len() as u32);
            for mut m in 0..combos {
                let mut offset = 0;
                for &pv in free.iter().rev() {
                    offset += (m % d) * pv;
                    m /= d;
                }
                dense[base + offset] += c;
            }
        }
        Ok(dense)
    }

    /// Dense expansion at the element's own level.
    pub fn expand(&self) -> Vec<Complex<T>> {
        self.truncate_to_level(self.level)
            .expect("level never below support")
    }

    /// Sparse element with one full-length term per nonzero dense entry.
    pub fn from_dense(algebra: &AtomicAlgebra, k: usize, dense: &[Complex<T>]) -> Result<Self> {
        let d = algebra.dim();
        if d.checked_pow(k as u32) != Some(dense.len()) {
            return Err(Error::AlgebraMismatch(format!(
                "{} entries for {d}^{k} strings",
                dense.len()
            )));
        }
        let mut terms = BTreeMap::new();
        for (s, &c) in dense.iter().enumerate() {
            if c.norm() >= T::default_tau_zero() {
                terms.insert(MultiIndex(string_of(s, d, k)), c);
            }
        }
        Ok(Self {
            factor_algebra: algebra.clone(),
            terms,
            level: k,
        })
    }

    /// Sup norm over the atomic expansion.
    pub fn norm(&self) -> T {
        self.expand().iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// Trace at the element's level: the sum of the atomic expansion.
    pub fn trace(&self) -> Complex<T> {
        let d = T::from_usize_lossy(self.factor_algebra.dim());
        self.terms.iter().fold(Complex::new(T::zero(), T::zero()), |acc, (idx, &c)| {
            let free = (self.level - idx.len()) as i32;
            acc + c * d.powi(free)
        })
    }

    /// Distinct coefficients of the atomic expansion at the element's level.
    pub fn spectrum(&self, tol: &Tolerance<T>) -> Vec<Complex<T>> {
        distinct(self.expand(), tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        if self.factor_algebra.check_same(&other.factor_algebra).is_err() {
            return false;
        }
        let k = self.level.max(other.level);
        let a = self.truncate_to_level(k).expect("k above support");
        let b = other.truncate_to_level(k).expect("k above support");
        a.iter().zip(&b).all(|(&x, &y)| tol.approx_eq_c(x, y))
    }

    pub fn is_self_adjoint(&self, tol: &Tolerance<T>) -> bool {
        self.expand().iter().all(|c| c.im.abs() <= tol.eq)
    }

    pub fn is_projection(&self, tol: &Tolerance<T>) -> bool {
        self.expand()
            .iter()
            .all(|&c| c.im.abs() <= tol.eq && tol.approx_eq_c(c * c, c))
    }

    /// Real functional calculus over the full atomic expansion.
    pub fn apply(&self, f: &RealFunction<T>, domain_check: bool, tol: &Tolerance<T>) -> Result<Self> {
        let dense = self.expand();
        let mut out = Vec::with_capacity(dense.len());
        for c in dense {
            if c.im.abs() > tol.eq {
                return Err(Error::NotSelfAdjoint);
            }
            out.push(Complex::new(f.eval_checked(c.re, domain_check)?, T::zero()));
        }
        Self::from_dense(&self.factor_algebra, self.level, &out)
    }

    /// Complex functional calculus over the full atomic expansion.
    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let dense: Vec<_> = self.expand().into_iter().map(f).collect();
        Self::from_dense(&self.factor_algebra, self.level, &dense).expect("same shape")
    }
}

/// Digits of string number `s` at level `k`, as a position → atom map.
pub(crate) fn string_of(mut s: usize, d: usize, k: usize) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for p in (1..=k).rev() {
        m.insert(p, s % d);
        s /= d;
    }
    m
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr<T> {
    idx: BTreeMap<String, usize>,
    c: [T; 2],
}

/// JSON shape `{"dim": d, "level": k, "terms": [{"idx": {"1": 0}, "c": [re, im]}]}`.
/// Positions are 1-based strings, basis indices 0-based.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorRepr<T> {
    dim: usize,
    #[serde(default)]
    level: Option<usize>,
    terms: Vec<TermRepr<T>>,
}

impl<T: Scalar> TryFrom<TensorRepr<T>> for TensorElement<T> {
    type Error = Error;

    fn try_from(r: TensorRepr<T>) -> Result<Self> {
        let algebra = AtomicAlgebra::new(r.dim)?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for t in r.terms {
            let mut pairs = Vec::with_capacity(t.idx.len());
            for (pos, i) in t.idx {
                let pos: usize = pos
                    .parse()
                    .map_err(|_| Error::InvalidIndex(format!("position {pos:?}")))?;
                pairs.push((pos, i));
            }
            terms.push((
                MultiIndex::from_pairs(&algebra, &pairs)?,
                Complex::new(t.c[0], t.c[1]),
            ));
        }
        let e = Self::from_terms(&algebra, terms)?;
        match r.level {
            Some(k) => e.with_level(k),
            None => Ok(e),
        }
    }
}

impl<T: Scalar> From<TensorElement<T>> for TensorRepr<T> {
    fn from(e: TensorElement<T>) -> Self {
        Self {
            dim: e.factor_algebra.dim(),
            level: Some(e.level),
            terms: e
                .terms
                .iter()
                .map(|(idx, c)| TermRepr {
                    idx: idx.iter().map(|(p, i)| (p.to_string(), i)).collect(),
                    c: [c.re, c.im],
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex<f64> {
        Complex::new(1.0, 0.0)
    }

    fn alg2() -> AtomicAlgebra {
        AtomicAlgebra::new(2).unwrap()
    }

    fn re(v: &[Complex<f64>]) -> Vec<f64> {
        v.iter().map(|c| c.re).collect()
    }

    #[test]
    fn orthogonal_strings_multiply_to_zero() {
        let a = alg2();
        let s1 = TensorElement::<f64>::string_projection(&a, &[0, 1]).unwrap();
        let s2 = TensorElement::string_projection(&a, &[0, 0]).unwrap();
        assert!(s1.try_mul(&s2).unwrap().is_zero());
        assert_eq!(s1.try_mul(&s1).unwrap(), s1);
    }

    #[test]
    fn tensor_product_of_atoms() {
        let a = alg2();
        let x1 = TensorElement::from_element(&Element::atom(&a, 0).unwrap());
        let x2 = TensorElement::from_element(&Element::atom(&a, 1).unwrap());
        let p = x1.tensor_product(&x2).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (idx, c) = p.terms().next().unwrap();
        assert_eq!(idx.iter().collect::<Vec<_>>(), vec![(1, 0), (2, 1)]);
        assert_eq!(*c, one());
        assert_eq!(p.level(), 2);
    }

    #[test]
    fn identity_absorption() {
        let a = AtomicAlgebra::new(3).unwrap();
        let x = Element::from_real_in(&a, &[1.0, 2.0, -1.0]).unwrap();
        let y = Element::from_real_in(&a, &[0.5, 0.0, 3.0]).unwrap();
        let tx = TensorElement::from_element(&x);
        let ty = TensorElement::from_element(&y);
        let id = TensorElement::identity(&a);
        let lhs = tx
            .tensor_product(&id.clone().with_level(1).unwrap())
            .unwrap()
            .try_mul(&ty.embed_at(2).unwrap())
            .unwrap();
        let rhs = tx.tensor_product(&ty).unwrap();
        assert!(lhs.approx_eq(&rhs, &Tolerance::default()));
    }

    #[test]
    fn identity_tail_expansion() {
        let a = alg2();
        let t = TensorElement::term(
            &a,
            MultiIndex::from_pairs(&a, &[(1, 0)]).unwrap(),
            Complex::new(5.0, 0.0),
        )
        .with_level(2)
        .unwrap();
        assert_eq!(re(&t.expand()), vec![5.0, 5.0, 0.0, 0.0]);
        assert_eq!(t.norm(), 5.0);
        let sp = t.spectrum(&Tolerance::default());
        assert_eq!(re(&sp), vec![5.0, 0.0]);
    }

    #[test]
    fn embedded_atom_dense_pattern() {
        let a = alg2();
        let x1 = Element::<f64>::atom(&a, 0).unwrap();
        let e = TensorElement::embed(&x1, 3);
        let dense = e.truncate_to_level(3).unwrap();
        // brute force over all 8 strings: 1 iff third symbol is atom 0
        for s in 0..8usize {
            let third = s % 2;
            let want = if third == 0 { 1.0 } else { 0.0 };
            assert_eq!(dense[s].re, want, "string {s:03b}");
        }
        assert!(matches!(
            e.truncate_to_level(2),
            Err(Error::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn index_construction_errors() {
        let a = alg2();
        assert!(MultiIndex::from_pairs(&a, &[(1, 0), (1, 1)]).is_err());
        assert!(MultiIndex::from_pairs(&a, &[(0, 0)]).is_err());
        assert!(MultiIndex::from_pairs(&a, &[(1, 2)]).is_err());
    }

    #[test]
    fn scalar_spectrum_and_algebra_mismatch() {
        let a = alg2();
        let s = TensorElement::scalar(&a, Complex::new(2.5, 0.0));
        assert_eq!(s.level(), 0);
        assert_eq!(re(&s.spectrum(&Tolerance::default())), vec![2.5]);
        let b = AtomicAlgebra::new(3).unwrap();
        assert!(s.try_add(&TensorElement::identity(&b)).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = alg2();
        let s = TensorElement::<f64>::string_projection(&a, &[1, 0]).unwrap();
        assert!(s.try_sub(&s).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let a = alg2();
        let t = TensorElement::from_terms(
            &a,
            [
                (
                    MultiIndex::from_pairs(&a, &[(1, 0), (3, 1)]).unwrap(),
                    Complex::new(1.5, -1.0),
                ),
                (MultiIndex::unit(), Complex::new(2.0, 0.0)),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains(r#""idx":{"1":0,"3":1}"#));
        let back: TensorElement<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
