//! Finite-dimensional abelian C*-algebras presented in their atomic basis.
//!
//! Every such algebra of dimension `d` is `ℂᵈ` with coefficientwise
//! multiplication: the atoms `x₁,…,x_d` are orthogonal projections with
//! `xᵢxⱼ = δᵢⱼxᵢ` and `Σᵢ xᵢ = 1`. An [`Element`] is stored as its coefficient
//! vector in that basis, so its spectrum is the set of coefficients and its
//! norm is the largest modulus.

mod calculus;
mod tensor;

pub use calculus::RealFunction;
pub use tensor::{MultiIndex, TensorElement};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// A finite abelian C*-algebra, identified by its dimension and optional atom labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomicAlgebra {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl AtomicAlgebra {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        Ok(Self { dim, labels: None })
    }

    /// Algebra whose atoms are named by `labels` (the source alphabet).
    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self {
            dim: labels.len(),
            labels: Some(labels),
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub(crate) fn check_same(&self, other: &AtomicAlgebra) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::AlgebraMismatch(format!(
                "dimension {} vs {}",
                self.dim, other.dim
            )));
        }
        match (&self.labels, &other.labels) {
            (Some(a), Some(b)) if a != b => {
                Err(Error::AlgebraMismatch("atom labels differ".into()))
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn check_index(&self, idx: usize) -> Result<()> {
        if idx >= self.dim {
            return Err(Error::InvalidIndex(format!(
                "basis index {idx} out of range for dimension {}",
                self.dim
            )));
        }
        Ok(())
    }
}

/// An element `Σᵢ aᵢxᵢ` of an [`AtomicAlgebra`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr<T>", into = "ElementRepr<T>")]
#[serde(bound = "T: Scalar")]
pub struct Element<T> {
    algebra: AtomicAlgebra,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> Element<T> {
    pub fn new(algebra: AtomicAlgebra, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::AlgebraMismatch(format!(
                "{} coefficients for dimension {}",
                coeffs.len(),
                algebra.dim()
            )));
        }
        Ok(Self { algebra, coeffs })
    }

    /// Element with real coefficients; the algebra dimension is `coeffs.len()`.
    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        let algebra = AtomicAlgebra::new(coeffs.len())?;
        Ok(Self {
            algebra,
            coeffs: coeffs.iter().map(|&a| Complex::new(a, T::zero())).collect(),
        })
    }

    pub fn from_real_in(algebra: &AtomicAlgebra, coeffs: &[T]) -> Result<Self> {
        Self::new(
            algebra.clone(),
            coeffs.iter().map(|&a| Complex::new(a, T::zero())).collect(),
        )
    }

    pub fn zero(algebra: &AtomicAlgebra) -> Self {
        Self {
            algebra: algebra.clone(),
            coeffs: vec![Complex::new(T::zero(), T::zero()); algebra.dim()],
        }
    }

    /// The unit `Σᵢ xᵢ`.
    pub fn identity(algebra: &AtomicAlgebra) -> Self {
        Self {
            algebra: algebra.clone(),
            coeffs: vec![Complex::new(T::one(), T::zero()); algebra.dim()],
        }
    }

    /// The atom `xᵢ` (0-based).
    pub fn atom(algebra: &AtomicAlgebra, i: usize) -> Result<Self> {
        algebra.check_index(i)?;
        let mut e = Self::zero(algebra);
        e.coeffs[i] = Complex::new(T::one(), T::zero());
        Ok(e)
    }

    /// The complete atomic basis `x₁,…,x_d`.
    pub fn atoms(algebra: &AtomicAlgebra) -> Vec<Self> {
        (0..algebra.dim())
            .map(|i| Self::atom(algebra, i).expect("index in range"))
            .collect()
    }

    /// Projection `Σ_{i∈set} xᵢ`.
    pub fn projection(algebra: &AtomicAlgebra, set: &[usize]) -> Result<Self> {
        let mut e = Self::zero(algebra);
        for &i in set {
            algebra.check_index(i)?;
            e.coeffs[i] = Complex::new(T::one(), T::zero());
        }
        Ok(e)
    }

    /// The coordinate observable `Σᵢ (i) xᵢ` with values `0,…,d−1`.
    pub fn coordinate(algebra: &AtomicAlgebra) -> Self {
        Self {
            algebra: algebra.clone(),
            coeffs: (0..algebra.dim())
                .map(|i| Complex::new(T::from_usize_lossy(i), T::zero()))
                .collect(),
        }
    }

    #[inline]
    pub fn algebra(&self) -> &AtomicAlgebra {
        &self.algebra
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Real parts of the coefficients.
    pub fn real_coeffs(&self) -> Vec<T> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        self.algebra.check_same(&other.algebra)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Product in the algebra: coefficientwise, since `xᵢxⱼ = δᵢⱼxᵢ`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|a| a * c)
    }

    pub fn scale_real(&self, c: T) -> Self {
        self.map(|a| a * c)
    }

    /// The involution `x*`.
    pub fn star(&self) -> Self {
        self.map(|a| a.conj())
    }

    /// Applies `f` to every coefficient: `f(x) = Σᵢ f(aᵢ)xᵢ`.
    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|&a| f(a)).collect(),
        }
    }

    /// `‖x‖ = maxᵢ |aᵢ|`.
    pub fn norm(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// `tr(x) = Σᵢ aᵢ`; for a projection, the number of atoms under it.
    pub fn trace(&self) -> Complex<T> {
        self.coeffs
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc + c)
    }

    /// `Sp(x)`: the distinct coefficients, in order of first appearance.
    pub fn spectrum(&self, tol: &Tolerance<T>) -> Vec<Complex<T>> {
        distinct(self.coeffs.iter().copied(), tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        self.algebra.check_same(&other.algebra).is_ok()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(&a, &b)| tol.approx_eq_c(a, b))
    }

    pub fn is_self_adjoint(&self, tol: &Tolerance<T>) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol.eq)
    }

    pub fn is_positive(&self, tol: &Tolerance<T>) -> bool {
        self.is_self_adjoint(tol) && self.coeffs.iter().all(|c| c.re >= -tol.eq)
    }

    /// Self-adjoint with `p² = p`: every coefficient is 0 or 1.
    pub fn is_projection(&self, tol: &Tolerance<T>) -> bool {
        self.is_self_adjoint(tol)
            && self.coeffs.iter().all(|c| {
                let p2 = *c * *c;
                tol.approx_eq_c(p2, *c)
            })
    }

    /// The unique positive square root of a positive element.
    pub fn sqrt(&self, tol: &Tolerance<T>) -> Result<Self> {
        if !self.is_positive(tol) {
            return Err(Error::NotPositive);
        }
        Ok(self.map(|a| Complex::new(a.re.max(T::zero()).sqrt(), T::zero())))
    }

    /// `|x| = (x*x)^{1/2}` for self-adjoint `x`.
    pub fn abs(&self, tol: &Tolerance<T>) -> Result<Self> {
        if !self.is_self_adjoint(tol) {
            return Err(Error::NotSelfAdjoint);
        }
        Ok(self.map(|a| Complex::new(a.re.abs(), T::zero())))
    }

    /// The decomposition `x = x₊ − x₋` with `x₊x₋ = 0`.
    pub fn pos_neg_parts(&self, tol: &Tolerance<T>) -> Result<(Self, Self)> {
        let abs = self.abs(tol)?;
        let two = T::lit(2.0);
        let re = self.map(|a| Complex::new(a.re, T::zero()));
        let pos = abs.try_add(&re)?.scale_real(T::one() / two);
        let neg = abs.try_sub(&re)?.scale_real(T::one() / two);
        Ok((pos, neg))
    }

    /// Real functional calculus `f(x) = Σᵢ f(aᵢ)xᵢ` for self-adjoint `x`.
    ///
    /// With `domain_check` every coefficient must lie in the domain of `f`;
    /// without it `f` is evaluated through its extended convention.
    pub fn apply(&self, f: &RealFunction<T>, domain_check: bool, tol: &Tolerance<T>) -> Result<Self> {
        if !self.is_self_adjoint(tol) {
            return Err(Error::NotSelfAdjoint);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(Complex::new(f.eval_checked(c.re, domain_check)?, T::zero()));
        }
        Ok(Self {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }
}

pub(crate) fn distinct<T: Scalar>(
    values: impl IntoIterator<Item = Complex<T>>,
    tol: &Tolerance<T>,
) -> Vec<Complex<T>> {
    let mut out: Vec<Complex<T>> = Vec::new();
    for v in values {
        if !out.iter().any(|&s| tol.approx_eq_c(s, v)) {
            out.push(v);
        }
    }
    out
}

/// JSON shape `{"dim": d, "coeffs": [[re, im], …]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr<T> {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    coeffs: Vec<[T; 2]>,
}

impl<T: Scalar> TryFrom<ElementRepr<T>> for Element<T> {
    type Error = Error;

    fn try_from(r: ElementRepr<T>) -> Result<Self> {
        let algebra = match r.labels {
            Some(labels) => {
                let a = AtomicAlgebra::with_labels(labels)?;
                if a.dim() != r.dim {
                    return Err(Error::InvalidAlgebra("label count differs from dim".into()));
                }
                a
            }
            None => AtomicAlgebra::new(r.dim)?,
        };
        Element::new(
            algebra,
            r.coeffs.iter().map(|&[re, im]| Complex::new(re, im)).collect(),
        )
    }
}

impl<T: Scalar> From<Element<T>> for ElementRepr<T> {
    fn from(e: Element<T>) -> Self {
        Self {
            dim: e.algebra.dim,
            labels: e.algebra.labels,
            coeffs: e.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}
