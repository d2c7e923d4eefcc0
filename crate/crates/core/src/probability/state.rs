use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{AtomicAlgebra, Element, TensorElement};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// A state: positive unital functional, stored as its weights `pᵢ = ω(xᵢ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr<T>", into = "StateRepr<T>")]
#[serde(bound = "T: Scalar")]
pub struct State<T> {
    algebra: AtomicAlgebra,
    weights: Vec<T>,
}

impl<T: Scalar> State<T> {
    pub fn new(algebra: AtomicAlgebra, weights: Vec<T>, tol: &Tolerance<T>) -> Result<Self> {
        if weights.len() != algebra.dim() {
            return Err(Error::InvalidState(format!(
                "{} weights for dimension {}",
                weights.len(),
                algebra.dim()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= -tol.eq)) {
            return Err(Error::InvalidState(format!("negative or NaN weight {w}")));
        }
        let total: T = weights.iter().copied().sum();
        if !tol.approx_eq(total, T::one()) {
            return Err(Error::InvalidState(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { algebra, weights })
    }

    /// State on a fresh algebra of dimension `weights.len()`, default tolerance.
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        let algebra = AtomicAlgebra::new(weights.len())?;
        Self::new(algebra, weights.to_vec(), &Tolerance::default())
    }

    pub fn uniform(algebra: &AtomicAlgebra) -> Self {
        let d = algebra.dim();
        Self {
            algebra: algebra.clone(),
            weights: vec![T::one() / T::from_usize_lossy(d); d],
        }
    }

    pub fn point_mass(algebra: &AtomicAlgebra, i: usize) -> Result<Self> {
        algebra.check_index(i)?;
        let mut weights = vec![T::zero(); algebra.dim()];
        weights[i] = T::one();
        Ok(Self {
            algebra: algebra.clone(),
            weights,
        })
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
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, i: usize) -> T {
        self.weights[i]
    }

    /// `ω(x) = Σᵢ pᵢ aᵢ`.
    pub fn evaluate(&self, x: &Element<T>) -> Result<Complex<T>> {
        self.algebra.check_same(x.algebra())?;
        Ok(self
            .weights
            .iter()
            .zip(x.coeffs())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&p, &a)| acc + a * p))
    }

    /// Real part of `ω(x)`, for self-adjoint `x`.
    pub fn expect(&self, x: &Element<T>) -> Result<T> {
        self.evaluate(x).map(|c| c.re)
    }

    /// Pure iff multiplicative iff a point mass: one weight equals 1 within `tol.eq`.
    pub fn is_pure(&self, tol: &Tolerance<T>) -> bool {
        self.weights
            .iter()
            .filter(|&&w| tol.approx_eq(w, T::one()))
            .count()
            == 1
    }

    /// `ω ⊗ σ` on the algebra of dimension `d₁d₂`, atom `(i, j)` at index `i·d₂ + j`.
    pub fn product(&self, other: &Self) -> Self {
        let algebra = AtomicAlgebra::new(self.dim() * other.dim()).expect("nonzero");
        let weights = self
            .weights
            .iter()
            .flat_map(|&p| other.weights.iter().map(move |&q| p * q))
            .collect();
        Self { algebra, weights }
    }

    /// Product of the weights along a string of atoms: `⊗ⁿω(x_{i₁} ⊗ ⋯ ⊗ x_{iₙ})`.
    pub fn string_weight(&self, symbols: &[usize]) -> T {
        symbols.iter().fold(T::one(), |acc, &i| acc * self.weights[i])
    }
}

/// `Ω = ω₁ ⊗ ω₂ ⊗ ⋯`: explicit factors, then `tail` at every later position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ProductState<T> {
    factors: Vec<State<T>>,
    tail: State<T>,
}

impl<T: Scalar> ProductState<T> {
    pub fn new(factors: Vec<State<T>>, tail: State<T>) -> Result<Self> {
        for f in &factors {
            f.algebra.check_same(&tail.algebra)?;
        }
        Ok(Self { factors, tail })
    }

    /// `ω ⊗ ω ⊗ ⋯`.
    pub fn iid(state: &State<T>) -> Self {
        Self {
            factors: Vec::new(),
            tail: state.clone(),
        }
    }

    pub fn factor_algebra(&self) -> &AtomicAlgebra {
        &self.tail.algebra
    }

    /// The state at 1-based position `pos`.
    pub fn factor(&self, pos: usize) -> &State<T> {
        self.factors.get(pos.wrapping_sub(1)).unwrap_or(&self.tail)
    }

    /// Evaluates term by term; each basis string contributes a finite product.
    pub fn evaluate(&self, x: &TensorElement<T>) -> Result<Complex<T>> {
        self.tail.algebra.check_same(x.factor_algebra())?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (idx, &c) in x.terms() {
            let w = idx
                .iter()
                .fold(T::one(), |w, (pos, i)| w * self.factor(pos).weights[i]);
            acc += c * w;
        }
        Ok(acc)
    }

    /// Dense weights of the `dᵏ` strings at level `k` (position 1 most significant).
    pub fn dense_weights(&self, k: usize) -> Vec<T> {
        let mut out = vec![T::one()];
        for pos in 1..=k {
            let f = self.factor(pos);
            out = out
                .iter()
                .flat_map(|&a| f.weights.iter().map(move |&p| a * p))
                .collect();
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr<T> {
    dim: usize,
    weights: Vec<T>,
}

impl<T: Scalar> TryFrom<StateRepr<T>> for State<T> {
    type Error = Error;

    fn try_from(r: StateRepr<T>) -> Result<Self> {
        Self::new(AtomicAlgebra::new(r.dim)?, r.weights, &Tolerance::default())
    }
}

impl<T: Scalar> From<State<T>> for StateRepr<T> {
    fn from(s: State<T>) -> Self {
        Self {
            dim: s.algebra.dim(),
            weights: s.weights,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_sum() {
        let w = State::<f64>::from_weights(&[0.3, 0.7]).unwrap();
        let x = Element::from_real(&[2.0, 4.0]).unwrap();
        assert!((w.expect(&x).unwrap() - 3.4).abs() < 1e-15);
        let one = Element::identity(w.algebra());
        assert!((w.expect(&one).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(State::<f64>::from_weights(&[0.5, 0.6]).is_err());
        assert!(State::<f64>::from_weights(&[1.5, -0.5]).is_err());
        assert!(State::<f64>::from_weights(&[f64::NAN, 1.0]).is_err());
        assert!(State::<f64>::from_weights(&[1.0 - 1e-12, 1e-12]).is_ok());
        let y = Element::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let w = State::<f64>::from_weights(&[0.5, 0.5]).unwrap();
        assert!(w.evaluate(&y).is_err());
    }

    #[test]
    fn purity() {
        let t = Tolerance::default();
        assert!(State::<f64>::from_weights(&[1.0, 0.0, 0.0]).unwrap().is_pure(&t));
        assert!(!State::<f64>::from_weights(&[0.5, 0.5]).unwrap().is_pure(&t));
        let tau = 1e-9;
        let s = State::new(
            AtomicAlgebra::new(2).unwrap(),
            vec![1.0 - tau / 2.0, tau / 2.0],
            &t,
        )
        .unwrap();
        assert!(s.is_pure(&t));
    }

    #[test]
    fn product_state_on_string() {
        let w = State::<f64>::from_weights(&[0.5, 0.5]).unwrap();
        let omega = ProductState::iid(&w);
        let a = w.algebra().clone();
        let x1 = TensorElement::from_element(&Element::atom(&a, 0).unwrap());
        let x2 = TensorElement::from_element(&Element::atom(&a, 1).unwrap());
        let term = x1.tensor_product(&x2).unwrap();
        assert!((omega.evaluate(&term).unwrap().re - 0.25).abs() < 1e-15);
        let id = TensorElement::identity(&a);
        assert_eq!(omega.evaluate(&id).unwrap().re, 1.0);
    }

    #[test]
    fn explicit_factors_then_tail() {
        let a = State::<f64>::from_weights(&[0.2, 0.8]).unwrap();
        let b = State::<f64>::from_weights(&[0.6, 0.4]).unwrap();
        let omega = ProductState::new(vec![a.clone()], b.clone()).unwrap();
        assert_eq!(omega.factor(1), &a);
        assert_eq!(omega.factor(7), &b);
        let dense = omega.dense_weights(2);
        assert_eq!(dense.len(), 4);
        assert!((dense[1] - 0.2 * 0.4).abs() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let w = State::<f64>::from_weights(&[0.25, 0.75]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"dim":2,"weights":[0.25,0.75]}"#);
        assert!(serde_json::from_str::<State<f64>>(r#"{"dim":2,"weights":[0.2,0.2]}"#).is_err());
    }
}
