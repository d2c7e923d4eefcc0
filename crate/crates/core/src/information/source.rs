use crate::algebra::{AtomicAlgebra, Element};
use crate::probability::State;
use crate::scalar::{neg_plogp, Scalar};

/// A static discrete memoryless source: an alphabet algebra with a state.
#[derive(Clone, Debug, PartialEq)]
pub struct Source<T> {
    state: State<T>,
}

impl<T: Scalar> Source<T> {
    pub fn new(state: State<T>) -> Self {
        Self { state }
    }

    pub fn algebra(&self) -> &AtomicAlgebra {
        self.state.algebra()
    }

    pub fn state(&self) -> &State<T> {
        &self.state
    }

    /// Instantaneous output `𝒪_ω = Σᵢ ω(xᵢ)xᵢ`.
    pub fn output(&self) -> Element<T> {
        source_output(&self.state)
    }

    pub fn entropy(&self) -> T {
        entropy(&self.state)
    }
}

pub fn source_output<T: Scalar>(state: &State<T>) -> Element<T> {
    Element::from_real_in(state.algebra(), state.weights()).expect("same dimension")
}

/// Shannon entropy `−Σ pᵢ log₂ pᵢ` in bits, i.e. `−ω(log₂ 𝒪_ω)`.
pub fn entropy<T: Scalar>(state: &State<T>) -> T {
    entropy_base(state, T::lit(2.0))
}

/// Entropy with logarithms to `base`.
pub fn entropy_base<T: Scalar>(state: &State<T>, base: T) -> T {
    state
        .weights()
        .iter()
        .map(|&p| neg_plogp(p, base))
        .sum::<T>()
        .max(T::zero())
}
