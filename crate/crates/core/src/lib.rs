//! Classical probability and information theory on finite-dimensional
//! abelian C*-algebras.
//!
//! An abelian algebra of dimension `d` is presented in its atomic basis of
//! orthogonal projections, so random variables are coefficient vectors and
//! probability distributions are states. On top of that sit:
//!
//! - [`algebra`]: elements, the sparse infinite tensor power, spectra and the
//!   functional calculus;
//! - [`probability`]: states, product states, generated subalgebras,
//!   independence, distribution functions and the weak law of large numbers;
//! - [`information`]: sources, entropy, typical-set projections, prefix-free
//!   codes, the Kraft inequality and Huffman codes;
//! - [`channel`]: channels as unital positive maps, joint states,
//!   classification, mutual information, capacity and the random-coding
//!   experiment.
//!
//! Everything is generic over [`Scalar`] (`f64` or `f32`). The aliases below
//! fix the scalar for the common cases.

pub mod algebra;
pub mod channel;
pub mod error;
pub mod guard;
pub mod information;
pub mod probability;
pub mod scalar;

pub use algebra::{AtomicAlgebra, MultiIndex, RealFunction};
pub use error::{Error, Result};
pub use guard::Guard;
pub use information::Code;
pub use scalar::{Scalar, Tolerance};

pub type Element64 = algebra::Element<f64>;
pub type TensorElement64 = algebra::TensorElement<f64>;
pub type State64 = probability::State<f64>;
pub type ProductState64 = probability::ProductState<f64>;
pub type Distribution64 = probability::Distribution<f64>;
pub type Source64 = information::Source<f64>;
pub type Channel64 = channel::Channel<f64>;

pub type Element32 = algebra::Element<f32>;
pub type TensorElement32 = algebra::TensorElement<f32>;
pub type State32 = probability::State<f32>;
pub type ProductState32 = probability::ProductState<f32>;
pub type Distribution32 = probability::Distribution<f32>;
pub type Source32 = information::Source<f32>;
pub type Channel32 = channel::Channel<f32>;

pub type Tolerance64 = Tolerance<f64>;
pub type Tolerance32 = Tolerance<f32>;
