//! Scalar abstraction shared by every module.
//!
//! All algebra is written against [`Scalar`], a real floating-point type;
//! complex coefficients are `Complex<T>`. `f64` is the default everywhere and
//! `f32` is supported with looser default tolerances.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + NumAssign
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Default equality/positivity tolerance.
    fn default_tau_eq() -> Self;
    /// Default threshold below which sparse coefficients are dropped.
    fn default_tau_zero() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn default_tau_eq() -> Self {
        1e-9
    }
    fn default_tau_zero() -> Self {
        1e-15
    }
}

impl Scalar for f32 {
    fn default_tau_eq() -> Self {
        1e-5
    }
    fn default_tau_zero() -> Self {
        1e-7
    }
}

/// Numerical tolerances used by predicates and canonicalisation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    /// Equality, positivity and projection checks.
    pub eq: T,
    /// Sparse tensor terms with modulus below this are dropped.
    pub zero: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            eq: T::default_tau_eq(),
            zero: T::default_tau_zero(),
        }
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn with_eq(eq: T) -> Self {
        Self {
            eq,
            ..Self::default()
        }
    }

    #[inline]
    pub fn approx_eq(&self, a: T, b: T) -> bool {
        (a - b).abs() <= self.eq
    }

    #[inline]
    pub fn approx_eq_c(&self, a: Complex<T>, b: Complex<T>) -> bool {
        (a - b).norm() <= self.eq
    }
}

/// `log₂` with the extended convention `log₂ 0 = 0`.
#[inline]
pub fn xlog2<T: Scalar>(p: T) -> T {
    if p == T::zero() {
        T::zero()
    } else {
        p.log2()
    }
}

/// `-p log_b p` with `0 log 0 = 0`.
#[inline]
pub fn neg_plogp<T: Scalar>(p: T, base: T) -> T {
    if p <= T::zero() {
        T::zero()
    } else {
        -p * p.log(base)
    }
}
