use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

type Func<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
type Domain<T> = Arc<dyn Fn(T) -> bool + Send + Sync>;

/// A real function for the functional calculus, paired with its domain.
///
/// The evaluation closure carries the extended convention used when the
/// domain check is off (for `log2`, `0 ↦ 0`).
#[derive(Clone)]
pub struct RealFunction<T> {
    name: String,
    eval: Func<T>,
    domain: Domain<T>,
}

impl<T> fmt::Debug for RealFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunction").field("name", &self.name).finish()
    }
}

impl<T: Scalar> RealFunction<T> {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(T) -> T + Send + Sync + 'static,
        domain: impl Fn(T) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            domain: Arc::new(domain),
        }
    }

    /// A function defined on all of ℝ.
    pub fn total(name: impl Into<String>, eval: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self::new(name, eval, |_| true)
    }

    /// `log₂` on `(0, ∞)`, extended by `log₂ 0 = 0`.
    pub fn log2() -> Self {
        Self::new("log2", crate::scalar::xlog2, |a: T| a > T::zero())
    }

    /// Natural log on `(0, ∞)`, extended by `ln 0 = 0`.
    pub fn ln() -> Self {
        Self::new(
            "ln",
            |a: T| if a == T::zero() { T::zero() } else { a.ln() },
            |a: T| a > T::zero(),
        )
    }

    pub fn exp() -> Self {
        Self::total("exp", T::exp)
    }

    pub fn sqrt() -> Self {
        Self::new("sqrt", T::sqrt, |a: T| a >= T::zero())
    }

    pub fn abs() -> Self {
        Self::total("abs", T::abs)
    }

    pub fn powi(k: i32) -> Self {
        Self::total(format!("pow{k}"), move |a: T| a.powi(k))
    }

    /// `Σₖ cₖ aᵏ`, coefficients in increasing degree.
    pub fn polynomial(coeffs: Vec<T>) -> Self {
        Self::total("polynomial", move |a: T| {
            coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * a + c)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn in_domain(&self, a: T) -> bool {
        (self.domain)(a)
    }

    #[inline]
    pub fn eval(&self, a: T) -> T {
        (self.eval)(a)
    }

    pub fn eval_checked(&self, a: T, domain_check: bool) -> Result<T> {
        if domain_check && !self.in_domain(a) {
            return Err(Error::Domain {
                function: self.name.clone(),
                value: format!("{a}"),
            });
        }
        Ok(self.eval(a))
    }
}
