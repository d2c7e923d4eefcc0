use crate::error::{Error, Result};

/// Caps exponential enumerations at `2^limit_bits` items.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Guard {
    pub limit_bits: f64,
}

impl Default for Guard {
    fn default() -> Self {
        Self { limit_bits: 24.0 }
    }
}

impl Guard {
    pub fn unlimited() -> Self {
        Self {
            limit_bits: f64::INFINITY,
        }
    }

    pub fn with_limit(limit_bits: f64) -> Self {
        Self { limit_bits }
    }

    /// Checks an enumeration of `base^exponent` items.
    pub fn check(&self, base: usize, exponent: usize) -> Result<()> {
        let required_bits = exponent as f64 * (base as f64).log2();
        if required_bits > self.limit_bits + 1e-12 {
            return Err(Error::GuardExceeded {
                required_bits,
                limit_bits: self.limit_bits,
            });
        }
        Ok(())
    }
}
