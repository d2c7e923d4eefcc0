//! Typical sets and the projection `Q` at block length `n`.
//!
//! A string `i₁⋯iₙ` is typical when its sample entropy
//! `−(1/n) Σⱼ log₂ p_{iⱼ}` lies within `ε` of `H(ω)` (closed interval).
//! `Q` is the sum of the typical string projections; `tr(Q)` counts them and
//! `⊗ⁿω(Q)` is their probability.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiIndex, TensorElement};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::scalar::{Scalar, Tolerance};

use super::{entropy, Source};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypicalSetReport {
    pub n: usize,
    pub epsilon: f64,
    /// Entropy in bits per symbol.
    pub entropy: f64,
    /// `tr(Q)`
    pub count: u64,
    /// `⊗ⁿω(Q)`
    pub prob_mass: f64,
    /// `(1−ε)·2^{n(H−ε)}`
    pub lower_bound: f64,
    /// `2^{n(H+ε)}`
    pub upper_bound: f64,
    /// `prob_mass > 1−ε`
    pub mass_ok: bool,
    /// `count ≤ upper_bound`
    pub count_ok: bool,
    /// `count ≥ lower_bound`
    pub lower_ok: bool,
}

fn check_args(n: usize, eps: f64, d: usize, guard: &Guard) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("block length must be positive".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    guard.check(d, n)
}

/// Visits every string of length `n` in lexicographic order with its
/// probability and typicality flag.
fn for_each_string<T: Scalar>(
    source: &Source<T>,
    n: usize,
    eps: T,
    tol: &Tolerance<T>,
    mut visit: impl FnMut(&[usize], T, bool),
) {
    let w = source.state().weights();
    let d = w.len();
    let h = entropy(source.state());
    let surprisal: Vec<T> = w
        .iter()
        .map(|&p| if p > T::zero() { -p.log2() } else { T::infinity() })
        .collect();
    let nf = T::from_usize_lossy(n);
    let mut digits = vec![0usize; n];
    loop {
        let mut s = T::zero();
        let mut prob = T::one();
        for &i in &digits {
            s += surprisal[i];
            prob *= w[i];
        }
        let typical = s.is_finite() && (s / nf - h).abs() <= eps + tol.eq;
        visit(&digits, prob, typical);
        let mut j = n;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < d {
                break;
            }
            digits[j] = 0;
        }
    }
}

/// Enumerates all `dⁿ` strings and reports the typical set.
pub fn aep_typical_set<T: Scalar>(
    source: &Source<T>,
    n: usize,
    eps: T,
    guard: &Guard,
) -> Result<TypicalSetReport> {
    let d = source.algebra().dim();
    let eps_f = eps.to_f64_lossy();
    check_args(n, eps_f, d, guard)?;
    let mut count = 0u64;
    let mut mass = T::zero();
    for_each_string(source, n, eps, &Tolerance::default(), |_, p, typical| {
        if typical {
            count += 1;
            mass += p;
        }
    });
    let h = entropy(source.state()).to_f64_lossy();
    let nf = n as f64;
    let lower_bound = (1.0 - eps_f) * (nf * (h - eps_f)).exp2();
    let upper_bound = (nf * (h + eps_f)).exp2();
    let prob_mass = mass.to_f64_lossy();
    Ok(TypicalSetReport {
        n,
        epsilon: eps_f,
        entropy: h,
        count,
        prob_mass,
        lower_bound,
        upper_bound,
        mass_ok: prob_mass > 1.0 - eps_f,
        count_ok: count as f64 <= upper_bound,
        lower_ok: count as f64 >= lower_bound,
    })
}

/// The projection `Q` onto the typical strings of length `n`.
pub fn aep_projection<T: Scalar>(
    source: &Source<T>,
    n: usize,
    eps: T,
    guard: &Guard,
) -> Result<TensorElement<T>> {
    let a = source.algebra().clone();
    check_args(n, eps.to_f64_lossy(), a.dim(), guard)?;
    let mut terms = Vec::new();
    let mut err = None;
    for_each_string(source, n, eps, &Tolerance::default(), |s, _, typical| {
        if typical && err.is_none() {
            match MultiIndex::from_string(&a, s) {
                Ok(idx) => terms.push((idx, Complex::new(T::one(), T::zero()))),
                Err(e) => err = Some(e),
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    TensorElement::from_terms(&a, terms)?.with_level(n)
}

/// Reports for a range of block lengths plus the mass threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AepSweep {
    pub reports: Vec<TypicalSetReport>,
    /// Smallest swept `n₀` with `mass_ok` at every swept `n ≥ n₀`.
    pub threshold: Option<usize>,
}

pub fn aep_sweep<T: Scalar>(
    source: &Source<T>,
    ns: &[usize],
    eps: T,
    guard: &Guard,
) -> Result<AepSweep> {
    let reports = ns
        .iter()
        .map(|&n| aep_typical_set(source, n, eps, guard))
        .collect::<Result<Vec<_>>>()?;
    let mut threshold = None;
    for r in reports.iter().rev() {
        if !r.mass_ok {
            break;
        }
        threshold = Some(r.n);
    }
    Ok(AepSweep { reports, threshold })
}
