//! Weak law of large numbers for i.i.d. embedded copies of an observable.
//!
//! Moments of `sₙ = (x̂₁ + ⋯ + x̂ₙ)/n` under `⊗ⁿω` depend only on the
//! distribution of `sₙ`, which is obtained by convolving the single-copy
//! distribution `n` times and merging equal values.

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

use super::{Atom, Distribution, State};

/// Largest supported moment order.
pub const MAX_MOMENT_ORDER: u32 = 8;

fn merge_sorted<T: Scalar>(mut atoms: Vec<(T, T)>, tol: &Tolerance<T>) -> Vec<(T, T)> {
    atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"));
    let mut out: Vec<(T, T)> = Vec::with_capacity(atoms.len());
    for (v, m) in atoms {
        match out.last_mut() {
            Some(last) if (v - last.0).abs() <= tol.eq * T::one().max(v.abs()) => {
                last.1 += m
            }
            _ => out.push((v, m)),
        }
    }
    out
}

/// Distribution of the mean `sₙ` of `n` independent copies of `x` under `ω`.
pub fn mean_distribution<T: Scalar>(
    state: &State<T>,
    x: &Element<T>,
    n: usize,
    tol: &Tolerance<T>,
) -> Result<Distribution<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    state.algebra().check_same(x.algebra())?;
    if !x.is_self_adjoint(tol) {
        return Err(Error::NotSelfAdjoint);
    }
    let single = merge_sorted(
        x.coeffs()
            .iter()
            .zip(state.weights())
            .filter(|(_, &p)| p > T::zero())
            .map(|(c, &p)| (c.re, p))
            .collect(),
        tol,
    );
    let mut sum = vec![(T::zero(), T::one())];
    for _ in 0..n {
        let next = sum
            .iter()
            .flat_map(|&(v, m)| single.iter().map(move |&(a, p)| (v + a, m * p)))
            .collect();
        sum = merge_sorted(next, tol);
    }
    let nf = T::from_usize_lossy(n);
    let atoms = sum
        .into_iter()
        .map(|(v, m)| Atom {
            value: vec![v / nf],
            mass: m,
        })
        .collect();
    Distribution::from_atoms(atoms, tol)
}

/// `Ωₙ(|sₙ − μ|ᵏ)` for the observable `x`, with `μ = ω(x)`.
///
/// Odd orders are taken as absolute moments directly from the distribution.
pub fn lln_moment_of<T: Scalar>(
    state: &State<T>,
    x: &Element<T>,
    n: usize,
    k: u32,
    tol: &Tolerance<T>,
) -> Result<T> {
    if k == 0 || k > MAX_MOMENT_ORDER {
        return Err(Error::InvalidArgument(format!(
            "moment order must be in 1..={MAX_MOMENT_ORDER}, got {k}"
        )));
    }
    let mu = state.expect(x)?;
    let dist = mean_distribution(state, x, n, tol)?;
    Ok(dist.expect(|v| (v[0] - mu).abs().powi(k as i32)))
}

/// [`lln_moment_of`] for the coordinate observable `Σᵢ i·xᵢ`.
pub fn lln_moment<T: Scalar>(state: &State<T>, n: usize, k: u32) -> Result<T> {
    let x = Element::coordinate(state.algebra());
    lln_moment_of(state, &x, n, k, &Tolerance::default())
}

/// Whether `k` is an odd order (computed, but outside the even-power route).
pub fn is_odd_order(k: u32) -> bool {
    k % 2 == 1
}

/// Exact `P(|sₙ − μ| > ε)`. Deviations within `tol.eq` of `ε` count as not exceeding it.
pub fn chebyshev_tail_of<T: Scalar>(
    state: &State<T>,
    x: &Element<T>,
    n: usize,
    eps: T,
    tol: &Tolerance<T>,
) -> Result<T> {
    if !(eps > T::zero()) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let mu = state.expect(x)?;
    let dist = mean_distribution(state, x, n, tol)?;
    Ok(dist.expect(|v| {
        if (v[0] - mu).abs() > eps + tol.eq {
            T::one()
        } else {
            T::zero()
        }
    }))
}

/// [`chebyshev_tail_of`] for the coordinate observable.
pub fn chebyshev_tail<T: Scalar>(state: &State<T>, n: usize, eps: T) -> Result<T> {
    let x = Element::coordinate(state.algebra());
    chebyshev_tail_of(state, &x, n, eps, &Tolerance::default())
}
