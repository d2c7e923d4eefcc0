use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::information::entropy;
use crate::probability::State;
use crate::scalar::{neg_plogp, Scalar, Tolerance};

use super::Channel;

/// Entropies and mutual information in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoMetrics<T> {
    pub h_x: T,
    pub h_y: T,
    /// Loss due to the channel: `Σⱼ q_j H(X | yⱼ)`.
    pub h_x_given_y: T,
    /// `H(X) − H(X|Y)`
    pub i_xy: T,
}

/// Metrics from the level-1 joint state; the posterior on inputs given `yⱼ`
/// is `C(yⱼ|xᵢ)ωᵢ / Σᵢ C(yⱼ|xᵢ)ωᵢ`.
pub fn info_metrics<T: Scalar>(channel: &Channel<T>, state: &State<T>) -> Result<InfoMetrics<T>> {
    channel.check_input_state(state)?;
    let two = T::lit(2.0);
    let q = channel.output_weights(state.weights());
    let h_x = entropy(state);
    let h_y: T = q.iter().map(|&p| neg_plogp(p, two)).sum();
    let mut h_x_given_y = T::zero();
    for (j, &qj) in q.iter().enumerate() {
        if qj <= T::zero() {
            continue;
        }
        let h: T = (0..channel.input_dim())
            .map(|i| neg_plogp(channel.entry(i, j) * state.weight(i) / qj, two))
            .sum();
        h_x_given_y += qj * h;
    }
    Ok(InfoMetrics {
        h_x,
        h_y,
        h_x_given_y,
        i_xy: h_x - h_x_given_y,
    })
}

/// `I(X;Y) = Σᵢⱼ ωᵢ C(yⱼ|xᵢ) log₂(C(yⱼ|xᵢ)/q_j)`, the output-side route.
pub fn mutual_information_direct<T: Scalar>(channel: &Channel<T>, input: &[T]) -> T {
    let q = channel.output_weights(input);
    let mut total = T::zero();
    for (i, &w) in input.iter().enumerate() {
        if w <= T::zero() {
            continue;
        }
        for (j, &c) in channel.row(i).iter().enumerate() {
            if c > T::zero() {
                total += w * c * (c / q[j]).log2();
            }
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Capacity<T> {
    /// Mutual information at `optimal_input`, in bits.
    pub capacity: T,
    pub optimal_input: State<T>,
    pub iterations: usize,
    /// Final upper-minus-lower bound gap.
    pub gap: T,
}

/// Blahut–Arimoto iteration from the uniform input.
///
/// Each step computes `Dᵢ = Σⱼ C(yⱼ|xᵢ) log₂(C(yⱼ|xᵢ)/q_j)`; the capacity lies
/// in `[log₂ Σᵢ rᵢ 2^{Dᵢ}, maxᵢ Dᵢ]`, and the input is updated to
/// `rᵢ ∝ rᵢ 2^{Dᵢ}`. Stops once the bracket is narrower than `tol`.
pub fn capacity<T: Scalar>(channel: &Channel<T>, tol: T, max_iter: usize) -> Result<Capacity<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let m = channel.input_dim();
    let mut r = vec![T::one() / T::from_usize_lossy(m); m];
    let mut gap = T::infinity();
    for it in 0..=max_iter {
        let q = channel.output_weights(&r);
        let d: Vec<T> = (0..m)
            .map(|i| {
                channel
                    .row(i)
                    .iter()
                    .zip(&q)
                    .filter(|(&c, _)| c > T::zero())
                    .map(|(&c, &qj)| c * (c / qj).log2())
                    .sum()
            })
            .collect();
        let upper = d.iter().copied().fold(T::neg_infinity(), T::max);
        let z: T = r.iter().zip(&d).map(|(&ri, &di)| ri * di.exp2()).sum();
        let lower = z.log2();
        gap = (upper - lower).max(T::zero());
        if gap < tol {
            let input = State::new(channel.input_algebra(), r.clone(), &Tolerance::default())?;
            return Ok(Capacity {
                capacity: mutual_information_direct(channel, &r).max(T::zero()),
                optimal_input: input,
                iterations: it,
                gap,
            });
        }
        if it == max_iter {
            break;
        }
        for (ri, &di) in r.iter_mut().zip(&d) {
            *ri = *ri * di.exp2() / z;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        gap: gap.to_f64_lossy(),
    })
}
