//! Discrete memoryless channels as unital positive maps `C: Y → X`.
//!
//! The map sends an output atom `yⱼ` to `Σᵢ C(yⱼ|xᵢ) xᵢ`. It is stored
//! input-major: `matrix[i][j] = C(yⱼ|xᵢ)`, one row per input atom. This is the
//! transpose of the conventional channel matrix; rows sum to one, which is
//! exactly unitality of the map.

mod capacity;
mod classify;
mod coding;
mod joint;

pub use capacity::{capacity, info_metrics, mutual_information_direct, Capacity, InfoMetrics};
pub use classify::{classify, numerical_rank, singular_values, Classification, RANK_TOLERANCE};
pub use coding::{
    build_code_and_decoder, codebook_size, coding_experiment, CodeAndDecoder, CodingExperiment,
    CodingExperimentResult, LosslessChannel, TrialRecord,
};
pub use joint::{joint, JointOutput, JointState};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{AtomicAlgebra, Element};
use crate::error::{Error, Result};
use crate::probability::State;
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelRepr<T>", into = "ChannelRepr<T>")]
#[serde(bound = "T: Scalar")]
pub struct Channel<T> {
    input_dim: usize,
    output_dim: usize,
    matrix: Vec<T>,
}

impl<T: Scalar> Channel<T> {
    /// Validates nonnegativity and row-stochasticity within `tol.eq`.
    pub fn new(rows: Vec<Vec<T>>, tol: &Tolerance<T>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidChannel("no input symbols".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::InvalidChannel("no output symbols".into()));
        }
        let mut matrix = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidChannel(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(v) = row.iter().find(|v| !(**v >= -tol.eq)) {
                return Err(Error::InvalidChannel(format!("row {i} has negative entry {v}")));
            }
            let s: T = row.iter().copied().sum();
            if !tol.approx_eq(s, T::one()) {
                return Err(Error::InvalidChannel(format!("row {i} sums to {s}")));
            }
            matrix.extend(row);
        }
        Ok(Self {
            input_dim: m,
            output_dim: n,
            matrix,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(rows, &Tolerance::default())
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::from_rows(
            (0..d)
                .map(|i| (0..d).map(|j| if i == j { T::one() } else { T::zero() }).collect())
                .collect(),
        )
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: T) -> Result<Self> {
        let q = T::one() - p;
        Self::from_rows(vec![vec![q, p], vec![p, q]])
    }

    /// Binary erasure channel; outputs are `0`, erasure, `1`.
    pub fn bec(p: T) -> Result<Self> {
        let q = T::one() - p;
        Self::from_rows(vec![vec![q, p, T::zero()], vec![T::zero(), p, q]])
    }

    /// Every input sees the same output distribution `row`.
    pub fn useless(inputs: usize, row: &[T]) -> Result<Self> {
        Self::from_rows(vec![row.to_vec(); inputs])
    }

    #[inline]
    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    #[inline]
    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    /// `C(yⱼ|xᵢ)`
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> T {
        self.matrix[i * self.output_dim + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.matrix[i * self.output_dim..(i + 1) * self.output_dim]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.input_dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn input_algebra(&self) -> AtomicAlgebra {
        AtomicAlgebra::new(self.input_dim).expect("nonzero")
    }

    pub fn output_algebra(&self) -> AtomicAlgebra {
        AtomicAlgebra::new(self.output_dim).expect("nonzero")
    }

    /// `C(y) ∈ X` for `y ∈ Y`: coefficient `i` is `Σⱼ C(yⱼ|xᵢ) bⱼ`.
    pub fn apply(&self, y: &Element<T>) -> Result<Element<T>> {
        if y.dim() != self.output_dim {
            return Err(Error::AlgebraMismatch(format!(
                "element of dimension {} for output dimension {}",
                y.dim(),
                self.output_dim
            )));
        }
        let coeffs = (0..self.input_dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(y.coeffs())
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (&c, &b)| acc + b * c)
            })
            .collect();
        Element::new(self.input_algebra(), coeffs)
    }

    /// Output distribution `q_j = Σᵢ ωᵢ C(yⱼ|xᵢ)`, the state `ω ∘ C` on `Y`.
    pub fn push_state(&self, state: &State<T>) -> Result<State<T>> {
        self.check_input_state(state)?;
        Ok(State::new(self.output_algebra(), self.output_weights(state.weights()), &Tolerance::default())
            .expect("stochastic image of a state"))
    }

    pub(crate) fn output_weights(&self, input: &[T]) -> Vec<T> {
        let mut q = vec![T::zero(); self.output_dim];
        for (i, &w) in input.iter().enumerate() {
            for (qj, &c) in q.iter_mut().zip(self.row(i)) {
                *qj += w * c;
            }
        }
        q
    }

    pub(crate) fn check_input_state(&self, state: &State<T>) -> Result<()> {
        if state.dim() != self.input_dim {
            return Err(Error::AlgebraMismatch(format!(
                "state of dimension {} for input dimension {}",
                state.dim(),
                self.input_dim
            )));
        }
        Ok(())
    }

    /// Row of `C^{(k)}` for the input string `word`: a vector over the `nᵏ`
    /// output strings (position 1 most significant).
    pub fn power_row(&self, word: &[usize]) -> Vec<T> {
        let mut out = vec![T::one()];
        for &x in word {
            let r = self.row(x);
            out = out
                .iter()
                .flat_map(|&a| r.iter().map(move |&c| a * c))
                .collect();
        }
        out
    }

    /// The k-fold Kronecker power `C^{(k)}`, an `mᵏ × nᵏ` channel.
    pub fn power(&self, k: usize) -> Self {
        let mut cur = Self {
            input_dim: 1,
            output_dim: 1,
            matrix: vec![T::one()],
        };
        for _ in 0..k {
            cur = cur.kron(self);
        }
        cur
    }

    /// `C ⊗ D`: input `(i, i′)` at `i·m′ + i′`, output `(j, j′)` at `j·n′ + j′`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = self.input_dim * other.input_dim;
        let n = self.output_dim * other.output_dim;
        let mut matrix = Vec::with_capacity(m * n);
        for i in 0..self.input_dim {
            for i2 in 0..other.input_dim {
                for j in 0..self.output_dim {
                    let a = self.entry(i, j);
                    matrix.extend(other.row(i2).iter().map(|&b| a * b));
                }
            }
        }
        Self {
            input_dim: m,
            output_dim: n,
            matrix,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelRepr<T> {
    input_dim: usize,
    output_dim: usize,
    matrix: Vec<Vec<T>>,
}

impl<T: Scalar> TryFrom<ChannelRepr<T>> for Channel<T> {
    type Error = Error;

    fn try_from(r: ChannelRepr<T>) -> Result<Self> {
        let c = Self::from_rows(r.matrix)?;
        if c.input_dim != r.input_dim || c.output_dim != r.output_dim {
            return Err(Error::InvalidChannel(format!(
                "declared {}×{} but matrix is {}×{}",
                r.input_dim, r.output_dim, c.input_dim, c.output_dim
            )));
        }
        Ok(c)
    }
}

impl<T: Scalar> From<Channel<T>> for ChannelRepr<T> {
    fn from(c: Channel<T>) -> Self {
        Self {
            input_dim: c.input_dim,
            output_dim: c.output_dim,
            matrix: c.rows(),
        }
    }
}
