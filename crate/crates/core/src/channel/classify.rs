use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::probability::State;
use crate::scalar::{Scalar, Tolerance};

use super::Channel;

/// Relative singular-value threshold for the numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// Each output atom is reachable from at most one input atom.
    /// `decision_sets[i]` lists the outputs that identify input `i`;
    /// `unreachable` lists outputs with no positive entry.
    Lossless {
        decision_sets: Vec<Vec<usize>>,
        unreachable: Vec<usize>,
    },
    /// Rank-one transition matrix: input and output are independent.
    Useless,
    Generic,
}

impl Classification {
    pub fn is_lossless(&self) -> bool {
        matches!(self, Self::Lossless { .. })
    }

    pub fn is_useless(&self) -> bool {
        matches!(self, Self::Useless)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Lossless { .. } => "lossless",
            Self::Useless => "useless",
            Self::Generic => "generic",
        }
    }
}

/// Singular values of a dense row-major matrix, descending.
pub fn singular_values<T: Scalar>(rows: &[Vec<T>]) -> Vec<T> {
    let cols = rows.first().map_or(0, Vec::len);
    let m = nalgebra::DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j].to_f64_lossy());
    let mut s: Vec<T> = m.singular_values().iter().map(|&v| T::lit(v)).collect();
    s.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    s
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank<T: Scalar>(rows: &[Vec<T>], rel_tol: T) -> usize {
    let s = singular_values(rows);
    match s.first() {
        Some(&top) if top > T::zero() => s.iter().filter(|&&v| v > rel_tol * top).count(),
        _ => 0,
    }
}

/// Classifies a channel. With an input state, inputs of weight at most
/// `tol.eq` are ignored; without one the matrix alone decides.
pub fn classify<T: Scalar>(
    channel: &Channel<T>,
    state: Option<&State<T>>,
    tol: &Tolerance<T>,
) -> Result<Classification> {
    let active: Vec<usize> = match state {
        Some(w) => {
            channel.check_input_state(w)?;
            (0..channel.input_dim())
                .filter(|&i| w.weight(i) > tol.eq)
                .collect()
        }
        None => (0..channel.input_dim()).collect(),
    };
    let rows: Vec<Vec<T>> = active.iter().map(|&i| channel.row(i).to_vec()).collect();
    if numerical_rank(&rows, T::lit(RANK_TOLERANCE)) <= 1 {
        return Ok(Classification::Useless);
    }
    let mut decision_sets = vec![Vec::new(); channel.input_dim()];
    let mut unreachable = Vec::new();
    for j in 0..channel.output_dim() {
        let mut senders = active.iter().filter(|&&i| channel.entry(i, j) > tol.eq);
        match (senders.next(), senders.next()) {
            (None, _) => unreachable.push(j),
            (Some(&i), None) => decision_sets[i].push(j),
            (Some(_), Some(_)) => return Ok(Classification::Generic),
        }
    }
    Ok(Classification::Lossless {
        decision_sets,
        unreachable,
    })
}
