//! Random codebooks, maximum a-posteriori decoders and the lossless
//! approximation experiment.
//!
//! For block length `k` and rate `R`, a codebook of `r_k = ⌊2^{kR}⌋` distinct
//! input strings is drawn i.i.d. from `ωᵏ`. The induced channel `C_k` keeps the
//! rows of `C^{(k)}` at the codewords, with the input uniform over codewords.
//! Each output string is assigned to the codeword with the largest transition
//! probability (lowest index on ties); the decoder `L_k` renormalizes each
//! codeword's row on its decision block, which makes it lossless.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::probability::State;
use crate::scalar::{Scalar, Tolerance};

use super::{classify, Channel};

/// `⌊2^{kR}⌋`, which must be at least 2.
pub fn codebook_size(k: usize, rate: f64) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument("block length must be positive".into()));
    }
    if !(rate > 0.0) {
        return Err(Error::InvalidArgument(format!("rate must be positive, got {rate}")));
    }
    let x = (k as f64 * rate).exp2();
    // absorb rounding in kR for exact powers of two
    let r = (x * (1.0 + 1e-12)).floor();
    if r < 2.0 {
        return Err(Error::InvalidArgument(format!(
            "codebook size ⌊2^({k}·{rate})⌋ = {r} < 2"
        )));
    }
    if r > usize::MAX as f64 {
        return Err(Error::InvalidArgument("codebook size overflows".into()));
    }
    Ok(r as usize)
}

/// Draws `r` distinct strings of length `k` from `ωᵏ`.
fn sample_codebook<T: Scalar>(
    state: &State<T>,
    k: usize,
    r: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    let weights: Vec<f64> = state.weights().iter().map(|w| w.to_f64_lossy()).collect();
    let support = weights.iter().filter(|&&w| w > 0.0).count();
    let reachable = (support as f64).powi(k as i32);
    if (r as f64) > reachable {
        return Err(Error::Codebook(format!(
            "{r} codewords requested but only {reachable} strings have positive probability"
        )));
    }
    let last_positive = weights.iter().rposition(|&w| w > 0.0).expect("state has mass");
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for &w in &weights {
        acc += w;
        cumulative.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(r);
    let mut book = Vec::with_capacity(r);
    let max_draws = 64 * r + 1024;
    for _ in 0..max_draws {
        let word: Vec<usize> = (0..k)
            .map(|_| {
                let u: f64 = rng.gen::<f64>() * acc;
                cumulative
                    .iter()
                    .position(|&c| u < c)
                    .unwrap_or(last_positive)
            })
            .collect();
        if seen.insert(word.clone()) {
            book.push(word);
            if book.len() == r {
                return Ok(book);
            }
        }
    }
    Err(Error::Codebook(format!(
        "only {} distinct codewords after {max_draws} draws; rate too high for k = {k}",
        book.len()
    )))
}

/// MAP decision over all output strings: the winning codeword and its
/// transition probability for every output string.
fn decide<T: Scalar>(channel: &Channel<T>, codebook: &[Vec<usize>]) -> (Vec<usize>, Vec<T>) {
    let mut best_idx: Vec<usize> = Vec::new();
    let mut best_val: Vec<T> = Vec::new();
    for (j, word) in codebook.iter().enumerate() {
        let row = channel.power_row(word);
        if j == 0 {
            best_idx = vec![0; row.len()];
            best_val = row;
            continue;
        }
        for (y, &v) in row.iter().enumerate() {
            if v > best_val[y] {
                best_val[y] = v;
                best_idx[y] = j;
            }
        }
    }
    (best_idx, best_val)
}

/// `(deviation, error_prob)` by streaming over codeword rows.
///
/// `deviation = Σⱼ (1/r) Σᵢ |C_k(yᵢ|xⱼ) − L_k(yᵢ|xⱼ)|`,
/// `error_prob = Σⱼ (1/r) Σ_{i∉dⱼ} C_k(yᵢ|xⱼ)`.
fn deviation_and_error<T: Scalar>(
    channel: &Channel<T>,
    codebook: &[Vec<usize>],
    decision: &[usize],
) -> (T, T) {
    let r = codebook.len();
    let mut block_size = vec![0usize; r];
    for &j in decision {
        block_size[j] += 1;
    }
    let rf = T::from_usize_lossy(r);
    let mut deviation = T::zero();
    let mut error = T::zero();
    for (j, word) in codebook.iter().enumerate() {
        let row = channel.power_row(word);
        let mass: T = row
            .iter()
            .zip(decision)
            .filter(|(_, &d)| d == j)
            .map(|(&c, _)| c)
            .sum();
        let mut dev_j = T::zero();
        let mut err_j = T::zero();
        for (&c, &d) in row.iter().zip(decision) {
            if d == j {
                let l = if mass > T::zero() {
                    c / mass
                } else {
                    T::one() / T::from_usize_lossy(block_size[j])
                };
                dev_j += (c - l).abs();
            } else {
                dev_j += c;
                err_j += c;
            }
        }
        deviation += dev_j / rf;
        error += err_j / rf;
    }
    (deviation, error)
}

/// A lossless decoder channel on the codebook: `r_k` rows over `nᵏ` outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct LosslessChannel<T> {
    /// Output string index → codeword index.
    pub decision_partition: Vec<usize>,
    /// Row-major `r_k × nᵏ`.
    pub matrix: Vec<T>,
    /// Codewords whose decision block is empty (their rows are zero).
    pub empty_blocks: Vec<usize>,
    pub output_strings: usize,
}

impl<T: Scalar> LosslessChannel<T> {
    pub fn row(&self, j: usize) -> &[T] {
        &self.matrix[j * self.output_strings..(j + 1) * self.output_strings]
    }

    pub fn codebook_size(&self) -> usize {
        self.matrix.len() / self.output_strings
    }

    pub fn decision_set(&self, j: usize) -> Vec<usize> {
        self.decision_partition
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == j)
            .map(|(i, _)| i)
            .collect()
    }

    /// As a validated channel; fails when some decision block is empty.
    pub fn to_channel(&self) -> Result<Channel<T>> {
        Channel::from_rows(
            (0..self.codebook_size())
                .map(|j| self.row(j).to_vec())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeAndDecoder<T> {
    pub k: usize,
    pub rate: f64,
    pub codebook: Vec<Vec<usize>>,
    /// `C_k`: rows of `C^{(k)}` at the codewords.
    pub induced: Channel<T>,
    pub decoder: LosslessChannel<T>,
}

impl<T: Scalar> CodeAndDecoder<T> {
    /// Uniform input over codewords.
    pub fn code_state(&self) -> State<T> {
        State::uniform(&self.induced.input_algebra())
    }

    /// A degenerate decoder has codewords that are never decoded.
    pub fn is_degenerate(&self) -> bool {
        !self.decoder.empty_blocks.is_empty()
    }

    /// `Ω(|O_{C_k} − O_{L_k}|)` under the code-conditioned state.
    pub fn deviation(&self) -> T {
        let r = T::from_usize_lossy(self.codebook.len());
        (0..self.codebook.len())
            .map(|j| {
                self.induced
                    .row(j)
                    .iter()
                    .zip(self.decoder.row(j))
                    .map(|(&c, &l)| (c - l).abs())
                    .sum::<T>()
                    / r
            })
            .sum()
    }

    /// Probability that the decision block misses the sent codeword.
    pub fn error_prob(&self) -> T {
        let r = T::from_usize_lossy(self.codebook.len());
        (0..self.codebook.len())
            .map(|j| {
                self.induced
                    .row(j)
                    .iter()
                    .zip(&self.decoder.decision_partition)
                    .filter(|(_, &d)| d != j)
                    .map(|(&c, _)| c)
                    .sum::<T>()
                    / r
            })
            .sum()
    }
}

fn check_block(channel: &Channel<impl Scalar>, k: usize, r: usize, guard: &Guard) -> Result<()> {
    let m = channel.input_dim() as f64;
    if (r as f64) > m.powi(k as i32) {
        return Err(Error::InvalidArgument(format!(
            "codebook size {r} exceeds the {} input strings",
            m.powi(k as i32)
        )));
    }
    guard.check(channel.output_dim(), k)
}

/// Samples a codebook and builds the induced channel and its MAP decoder.
pub fn build_code_and_decoder<T: Scalar>(
    channel: &Channel<T>,
    state: &State<T>,
    k: usize,
    rate: f64,
    seed: u64,
    guard: &Guard,
) -> Result<CodeAndDecoder<T>> {
    channel.check_input_state(state)?;
    let r = codebook_size(k, rate)?;
    check_block(channel, k, r, guard)?;
    let codebook = sample_codebook(state, k, r, seed)?;
    let (decision, _) = decide(channel, &codebook);
    let rows: Vec<Vec<T>> = codebook.iter().map(|w| channel.power_row(w)).collect();
    let n_out = rows[0].len();

    let mut matrix = vec![T::zero(); r * n_out];
    let mut empty_blocks = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        let block: Vec<usize> = (0..n_out).filter(|&i| decision[i] == j).collect();
        if block.is_empty() {
            empty_blocks.push(j);
            continue;
        }
        let mass: T = block.iter().map(|&i| row[i]).sum();
        for &i in &block {
            matrix[j * n_out + i] = if mass > T::zero() {
                row[i] / mass
            } else {
                T::one() / T::from_usize_lossy(block.len())
            };
        }
    }
    let induced = Channel::new(rows, &Tolerance::with_eq(T::lit(1e-6)))?;
    Ok(CodeAndDecoder {
        k,
        rate,
        codebook,
        induced,
        decoder: LosslessChannel {
            decision_partition: decision,
            matrix,
            empty_blocks,
            output_strings: n_out,
        },
    })
}

/// One seeded codebook at one block length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub k: usize,
    pub rate: f64,
    pub trial: usize,
    pub seed: u64,
    pub deviation: f64,
    pub error_prob: f64,
}

/// Trial means at one block length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingExperimentResult {
    pub k: usize,
    pub rate: f64,
    pub codebook_size: usize,
    pub deviation: f64,
    pub error_prob: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingExperiment {
    pub results: Vec<CodingExperimentResult>,
    pub trials: Vec<TrialRecord>,
}

/// Runs `trials` codebooks (seeds `seed + t`) at each block length in `ks`.
///
/// Trials run in parallel; results are reduced in trial order, so the output
/// does not depend on the thread count.
pub fn coding_experiment<T: Scalar>(
    channel: &Channel<T>,
    state: &State<T>,
    rate: f64,
    ks: &[usize],
    trials: usize,
    seed: u64,
    guard: &Guard,
) -> Result<CodingExperiment> {
    channel.check_input_state(state)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial required".into()));
    }
    if classify(channel, Some(state), &Tolerance::default())?.is_useless() {
        return Err(Error::UselessChannel);
    }
    let mut results = Vec::with_capacity(ks.len());
    let mut records = Vec::with_capacity(ks.len() * trials);
    for &k in ks {
        let r = codebook_size(k, rate)?;
        check_block(channel, k, r, guard)?;
        let per_trial: Vec<Result<TrialRecord>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let trial_seed = seed.wrapping_add(t as u64);
                let book = sample_codebook(state, k, r, trial_seed)?;
                let (decision, _) = decide(channel, &book);
                let (dev, err) = deviation_and_error(channel, &book, &decision);
                Ok(TrialRecord {
                    k,
                    rate,
                    trial: t,
                    seed: trial_seed,
                    deviation: dev.to_f64_lossy(),
                    error_prob: err.to_f64_lossy(),
                })
            })
            .collect();
        let per_trial = per_trial.into_iter().collect::<Result<Vec<_>>>()?;
        let n = trials as f64;
        let deviation = per_trial.iter().map(|t| t.deviation).sum::<f64>() / n;
        let error_prob = per_trial.iter().map(|t| t.error_prob).sum::<f64>() / n;
        results.push(CodingExperimentResult {
            k,
            rate,
            codebook_size: r,
            deviation,
            error_prob,
            trials,
            seed,
        });
        records.extend(per_trial);
    }
    Ok(CodingExperiment {
        results,
        trials: records,
    })
}
