//! Prefix-free codes over an `n`-symbol code alphabet.
//!
//! A word `c₁⋯c_k` embeds as the basis string `y_{c₁} ⊗ ⋯ ⊗ y_{c_k}` of the
//! tensor algebra over the code alphabet. Two words are orthogonal exactly
//! when neither is a prefix of the other, so a code is prefix-free iff its
//! embedded words are pairwise orthogonal.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AtomicAlgebra, TensorElement};
use crate::error::{Error, Result};
use crate::probability::State;
use crate::scalar::Scalar;

use super::entropy_base;

/// Largest alphabet representable with single-character digits `0-9a-z`.
pub const MAX_CODE_ALPHABET: usize = 36;

/// A code assigning a word to each source letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeRepr", into = "CodeRepr")]
pub struct Code {
    alphabet_size: usize,
    words: Vec<Vec<usize>>,
}

impl Code {
    pub fn new(alphabet_size: usize, words: Vec<Vec<usize>>) -> Result<Self> {
        if !(2..=MAX_CODE_ALPHABET).contains(&alphabet_size) {
            return Err(Error::InvalidCode(format!(
                "code alphabet size {alphabet_size} outside 2..={MAX_CODE_ALPHABET}"
            )));
        }
        if words.is_empty() {
            return Err(Error::InvalidCode("no words".into()));
        }
        for w in &words {
            if w.is_empty() {
                return Err(Error::InvalidCode("empty word".into()));
            }
            if let Some(&s) = w.iter().find(|&&s| s >= alphabet_size) {
                return Err(Error::InvalidCode(format!(
                    "symbol {s} outside alphabet of size {alphabet_size}"
                )));
            }
        }
        Ok(Self {
            alphabet_size,
            words,
        })
    }

    /// Parses words written with digits `0-9a-z`.
    pub fn from_strings<S: AsRef<str>>(alphabet_size: usize, words: &[S]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|w| {
                w.as_ref()
                    .chars()
                    .map(|c| {
                        c.to_digit(36)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::InvalidCode(format!("bad symbol {c:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet_size, parsed)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Number of source letters.
    pub fn source_dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    pub fn word_string(&self, i: usize) -> String {
        self.words[i]
            .iter()
            .map(|&s| std::char::from_digit(s as u32, 36).expect("symbol < 36"))
            .collect()
    }

    pub fn word_strings(&self) -> Vec<String> {
        (0..self.words.len()).map(|i| self.word_string(i)).collect()
    }

    /// No word is a prefix of another (equal words count as prefixes).
    pub fn is_prefix_free(&self) -> bool {
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let k = a.len().min(b.len());
                if a[..k] == b[..k] {
                    return false;
                }
            }
        }
        true
    }

    /// The words as basis strings of `⊗^∞ B′`, `B′` the code alphabet algebra.
    pub fn embedded_words<T: Scalar>(&self) -> Vec<TensorElement<T>> {
        let a = AtomicAlgebra::new(self.alphabet_size).expect("size ≥ 2");
        self.words
            .iter()
            .map(|w| TensorElement::string_projection(&a, w).expect("symbols validated"))
            .collect()
    }

    /// Prefix-freeness decided by multiplying embedded words pairwise.
    pub fn embedded_words_orthogonal<T: Scalar>(&self) -> bool {
        let e = self.embedded_words::<T>();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if !e[i].try_mul(&e[j]).expect("same algebra").is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeRepr {
    n: usize,
    words: Vec<String>,
}

impl TryFrom<CodeRepr> for Code {
    type Error = Error;

    fn try_from(r: CodeRepr) -> Result<Self> {
        let code = Self::from_strings(r.n, &r.words)?;
        if let Some(&s) = code.words.iter().flatten().find(|&&s| s >= r.n) {
            return Err(Error::InvalidCode(format!("symbol {s} outside alphabet")));
        }
        Ok(code)
    }
}

impl From<Code> for CodeRepr {
    fn from(c: Code) -> Self {
        Self {
            n: c.alphabet_size,
            words: c.word_strings(),
        }
    }
}

fn check_lengths(lengths: &[usize], n: usize) -> Result<()> {
    if lengths.is_empty() {
        return Err(Error::InvalidArgument("no lengths".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("alphabet size {n} < 2")));
    }
    if lengths.contains(&0) {
        return Err(Error::InvalidArgument("word lengths must be positive".into()));
    }
    Ok(())
}

/// `(Σᵢ n^{k_m − kᵢ}, n^{k_m})` with `k_m` the longest length.
pub fn kraft_sums(lengths: &[usize], n: usize) -> Result<(BigUint, BigUint)> {
    check_lengths(lengths, n)?;
    let km = *lengths.iter().max().expect("nonempty");
    let base = BigUint::from(n);
    let lhs = lengths
        .iter()
        .fold(BigUint::zero(), |acc, &k| acc + base.pow((km - k) as u32));
    Ok((lhs, base.pow(km as u32)))
}

/// Whether lengths satisfy `Σᵢ n^{k_m − kᵢ} ≤ n^{k_m}` (exact integer arithmetic).
pub fn kraft_check(lengths: &[usize], n: usize) -> Result<bool> {
    let (lhs, rhs) = kraft_sums(lengths, n)?;
    Ok(lhs <= rhs)
}

/// A prefix-free code with the given lengths, by lexicographic interval
/// allocation over lengths in increasing order. Words are returned in the
/// input order.
pub fn kraft_construct(lengths: &[usize], n: usize) -> Result<Code> {
    let (lhs, rhs) = kraft_sums(lengths, n)?;
    if lhs > rhs {
        return Err(Error::KraftViolated {
            numerator: lhs.to_string(),
            denominator: rhs.to_string(),
        });
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));
    let base = BigUint::from(n);
    let mut words = vec![Vec::new(); lengths.len()];
    let mut next = BigUint::zero();
    let mut prev_len = lengths[order[0]];
    for &i in &order {
        let k = lengths[i];
        next *= base.pow((k - prev_len) as u32);
        prev_len = k;
        let digits = if next.is_zero() {
            Vec::new()
        } else {
            next.to_radix_be(n as u32)
        };
        // next < n^k, so the digits fit in k symbols
        let mut word = vec![0usize; k - digits.len()];
        word.extend(digits.into_iter().map(usize::from));
        words[i] = word;
        next += BigUint::one();
    }
    Code::new(n, words)
}

/// Expected length and noiseless-coding bound of a code under a state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeMetrics<T> {
    /// `Σ pᵢkᵢ`
    pub expected_length: T,
    /// `Σ pᵢkᵢ + Σ pᵢ log_n pᵢ = E[k] − H_n(ω)`; nonnegative for prefix-free codes.
    pub noiseless_bound_value: T,
}

pub fn code_metrics<T: Scalar>(code: &Code, state: &State<T>) -> Result<CodeMetrics<T>> {
    if !code.is_prefix_free() {
        return Err(Error::NotPrefixFree);
    }
    if code.source_dim() != state.dim() {
        return Err(Error::AlgebraMismatch(format!(
            "{} code words for a source of dimension {}",
            code.source_dim(),
            state.dim()
        )));
    }
    let expected_length: T = state
        .weights()
        .iter()
        .zip(code.lengths())
        .map(|(&p, k)| p * T::from_usize_lossy(k))
        .sum();
    let h = entropy_base(state, T::from_usize_lossy(code.alphabet_size()));
    Ok(CodeMetrics {
        expected_length,
        noiseless_bound_value: expected_length - h,
    })
}

#[derive(Clone, Copy, PartialEq)]
struct Prob(f64);

impl Eq for Prob {}

impl PartialOrd for Prob {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prob {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// `n`-ary Huffman code for the state's weights.
///
/// Dummy zero-weight leaves pad the alphabet so every merge takes `n` nodes.
/// Nodes are ordered by (weight, creation index); dummies come first, then
/// letters in index order, then merged nodes. Children of a merge receive
/// symbols `0, 1, …` in that order.
pub fn huffman_code<T: Scalar>(state: &State<T>, n: usize) -> Result<Code> {
    if !(2..=MAX_CODE_ALPHABET).contains(&n) {
        return Err(Error::InvalidArgument(format!("alphabet size {n}")));
    }
    let d = state.dim();
    if d == 1 {
        return Code::new(n, vec![vec![0]]);
    }
    let pad = (n - 1 - (d - 1) % (n - 1)) % (n - 1);
    // node ids: 0..pad dummies, pad..pad+d letters, then internal nodes
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; pad + d];
    let mut heap = BinaryHeap::new();
    for id in 0..pad {
        heap.push(Reverse((Prob(0.0), id)));
    }
    for (i, &p) in state.weights().iter().enumerate() {
        heap.push(Reverse((Prob(p.to_f64_lossy()), pad + i)));
    }
    while heap.len() > 1 {
        let id = parent.len();
        parent.push(None);
        let mut total = 0.0;
        for sym in 0..n {
            let Reverse((Prob(p), child)) = heap.pop().expect("enough nodes by padding");
            total += p;
            parent[child] = Some((id, sym));
        }
        heap.push(Reverse((Prob(total), id)));
    }
    let words = (0..d)
        .map(|i| {
            let mut word = Vec::new();
            let mut node = pad + i;
            while let Some((up, sym)) = parent[node] {
                word.push(sym);
                node = up;
            }
            word.reverse();
            word
        })
        .collect();
    Code::new(n, words)
}
