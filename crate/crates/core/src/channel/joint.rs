use num_complex::Complex;

use crate::algebra::{AtomicAlgebra, MultiIndex, TensorElement};
use crate::error::Result;
use crate::guard::Guard;
use crate::probability::State;
use crate::scalar::Scalar;

use super::Channel;

/// `Ω_C(y ⊗ x) = C(y|x) ω(x)` at level `k`: rows are input strings, columns
/// output strings.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState<T> {
    pub level: usize,
    pub input_strings: usize,
    pub output_strings: usize,
    pub weights: Vec<T>,
    pub input_state: State<T>,
}

impl<T: Scalar> JointState<T> {
    #[inline]
    pub fn weight(&self, x: usize, y: usize) -> T {
        self.weights[x * self.output_strings + y]
    }

    /// Marginal on input strings; recovers `ωᵏ`.
    pub fn input_marginal(&self) -> Vec<T> {
        self.weights
            .chunks(self.output_strings)
            .map(|r| r.iter().copied().sum())
            .collect()
    }

    /// Marginal on output strings: the output source function.
    pub fn output_marginal(&self) -> Vec<T> {
        let mut q = vec![T::zero(); self.output_strings];
        for r in self.weights.chunks(self.output_strings) {
            for (a, &b) in q.iter_mut().zip(r) {
                *a += b;
            }
        }
        q
    }
}

/// Level-`k` joint data of a channel with input state `ω`.
///
/// Both tensor elements live in `⊗ᵏ(Y ⊗ X)`, which is `⊗ᵏY ⊗ ⊗ᵏX` with the
/// factors interleaved: each position carries a pair atom `yⱼ ⊗ xᵢ`, numbered
/// `j·m + i` in a factor algebra of dimension `n·m`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointOutput<T> {
    pub joint_state: JointState<T>,
    /// `O^k_C = Σ y ⊗ C^{(k)}(y)`
    pub channel_output: TensorElement<T>,
    /// `𝒥`, coefficients `C^{(k)}(y|x) ωᵏ(x)`
    pub joint_output: TensorElement<T>,
}

pub fn joint<T: Scalar>(
    channel: &Channel<T>,
    state: &State<T>,
    k: usize,
    guard: &Guard,
) -> Result<JointOutput<T>> {
    channel.check_input_state(state)?;
    let m = channel.input_dim();
    let n = channel.output_dim();
    guard.check(m * n, k)?;

    let ck = channel.power(k);
    let wk: Vec<T> = (0..k).fold(vec![T::one()], |acc, _| {
        acc.iter()
            .flat_map(|&a| state.weights().iter().map(move |&p| a * p))
            .collect()
    });
    let weights = (0..ck.input_dim())
        .flat_map(|x| {
            let wx = wk[x];
            ck.row(x).iter().map(move |&c| c * wx).collect::<Vec<_>>()
        })
        .collect();

    let pair = AtomicAlgebra::new(n * m)?;
    let level1 = |with_state: bool| -> Result<TensorElement<T>> {
        let mut terms = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let mut c = channel.entry(i, j);
                if with_state {
                    c *= state.weight(i);
                }
                terms.push((
                    MultiIndex::from_pairs(&pair, &[(1, j * m + i)])?,
                    Complex::new(c, T::zero()),
                ));
            }
        }
        TensorElement::from_terms(&pair, terms)?.with_level(1)
    };
    let power = |base: TensorElement<T>| -> Result<TensorElement<T>> {
        let mut acc = TensorElement::identity(&pair);
        for _ in 0..k {
            acc = acc.tensor_product(&base)?;
        }
        Ok(acc)
    };
    let channel_output = power(level1(false)?)?;
    let joint_output = power(level1(true)?)?;

    Ok(JointOutput {
        joint_state: JointState {
            level: k,
            input_strings: ck.input_dim(),
            output_strings: ck.output_dim(),
            weights,
            input_state: state.clone(),
        },
        channel_output,
        joint_output,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_channel_diagonal() {
        let c = Channel::<f64>::identity(3).unwrap();
        let w = State::<f64>::from_weights(&[0.2, 0.3, 0.5]).unwrap();
        let j = joint(&c, &w, 1, &Guard::default()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let want = if x == y { w.weight(x) } else { 0.0 };
                assert_eq!(j.joint_state.weight(x, y), want);
            }
        }
    }

    #[test]
    fn bsc_level_one() {
        let c = Channel::<f64>::bsc(0.1).unwrap();
        let w = State::<f64>::from_weights(&[0.5, 0.5]).unwrap();
        let j = joint(&c, &w, 1, &Guard::default()).unwrap().joint_state;
        assert!((j.weight(0, 0) - 0.45).abs() < 1e-15);
        assert!((j.weight(1, 0) - 0.05).abs() < 1e-15);
        assert!((j.weight(0, 1) - 0.05).abs() < 1e-15);
        assert!((j.weight(1, 1) - 0.45).abs() < 1e-15);
    }

    #[test]
    fn memoryless_factorization_and_marginals() {
        let c = Channel::<f64>::from_rows(vec![vec![0.7, 0.2, 0.1], vec![0.1, 0.3, 0.6]]).unwrap();
        let w = State::<f64>::from_weights(&[0.4, 0.6]).unwrap();
        let j1 = joint(&c, &w, 1, &Guard::default()).unwrap().joint_state;
        let j2 = joint(&c, &w, 2, &Guard::default()).unwrap().joint_state;
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y1 in 0..3 {
                    for y2 in 0..3 {
                        let lhs = j2.weight(x1 * 2 + x2, y1 * 3 + y2);
                        let rhs = j1.weight(x1, y1) * j1.weight(x2, y2);
                        assert!((lhs - rhs).abs() < 1e-15);
                    }
                }
            }
        }
        let im = j2.input_marginal();
        for (x, v) in im.iter().enumerate() {
            assert!((v - w.weight(x / 2) * w.weight(x % 2)).abs() < 1e-15);
        }
        let total: f64 = j2.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        let q = c.push_state(&w).unwrap();
        let om = j1.output_marginal();
        for (a, b) in om.iter().zip(q.weights()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn tensor_outputs_match_joint_state() {
        let c = Channel::<f64>::bsc(0.2).unwrap();
        let w = State::<f64>::from_weights(&[0.3, 0.7]).unwrap();
        let k = 2;
        let out = joint(&c, &w, k, &Guard::default()).unwrap();
        let dense_joint = out.joint_output.expand();
        let dense_chan = out.channel_output.expand();
        let (m, n) = (2, 2);
        // pair atom at position p is y·m + x; strings position-1 most significant
        for x in 0..4usize {
            for y in 0..4usize {
                let (x1, x2) = (x / 2, x % 2);
                let (y1, y2) = (y / 2, y % 2);
                let s = (y1 * m + x1) * (n * m) + (y2 * m + x2);
                assert!((dense_joint[s].re - out.joint_state.weight(x, y)).abs() < 1e-15);
                let cxy = c.entry(x1, y1) * c.entry(x2, y2);
                assert!((dense_chan[s].re - cxy).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn guard() {
        let c = Channel::<f64>::bsc(0.2).unwrap();
        let w = State::<f64>::from_weights(&[0.3, 0.7]).unwrap();
        assert!(joint(&c, &w, 13, &Guard::default()).is_err());
    }
}
