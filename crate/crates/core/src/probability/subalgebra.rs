//! Generated subalgebras and independence.
//!
//! A unital subalgebra of an atomic algebra is spanned by the projections
//! onto the blocks of a partition of the atoms. The subalgebra generated by a
//! set of self-adjoint elements groups atoms on which every generator takes
//! the same value.

use crate::algebra::{AtomicAlgebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

use super::State;

/// A unital subalgebra, described by a partition of the (0-based) atom indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    parent: AtomicAlgebra,
    blocks: Vec<Vec<usize>>,
}

impl Subalgebra {
    /// Validates that `blocks` partition `0..dim` into nonempty sets.
    pub fn from_blocks(parent: &AtomicAlgebra, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; parent.dim()];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &i in b {
                parent.check_index(i)?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidArgument(format!("atom {i} in two blocks")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!("atom {i} not covered")));
        }
        Ok(Self {
            parent: parent.clone(),
            blocks,
        })
    }

    /// The smallest unital subalgebra containing `generators`.
    ///
    /// Atoms `i` and `j` share a block iff every generator has equal `i`-th and
    /// `j`-th coefficients within `tol.eq`; each atom joins the first block whose
    /// representative (lowest atom) matches. An empty generator set gives the
    /// scalars.
    pub fn generated<T: Scalar>(
        parent: &AtomicAlgebra,
        generators: &[Element<T>],
        tol: &Tolerance<T>,
    ) -> Result<Self> {
        for g in generators {
            parent.check_same(g.algebra())?;
            if !g.is_self_adjoint(tol) {
                return Err(Error::NotSelfAdjoint);
            }
        }
        let same = |i: usize, j: usize| {
            generators
                .iter()
                .all(|g| tol.approx_eq(g.coeffs()[i].re, g.coeffs()[j].re))
        };
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..parent.dim() {
            match blocks.iter_mut().find(|b| same(b[0], i)) {
                Some(b) => b.push(i),
                None => blocks.push(vec![i]),
            }
        }
        Ok(Self {
            parent: parent.clone(),
            blocks,
        })
    }

    pub fn parent(&self) -> &AtomicAlgebra {
        &self.parent
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The atomic basis of the subalgebra: `P_β = Σ_{i∈β} xᵢ`.
    pub fn block_projections<T: Scalar>(&self) -> Vec<Element<T>> {
        self.blocks
            .iter()
            .map(|b| Element::projection(&self.parent, b).expect("valid block"))
            .collect()
    }

    /// Whether `x` lies in the subalgebra (constant on every block).
    pub fn contains<T: Scalar>(&self, x: &Element<T>, tol: &Tolerance<T>) -> bool {
        self.parent.check_same(x.algebra()).is_ok()
            && self.blocks.iter().all(|b| {
                let c0 = x.coeffs()[b[0]];
                b.iter().all(|&i| tol.approx_eq_c(x.coeffs()[i], c0))
            })
    }
}

/// A pair of block projections on which the state fails to factorize.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub p: Element<T>,
    pub q: Element<T>,
    /// `ω(PQ)`
    pub joint: T,
    /// `ω(P)ω(Q)`
    pub product: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceReport<T> {
    pub independent: bool,
    pub witness: Option<Witness<T>>,
}

/// Decides whether the subalgebras generated by `s1` and `s2` are
/// `ω`-independent: `ω(PQ) = ω(P)ω(Q)` for every pair of block projections.
pub fn independence_test<T: Scalar>(
    s1: &[Element<T>],
    s2: &[Element<T>],
    state: &State<T>,
    tol: &Tolerance<T>,
) -> Result<IndependenceReport<T>> {
    let a = state.algebra();
    let b1 = Subalgebra::generated(a, s1, tol)?;
    let b2 = Subalgebra::generated(a, s2, tol)?;
    for p in b1.block_projections::<T>() {
        let wp = state.expect(&p)?;
        for q in b2.block_projections::<T>() {
            let wq = state.expect(&q)?;
            let joint = state.expect(&p.try_mul(&q)?)?;
            let product = wp * wq;
            if !tol.approx_eq(joint, product) {
                return Ok(IndependenceReport {
                    independent: false,
                    witness: Some(Witness {
                        p,
                        q,
                        joint,
                        product,
                    }),
                });
            }
        }
    }
    Ok(IndependenceReport {
        independent: true,
        witness: None,
    })
}

/// Projections onto the atoms of one factor of a composite algebra
/// `A₁ ⊗ ⋯ ⊗ A_r` of dimension `Π dims`, atoms indexed row-major.
pub fn factor_projections<T: Scalar>(dims: &[usize], factor: usize) -> Result<Vec<Element<T>>> {
    if factor >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "factor {factor} of {} factors",
            dims.len()
        )));
    }
    let total: usize = dims.iter().product();
    let algebra = AtomicAlgebra::new(total)?;
    let stride: usize = dims[factor + 1..].iter().product();
    let d = dims[factor];
    Ok((0..d)
        .map(|v| {
            let set: Vec<usize> = (0..total).filter(|&i| (i / stride) % d == v).collect();
            Element::projection(&algebra, &set).expect("in range")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[f64]) -> Element<f64> {
        Element::from_real(v).unwrap()
    }

    #[test]
    fn equal_coefficient_grouping() {
        let t = Tolerance::default();
        let a = AtomicAlgebra::new(3).unwrap();
        let s = Subalgebra::generated(&a, &[el(&[1.0, 1.0, 2.0])], &t).unwrap();
        assert_eq!(s.blocks(), &[vec![0, 1], vec![2]]);
        let scalars = Subalgebra::generated::<f64>(&a, &[], &t).unwrap();
        assert_eq!(scalars.blocks(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn joint_refinement() {
        let t = Tolerance::default();
        let a = AtomicAlgebra::new(4).unwrap();
        let gens = [el(&[1.0, 1.0, 2.0, 2.0]), el(&[1.0, 3.0, 1.0, 3.0])];
        let s = Subalgebra::generated(&a, &gens, &t).unwrap();
        assert_eq!(s.num_blocks(), 4);
        for g in &gens {
            assert!(s.contains(g, &t));
        }
    }

    #[test]
    fn rejects_non_self_adjoint_generator() {
        let t = Tolerance::default();
        let a = AtomicAlgebra::new(2).unwrap();
        let z = Element::new(
            a.clone(),
            vec![num_complex::Complex::new(0.0, 1.0), num_complex::Complex::new(1.0, 0.0)],
        )
        .unwrap();
        assert_eq!(
            Subalgebra::generated(&a, &[z], &t).unwrap_err(),
            Error::NotSelfAdjoint
        );
    }

    #[test]
    fn block_validation() {
        let a = AtomicAlgebra::new(3).unwrap();
        assert!(Subalgebra::from_blocks(&a, vec![vec![0], vec![1, 2]]).is_ok());
        assert!(Subalgebra::from_blocks(&a, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Subalgebra::from_blocks(&a, vec![vec![0], vec![1]]).is_err());
        assert!(Subalgebra::from_blocks(&a, vec![vec![0, 1, 2], vec![]]).is_err());
    }

    #[test]
    fn product_state_is_independent() {
        let t = Tolerance::default();
        let w = State::<f64>::from_weights(&[0.3, 0.7])
            .unwrap()
            .product(&State::<f64>::from_weights(&[0.6, 0.4]).unwrap());
        let s1 = factor_projections::<f64>(&[2, 2], 0).unwrap();
        let s2 = factor_projections::<f64>(&[2, 2], 1).unwrap();
        let r = independence_test(&s1, &s2, &w, &t).unwrap();
        assert!(r.independent);
        assert!(r.witness.is_none());
    }

    #[test]
    fn correlated_state_has_witness() {
        let t = Tolerance::default();
        let w = State::<f64>::from_weights(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        let s1 = factor_projections::<f64>(&[2, 2], 0).unwrap();
        let s2 = factor_projections::<f64>(&[2, 2], 1).unwrap();
        let r = independence_test(&s1, &s2, &w, &t).unwrap();
        assert!(!r.independent);
        let wit = r.witness.unwrap();
        // blocks in order: P₁ = first factor atom 0, Q₁ = second factor atom 0
        // ω(P₁Q₁) = 0.5 ≠ 0.25 is found first
        assert_eq!(wit.product, 0.25);
        assert!(wit.joint == 0.5 || wit.joint == 0.0);
        // the pair named in the examples, (P₁, Q₂), also fails
        let pq = s1[0].try_mul(&s2[1]).unwrap();
        assert_eq!(w.expect(&pq).unwrap(), 0.0);
    }

    #[test]
    fn identity_generates_scalars() {
        let t = Tolerance::default();
        let w = State::<f64>::from_weights(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let s1 = vec![el(&[1.0, 5.0, 2.0, 7.0])];
        let s2 = vec![Element::identity(w.algebra())];
        assert!(independence_test(&s1, &s2, &w, &t).unwrap().independent);
    }

    #[test]
    fn factor_projection_layout() {
        let p = factor_projections::<f64>(&[2, 3], 1).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1].real_coeffs(), vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0]);
        let q = factor_projections::<f64>(&[2, 3], 0).unwrap();
        assert_eq!(q[0].real_coeffs(), vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
    }
}
