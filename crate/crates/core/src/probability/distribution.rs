//! Distribution functions through annihilator projections.
//!
//! For self-adjoint `x₁,…,x_r` and target values `t⃗`, the projection `J_S` is
//! the unit of the subalgebra annihilating every `tᵢ1 − xᵢ`: the sum of the
//! atoms on which each `xᵢ` takes the value `tᵢ`. The ω-distribution is
//! `f_S(t⃗) = ω(J_S)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::{AtomicAlgebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

use super::State;

/// One atom of a (joint) distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom<T> {
    pub value: Vec<T>,
    pub mass: T,
}

/// A finite distribution, atoms sorted lexicographically by value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr<T>", into = "DistributionRepr<T>")]
#[serde(bound = "T: Scalar")]
pub struct Distribution<T> {
    atoms: Vec<Atom<T>>,
}

fn lex<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}

impl<T: Scalar> Distribution<T> {
    /// Builds a distribution, merging repeated values and sorting.
    pub fn from_atoms(atoms: Vec<Atom<T>>, tol: &Tolerance<T>) -> Result<Self> {
        let arity = atoms.first().map_or(0, |a| a.value.len());
        let mut merged: Vec<Atom<T>> = Vec::new();
        for a in atoms {
            if a.value.len() != arity {
                return Err(Error::InvalidArgument("mixed atom arity".into()));
            }
            if !(a.mass >= -tol.eq) {
                return Err(Error::InvalidArgument(format!("negative mass {}", a.mass)));
            }
            match merged.iter_mut().find(|m| {
                m.value
                    .iter()
                    .zip(&a.value)
                    .all(|(&x, &y)| tol.approx_eq(x, y))
            }) {
                Some(m) => m.mass += a.mass,
                None => merged.push(a),
            }
        }
        let total: T = merged.iter().map(|a| a.mass).sum();
        if !tol.approx_eq(total, T::one()) {
            return Err(Error::InvalidArgument(format!("masses sum to {total}")));
        }
        merged.sort_by(|a, b| lex(&a.value, &b.value));
        Ok(Self { atoms: merged })
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Mass at exactly `t` (within `tol.eq`).
    pub fn mass_at(&self, t: &[T], tol: &Tolerance<T>) -> T {
        self.atoms
            .iter()
            .filter(|a| a.value.iter().zip(t).all(|(&x, &y)| tol.approx_eq(x, y)))
            .map(|a| a.mass)
            .sum()
    }

    /// `P(X ≤ t)` componentwise.
    pub fn cdf(&self, t: &[T]) -> T {
        self.atoms
            .iter()
            .filter(|a| a.value.iter().zip(t).all(|(&x, &y)| x <= y))
            .map(|a| a.mass)
            .sum()
    }

    /// `Σ mass · f(value)`.
    pub fn expect(&self, f: impl Fn(&[T]) -> T) -> T {
        self.atoms.iter().map(|a| a.mass * f(&a.value)).sum()
    }
}

fn check_inputs<T: Scalar>(
    algebra: &AtomicAlgebra,
    s: &[Element<T>],
    tol: &Tolerance<T>,
) -> Result<()> {
    for x in s {
        algebra.check_same(x.algebra())?;
        if !x.is_self_adjoint(tol) {
            return Err(Error::NotSelfAdjoint);
        }
    }
    Ok(())
}

/// `J_S` for the event "`xᵢ = tᵢ` for all `i`".
pub fn annihilator_projection<T: Scalar>(
    algebra: &AtomicAlgebra,
    s: &[Element<T>],
    t: &[T],
    tol: &Tolerance<T>,
) -> Result<Element<T>> {
    check_inputs(algebra, s, tol)?;
    if s.len() != t.len() {
        return Err(Error::InvalidArgument(format!(
            "{} elements but {} target values",
            s.len(),
            t.len()
        )));
    }
    let set: Vec<usize> = (0..algebra.dim())
        .filter(|&i| {
            s.iter()
                .zip(t)
                .all(|(x, &ti)| tol.approx_eq(x.coeffs()[i].re, ti))
        })
        .collect();
    Element::projection(algebra, &set)
}

/// Joint ω-distribution of the self-adjoint sequence `s`.
pub fn distribution_of<T: Scalar>(
    s: &[Element<T>],
    state: &State<T>,
    tol: &Tolerance<T>,
) -> Result<Distribution<T>> {
    check_inputs(state.algebra(), s, tol)?;
    let atoms = (0..state.dim())
        .map(|i| Atom {
            value: s.iter().map(|x| x.coeffs()[i].re).collect(),
            mass: state.weight(i),
        })
        .collect();
    Distribution::from_atoms(atoms, tol)
}

/// `ω` of the projection onto atoms with `a ≤ xᵢ ≤ b`.
pub fn prob_interval<T: Scalar>(
    x: &Element<T>,
    state: &State<T>,
    a: T,
    b: T,
    tol: &Tolerance<T>,
) -> Result<T> {
    check_inputs(state.algebra(), std::slice::from_ref(x), tol)?;
    let set: Vec<usize> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.re >= a - tol.eq && c.re <= b + tol.eq)
        .map(|(i, _)| i)
        .collect();
    state.expect(&Element::projection(state.algebra(), &set)?)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueRepr<T> {
    Scalar(T),
    Joint(Vec<T>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRepr<T> {
    t: ValueRepr<T>,
    p: T,
}

/// JSON shape `{"atoms": [{"t": value, "p": mass}]}`; `t` is an array for joint distributions.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionRepr<T> {
    atoms: Vec<AtomRepr<T>>,
}

impl<T: Scalar> TryFrom<DistributionRepr<T>> for Distribution<T> {
    type Error = Error;

    fn try_from(r: DistributionRepr<T>) -> Result<Self> {
        let atoms = r
            .atoms
            .into_iter()
            .map(|a| Atom {
                value: match a.t {
                    ValueRepr::Scalar(v) => vec![v],
                    ValueRepr::Joint(v) => v,
                },
                mass: a.p,
            })
            .collect();
        Self::from_atoms(atoms, &Tolerance::default())
    }
}

impl<T: Scalar> From<Distribution<T>> for DistributionRepr<T> {
    fn from(d: Distribution<T>) -> Self {
        Self {
            atoms: d
                .atoms
                .into_iter()
                .map(|a| AtomRepr {
                    t: if a.value.len() == 1 {
                        ValueRepr::Scalar(a.value[0])
                    } else {
                        ValueRepr::Joint(a.value)
                    },
                    p: a.mass,
                })
                .collect(),
        }
    }
}
