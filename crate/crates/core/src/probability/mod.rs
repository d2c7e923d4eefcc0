//! Algebraic probability: states, independence, distributions and the weak law.

mod distribution;
mod lln;
mod state;
mod subalgebra;

pub use distribution::{annihilator_projection, distribution_of, prob_interval, Atom, Distribution};
pub use lln::{
    chebyshev_tail, chebyshev_tail_of, is_odd_order, lln_moment, lln_moment_of,
    mean_distribution, MAX_MOMENT_ORDER,
};
pub use state::{ProductState, State};
pub use subalgebra::{factor_projections, independence_test, IndependenceReport, Subalgebra, Witness};
