//! Exact, parameterized and approximate solvers for neighborhood-constrained
//! knapsack problems on graphs.
//!
//! A selected vertex only pays out its profit when its neighborhood agrees:
//! under the 1-Neighborhood rule one selected out-neighbor suffices, under the
//! All-Neighborhood rule every out-neighbor must be selected. See
//! [`instance::Variant`] for the four problem flavors.

pub mod approx;
pub mod colorcode;
pub mod dp_tw;
pub mod error;
pub mod instance;
pub mod oracle;
pub mod pareto;
pub mod toolkit;
pub mod treedecomp;

pub use error::{NkError, Result};
pub use instance::{Graph, Instance, RawInstance, Variant, VertexId};
pub use oracle::{SolveResult, brute_force};
pub use pareto::{ParetoList, ProfitMode};
