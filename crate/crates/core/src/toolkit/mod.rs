//! File formats and instance generators.

pub mod format;
pub mod generate;

pub use format::{parse_instance, parse_solution, parse_td, serialize_instance, serialize_solution, serialize_td};
pub use generate::{
    Gadget, cutting_decision, gen_from_clique, gen_from_cutting, gen_from_set_cover, gen_random, gen_star_knapsack,
    has_clique, knapsack_01, set_cover_decision,
};
