//! Shift-trees: segment trees over a string of length `2^n` that support
//! single-letter writes, cyclic shifts costing `O(m / 2^j)` for a shift
//! divisible by `2^j`, and listing the positions where two trees differ.
//!
//! Two variants are provided. [`HashedShiftTree`] stores polynomial hashes
//! and is correct with high probability. [`TaggedShiftTree`] stores tags in
//! a shared union-find [`TagStore`] and is deterministic. The
//! [`subset_sum`] module builds the `O(m log m)` modular subset sum solver on
//! top of either one.

pub mod error;
pub mod hash;
pub mod hashed;
pub mod schedule;
pub mod subset_sum;
pub mod tag_store;
pub mod tagged;
pub mod topology;
pub mod tree;

pub use error::{Error, Result};
pub use hash::{HashContext, MERSENNE_61};
pub use hashed::HashedShiftTree;
pub use schedule::{bitrev, ShiftSchedule};
pub use subset_sum::{solve, solve_naive, Backend, Instance, Solution, SolveStats, Solver, SumSet};
pub use tag_store::{ClassId, StoreCounters, TagId, TagStore};
pub use tagged::{shared_store, SharedStore, TaggedShiftTree};
pub use topology::Topology;
pub use tree::{ShiftTree, TreeCounters};
