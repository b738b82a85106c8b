use crate::error::{Error, Result};
use crate::topology::Topology;

/// Work counters kept by every shift-tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeCounters {
    /// Calls to the node update primitive.
    pub updates: u64,
    /// Recursive visits made by `diff` calls issued on this tree.
    pub diff_visits: u64,
}

/// A string of length `2^n` under single-letter writes, cyclic shifts and
/// cross-tree difference listing.
#[allow(clippy::len_without_is_empty)]
pub trait ShiftTree {
    type Letter: Clone + PartialEq;

    fn topology(&self) -> &Topology;

    /// Length of the maintained string.
    fn len(&self) -> usize {
        self.topology().leaf_count()
    }

    /// Replaces the maintained string and resets the shift to zero.
    fn init(&mut self, s: &[Self::Letter]) -> Result<()>;

    /// Overwrites the letter at `pos`.
    fn set(&mut self, pos: usize, x: Self::Letter) -> Result<()>;

    /// Cyclically shifts the string `k` positions to the right (left if negative).
    fn shift(&mut self, k: i64);

    /// Ascending positions in `[a, b]` where this string differs from `other`'s.
    fn diff(&self, other: &Self, a: usize, b: usize) -> Result<Vec<usize>>;

    fn get(&self, pos: usize) -> Result<Self::Letter>;

    /// The maintained string, read through the leaves.
    fn materialize(&self) -> Vec<Self::Letter>;

    fn counters(&self) -> TreeCounters;

    fn reset_counters(&mut self);
}

pub(crate) fn check_len(topo: &Topology, found: usize) -> Result<()> {
    if found == topo.leaf_count() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: topo.leaf_count(),
            found,
        })
    }
}

pub(crate) fn check_interval(topo: &Topology, a: usize, b: usize) -> Result<()> {
    let len = topo.leaf_count();
    if a <= b && b < len {
        Ok(())
    } else {
        Err(Error::InvalidInterval { a, b, len })
    }
}

/// First inner node index not touched by `shift(k)`, or `None` when the
/// shift is a multiple of the length. Nodes `1..bound` need an update.
pub(crate) fn shift_update_bound(topo: &Topology, k: usize) -> Option<usize> {
    if k == 0 {
        return None;
    }
    // k & !(k - 1) is 2^j for the largest j with 2^j | k.
    let low = k & k.wrapping_neg();
    Some(topo.leaf_count() / low)
}

/// Leaf indices below node `i`, left to right.
pub(crate) fn subtree_leaves(topo: &Topology, i: usize) -> Vec<usize> {
    let mut level = vec![i];
    while !topo.is_leaf(level[0]) {
        level = level
            .iter()
            .flat_map(|&v| [topo.left_child(v), topo.right_child(v)])
            .collect();
    }
    level
}
