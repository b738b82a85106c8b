//! Index arithmetic for the implicit, shift-skewed perfect binary tree.
//!
//! Nodes are numbered from 1. Level `k` holds the indices `2^k ..= 2^(k+1) - 1`,
//! the root is node 1 and the leaves are `2^n ..= 2^(n+1) - 1`. Which index is
//! the left or right child of a node depends on the shift offset `delta`: the
//! `(n - k)`-th least significant bit of `delta` rotates the child links into
//! level `k` by one slot. Shifting the maintained string therefore only
//! relinks levels instead of moving data.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    depth: u32,
    delta: usize,
}

impl Topology {
    /// A tree with `2^depth` leaves and zero shift.
    pub fn new(depth: u32) -> Self {
        assert!(depth < usize::BITS - 1, "tree depth {depth} is too large");
        Self { depth, delta: 0 }
    }

    pub fn with_delta(depth: u32, delta: usize) -> Self {
        let mut topo = Self::new(depth);
        topo.set_delta(delta);
        topo
    }

    #[inline]
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Number of leaves, `2^depth`.
    #[inline]
    pub fn leaf_count(&self) -> usize {
        1 << self.depth
    }

    #[inline]
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Sets the shift offset, reduced into `[0, 2^depth)`.
    #[inline]
    pub fn set_delta(&mut self, delta: usize) {
        self.delta = delta & self.mask();
    }

    #[inline]
    fn mask(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Reduces a signed offset into `[0, 2^depth)`.
    #[inline]
    pub fn normalize(&self, k: i64) -> usize {
        // Two's complement wrap keeps the low bits intact for negative offsets.
        (k as usize) & self.mask()
    }

    #[inline]
    pub fn is_leaf(&self, i: usize) -> bool {
        i >= self.leaf_count()
    }

    /// Level of node `i`: 0 for the root, `depth` for leaves.
    #[inline]
    pub fn level(i: usize) -> u32 {
        debug_assert!(i >= 1);
        usize::BITS - 1 - i.leading_zeros()
    }

    /// The bit of `delta` that skews the child links into level `k`.
    #[inline]
    pub fn skew(&self, k: u32) -> usize {
        debug_assert!(k <= self.depth);
        (self.delta >> (self.depth - k)) & 1
    }

    #[inline]
    pub fn left_child(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && !self.is_leaf(i), "node {i} is not an inner node");
        let below = 2usize << Self::level(i);
        ((2 * i - self.skew(Self::level(i) + 1)) & (below - 1)) + below
    }

    #[inline]
    pub fn right_child(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && !self.is_leaf(i), "node {i} is not an inner node");
        let below = 2usize << Self::level(i);
        ((2 * i + 1 - self.skew(Self::level(i) + 1)) & (below - 1)) + below
    }

    #[inline]
    pub fn parent(&self, i: usize) -> usize {
        debug_assert!(i > 1 && i < 2 * self.leaf_count(), "node {i} has no parent");
        let k = Self::level(i);
        let first = 1usize << k;
        (((i + self.skew(k)) & (first - 1)) + first) / 2
    }

    /// Leaf node holding string position `pos`.
    pub fn leaf_of_position(&self, pos: usize) -> Result<usize> {
        if pos >= self.leaf_count() {
            return Err(Error::PositionOutOfRange {
                pos,
                len: self.leaf_count(),
            });
        }
        Ok(self.leaf_index(pos))
    }

    #[inline]
    pub(crate) fn leaf_index(&self, pos: usize) -> usize {
        (pos.wrapping_sub(self.delta) & self.mask()) + self.leaf_count()
    }

    /// Inverse of [`Topology::leaf_of_position`].
    #[inline]
    pub fn position_of_leaf(&self, leaf: usize) -> usize {
        debug_assert!(self.is_leaf(leaf));
        (leaf - self.leaf_count() + self.delta) & self.mask()
    }

    /// Length of the string associated with a node at level `k`.
    #[inline]
    pub fn span(&self, k: u32) -> usize {
        1 << (self.depth - k)
    }
}
