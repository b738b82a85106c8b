//! Shift-tree whose inner nodes store polynomial hashes of their strings.
//!
//! Every node `i` holds `h(Str(i))`, where leaves hold raw letters. Equal
//! hashes across two trees are taken to mean equal substrings, so `diff` is
//! correct unless a hash collision occurs (probability at most
//! `m log m / p` per call).

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hash::HashContext;
use crate::topology::Topology;
use crate::tree::{
    check_interval, check_len, shift_update_bound, subtree_leaves, ShiftTree, TreeCounters,
};

pub struct HashedShiftTree {
    topo: Topology,
    /// `nodes[0]` is unused; leaves start at `2^depth`.
    nodes: Vec<u64>,
    ctx: Arc<HashContext>,
    updates: u64,
    diff_visits: AtomicU64,
}

impl HashedShiftTree {
    /// An all-zero string of length `2^depth`.
    pub fn new(ctx: Arc<HashContext>, depth: u32) -> Result<Self> {
        let topo = Topology::new(depth);
        if ctx.max_len() < topo.leaf_count() {
            return Err(Error::ContextTooSmall {
                max_len: ctx.max_len(),
                needed: topo.leaf_count(),
            });
        }
        Ok(Self {
            topo,
            nodes: vec![0; 2 * topo.leaf_count()],
            ctx,
            updates: 0,
            diff_visits: AtomicU64::new(0),
        })
    }

    /// Builds a tree holding `s`, whose length must be a power of two.
    pub fn from_letters(ctx: Arc<HashContext>, s: &[u64]) -> Result<Self> {
        if !s.len().is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: s.len().next_power_of_two(),
                found: s.len(),
            });
        }
        let mut tree = Self::new(ctx, s.len().trailing_zeros())?;
        tree.init(s)?;
        Ok(tree)
    }

    pub fn context(&self) -> &Arc<HashContext> {
        &self.ctx
    }

    /// Stored value of node `i`: a letter for leaves, a hash otherwise.
    pub fn node_value(&self, i: usize) -> u64 {
        self.nodes[i]
    }

    /// Hash of the whole string.
    pub fn root_hash(&self) -> u64 {
        self.nodes[1]
    }

    /// Recomputes the hash of inner node `i` from its children.
    pub fn update(&mut self, i: usize) {
        debug_assert!(i >= 1 && !self.topo.is_leaf(i));
        self.updates += 1;
        let left = self.nodes[self.topo.left_child(i)];
        let right = self.nodes[self.topo.right_child(i)];
        let span = self.topo.span(Topology::level(i) + 1);
        self.nodes[i] = self.ctx.combine(left, right, span);
    }

    /// Letters below node `i`, left to right.
    pub fn node_string(&self, i: usize) -> Vec<u64> {
        subtree_leaves(&self.topo, i)
            .into_iter()
            .map(|leaf| self.nodes[leaf])
            .collect()
    }

    /// Checks every stored hash against a from-scratch evaluation.
    pub fn audit(&self) -> bool {
        (1..self.topo.leaf_count())
            .all(|i| self.ctx.hash_string(&self.node_string(i)) == Ok(self.nodes[i]))
    }

    #[allow(clippy::too_many_arguments)]
    fn find_differences(
        &self,
        other: &Self,
        a: usize,
        b: usize,
        i: usize,
        j: usize,
        x: usize,
        y: usize,
        out: &mut Vec<usize>,
        visits: &mut u64,
    ) {
        *visits += 1;
        if y < a || b < x || self.nodes[i] == other.nodes[j] {
            return;
        }
        if x == y {
            out.push(x);
            return;
        }
        let z = (x + y).div_ceil(2);
        let (t, q) = (&self.topo, &other.topo);
        self.find_differences(
            other,
            a,
            b,
            t.left_child(i),
            q.left_child(j),
            x,
            z - 1,
            out,
            visits,
        );
        self.find_differences(
            other,
            a,
            b,
            t.right_child(i),
            q.right_child(j),
            z,
            y,
            out,
            visits,
        );
    }
}

impl Clone for HashedShiftTree {
    fn clone(&self) -> Self {
        Self {
            topo: self.topo,
            nodes: self.nodes.clone(),
            ctx: Arc::clone(&self.ctx),
            updates: self.updates,
            diff_visits: AtomicU64::new(self.diff_visits.load(Ordering::Relaxed)),
        }
    }
}

impl std::fmt::Debug for HashedShiftTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HashedShiftTree")
            .field("depth", &self.topo.depth())
            .field("delta", &self.topo.delta())
            .field("root_hash", &self.root_hash())
            .finish()
    }
}

impl ShiftTree for HashedShiftTree {
    type Letter = u64;

    fn topology(&self) -> &Topology {
        &self.topo
    }

    fn init(&mut self, s: &[u64]) -> Result<()> {
        check_len(&self.topo, s.len())?;
        for &x in s {
            self.ctx.check_letter(x)?;
        }
        self.topo.set_delta(0);
        let first_leaf = self.topo.leaf_count();
        self.nodes[first_leaf..].copy_from_slice(s);
        for i in (1..first_leaf).rev() {
            self.update(i);
        }
        Ok(())
    }

    fn set(&mut self, pos: usize, x: u64) -> Result<()> {
        self.ctx.check_letter(x)?;
        let mut j = self.topo.leaf_of_position(pos)?;
        self.nodes[j] = x;
        while j != 1 {
            j = self.topo.parent(j);
            self.update(j);
        }
        Ok(())
    }

    fn shift(&mut self, k: i64) {
        let k = self.topo.normalize(k);
        let Some(bound) = shift_update_bound(&self.topo, k) else {
            return;
        };
        self.topo.set_delta(self.topo.delta() + k);
        for i in (1..bound).rev() {
            self.update(i);
        }
    }

    fn diff(&self, other: &Self, a: usize, b: usize) -> Result<Vec<usize>> {
        if self.topo.depth() != other.topo.depth() {
            return Err(Error::IncompatibleTrees("string lengths differ"));
        }
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            return Err(Error::IncompatibleTrees(
                "trees use different hash contexts",
            ));
        }
        check_interval(&self.topo, a, b)?;
        let mut out = Vec::new();
        let mut visits = 0;
        self.find_differences(
            other,
            a,
            b,
            1,
            1,
            0,
            self.topo.leaf_count() - 1,
            &mut out,
            &mut visits,
        );
        self.diff_visits.fetch_add(visits, Ordering::Relaxed);
        Ok(out)
    }

    fn get(&self, pos: usize) -> Result<u64> {
        Ok(self.nodes[self.topo.leaf_of_position(pos)?])
    }

    fn materialize(&self) -> Vec<u64> {
        (0..self.topo.leaf_count())
            .map(|pos| self.nodes[self.topo.leaf_index(pos)])
            .collect()
    }

    fn counters(&self) -> TreeCounters {
        TreeCounters {
            updates: self.updates,
            diff_visits: self.diff_visits.load(Ordering::Relaxed),
        }
    }

    fn reset_counters(&mut self) {
        self.updates = 0;
        *self.diff_visits.get_mut() = 0;
    }
}
