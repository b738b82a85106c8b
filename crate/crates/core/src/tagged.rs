//! Deterministic shift-tree: inner nodes hold tags instead of hashes.
//!
//! Every update hands the node a fresh singleton tag, so tags never claim an
//! equality that does not hold. `diff` learns equalities lazily: when a pair
//! of subtrees lying fully inside the query interval turns out to have no
//! differences, their tags are merged in the shared [`TagStore`] and later
//! comparisons of the same pair stop at once. Letters only need equality.

use std::cell::{Cell, RefCell};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::tag_store::{TagId, TagStore};
use crate::topology::Topology;
use crate::tree::{
    check_interval, check_len, shift_update_bound, subtree_leaves, ShiftTree, TreeCounters,
};

/// Store shared by all trees that are compared with each other.
pub type SharedStore = Rc<RefCell<TagStore>>;

pub fn shared_store() -> SharedStore {
    Rc::new(RefCell::new(TagStore::new()))
}

pub struct TaggedShiftTree<L> {
    topo: Topology,
    /// Letter of leaf node `2^depth + i` at index `i`.
    leaves: Vec<L>,
    /// Tag of inner node `i`; index 0 is unused. `None` only inside `new`.
    inner: Vec<Option<TagId>>,
    store: SharedStore,
    updates: u64,
    diff_visits: Cell<u64>,
}

impl<L: Clone + PartialEq> TaggedShiftTree<L> {
    /// A string of `2^depth` copies of `fill`.
    pub fn new(store: SharedStore, depth: u32, fill: L) -> Self {
        let topo = Topology::new(depth);
        let mut tree = Self {
            topo,
            leaves: vec![fill; topo.leaf_count()],
            inner: vec![None; topo.leaf_count()],
            store,
            updates: 0,
            diff_visits: Cell::new(0),
        };
        tree.rebuild_tags();
        tree
    }

    /// Builds a tree holding `s`, whose length must be a power of two.
    pub fn from_letters(store: SharedStore, s: &[L]) -> Result<Self> {
        if s.is_empty() || !s.len().is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: s.len().next_power_of_two(),
                found: s.len(),
            });
        }
        let mut tree = Self::new(store, s.len().trailing_zeros(), s[0].clone());
        tree.init(s)?;
        Ok(tree)
    }

    pub fn store(&self) -> &SharedStore {
        &self.store
    }

    /// Tag of inner node `i`.
    pub fn tag(&self, i: usize) -> TagId {
        self.inner[i].expect("inner node without a tag")
    }

    /// Live tags held by this tree, one per inner node.
    pub fn tags(&self) -> impl Iterator<Item = (usize, TagId)> + '_ {
        (1..self.inner.len()).map(|i| (i, self.tag(i)))
    }

    /// Letters below node `i`, left to right.
    pub fn node_string(&self, i: usize) -> Vec<L> {
        subtree_leaves(&self.topo, i)
            .into_iter()
            .map(|leaf| self.leaves[leaf - self.topo.leaf_count()].clone())
            .collect()
    }

    /// Gives inner node `i` a fresh tag, releasing the old one.
    pub fn update(&mut self, i: usize) {
        let store = Rc::clone(&self.store);
        self.update_in(&mut store.borrow_mut(), i);
    }

    fn update_in(&mut self, store: &mut TagStore, i: usize) {
        debug_assert!(i >= 1 && !self.topo.is_leaf(i));
        self.updates += 1;
        if let Some(old) = self.inner[i] {
            store.delete_tag(old);
        }
        self.inner[i] = Some(store.new_tag());
    }

    fn rebuild_tags(&mut self) {
        let store = Rc::clone(&self.store);
        let mut store = store.borrow_mut();
        for i in (1..self.topo.leaf_count()).rev() {
            self.update_in(&mut store, i);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn find_differences(
        &self,
        other: &Self,
        store: &mut TagStore,
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
        if y < a || b < x {
            return;
        }
        if x == y {
            let first = self.topo.leaf_count();
            if self.leaves[i - first] != other.leaves[j - first] {
                out.push(x);
            }
            return;
        }
        let (ti, tj) = (self.tag(i), other.tag(j));
        if store.same_class(ti, tj) {
            return;
        }
        let found_before = out.len();
        let z = (x + y).div_ceil(2);
        let (t, q) = (&self.topo, &other.topo);
        self.find_differences(
            other,
            store,
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
            store,
            a,
            b,
            t.right_child(i),
            q.right_child(j),
            z,
            y,
            out,
            visits,
        );
        if out.len() == found_before && a <= x && y <= b {
            store.union(ti, tj);
        }
    }
}

impl<L: Clone + PartialEq> Clone for TaggedShiftTree<L> {
    /// The copy gets its own tags, each already equivalent to the original's.
    fn clone(&self) -> Self {
        let mut store = self.store.borrow_mut();
        let inner = self
            .inner
            .iter()
            .map(|tag| {
                tag.map(|t| {
                    let fresh = store.new_tag();
                    store.union(t, fresh);
                    fresh
                })
            })
            .collect();
        Self {
            topo: self.topo,
            leaves: self.leaves.clone(),
            inner,
            store: Rc::clone(&self.store),
            updates: self.updates,
            diff_visits: self.diff_visits.clone(),
        }
    }
}

impl<L> Drop for TaggedShiftTree<L> {
    fn drop(&mut self) {
        if let Ok(mut store) = self.store.try_borrow_mut() {
            for tag in self.inner.iter().flatten() {
                store.delete_tag(*tag);
            }
        }
    }
}

impl<L> std::fmt::Debug for TaggedShiftTree<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TaggedShiftTree")
            .field("depth", &self.topo.depth())
            .field("delta", &self.topo.delta())
            .finish()
    }
}

impl<L: Clone + PartialEq> ShiftTree for TaggedShiftTree<L> {
    type Letter = L;

    fn topology(&self) -> &Topology {
        &self.topo
    }

    fn init(&mut self, s: &[L]) -> Result<()> {
        check_len(&self.topo, s.len())?;
        self.topo.set_delta(0);
        self.leaves.clone_from_slice(s);
        self.rebuild_tags();
        Ok(())
    }

    fn set(&mut self, pos: usize, x: L) -> Result<()> {
        let mut j = self.topo.leaf_of_position(pos)?;
        self.leaves[j - self.topo.leaf_count()] = x;
        let store = Rc::clone(&self.store);
        let mut store = store.borrow_mut();
        while j != 1 {
            j = self.topo.parent(j);
            self.update_in(&mut store, j);
        }
        Ok(())
    }

    fn shift(&mut self, k: i64) {
        let k = self.topo.normalize(k);
        let Some(bound) = shift_update_bound(&self.topo, k) else {
            return;
        };
        self.topo.set_delta(self.topo.delta() + k);
        let store = Rc::clone(&self.store);
        let mut store = store.borrow_mut();
        for i in (1..bound).rev() {
            self.update_in(&mut store, i);
        }
    }

    fn diff(&self, other: &Self, a: usize, b: usize) -> Result<Vec<usize>> {
        if self.topo.depth() != other.topo.depth() {
            return Err(Error::IncompatibleTrees("string lengths differ"));
        }
        if !Rc::ptr_eq(&self.store, &other.store) {
            return Err(Error::IncompatibleTrees("trees use different tag stores"));
        }
        check_interval(&self.topo, a, b)?;
        let mut out = Vec::new();
        let mut visits = 0;
        let mut store = self.store.borrow_mut();
        self.find_differences(
            other,
            &mut store,
            a,
            b,
            1,
            1,
            0,
            self.topo.leaf_count() - 1,
            &mut out,
            &mut visits,
        );
        self.diff_visits.set(self.diff_visits.get() + visits);
        Ok(out)
    }

    fn get(&self, pos: usize) -> Result<L> {
        let leaf = self.topo.leaf_of_position(pos)?;
        Ok(self.leaves[leaf - self.topo.leaf_count()].clone())
    }

    fn materialize(&self) -> Vec<L> {
        let first = self.topo.leaf_count();
        (0..first)
            .map(|pos| self.leaves[self.topo.leaf_index(pos) - first].clone())
            .collect()
    }

    fn counters(&self) -> TreeCounters {
        TreeCounters {
            updates: self.updates,
            diff_visits: self.diff_visits.get(),
        }
    }

    fn reset_counters(&mut self) {
        self.updates = 0;
        self.diff_visits.set(0);
    }
}
