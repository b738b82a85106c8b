//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use shift_tree::{shared_store, HashContext, HashedShiftTree, SharedStore, TaggedShiftTree};

/// Deterministic 0/1 pattern with no short period.
pub fn letters(len: usize, salt: u64) -> Vec<u64> {
    let mut state = salt ^ 0x9e37_79b9_7f4a_7c15;
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state & 1
        })
        .collect()
}

/// Two hashed trees of depth `depth` sharing one context.
pub fn hashed_pair(depth: u32) -> (HashedShiftTree, HashedShiftTree) {
    let len = 1usize << depth;
    let ctx = Arc::new(HashContext::new(len, 1));
    let a = HashedShiftTree::from_letters(ctx.clone(), &letters(len, 1))
        .expect("context sized for tree");
    let b = HashedShiftTree::from_letters(ctx, &letters(len, 2)).expect("context sized for tree");
    (a, b)
}

/// Two tagged trees of depth `depth` sharing one store.
pub fn tagged_pair(depth: u32) -> (SharedStore, TaggedShiftTree<u64>, TaggedShiftTree<u64>) {
    let len = 1usize << depth;
    let store = shared_store();
    let a = TaggedShiftTree::from_letters(store.clone(), &letters(len, 1))
        .expect("power-of-two length");
    let b = TaggedShiftTree::from_letters(store.clone(), &letters(len, 2))
        .expect("power-of-two length");
    (store, a, b)
}
