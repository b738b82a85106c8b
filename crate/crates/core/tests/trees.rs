use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shift_tree::{
    shared_store, HashContext, HashedShiftTree, SharedStore, ShiftTree, TaggedShiftTree,
};

#[derive(Debug, Clone)]
enum Op {
    Set {
        tree: usize,
        pos: usize,
        letter: u64,
    },
    Shift {
        tree: usize,
        k: i64,
    },
    Init {
        tree: usize,
        seed: u64,
    },
    Diff {
        a: usize,
        b: usize,
    },
}

fn op_strategy(len: usize) -> impl Strategy<Value = Op> {
    let len_i = len as i64;
    prop_oneof![
        4 => (0..2usize, 0..len, 0..3u64).prop_map(|(tree, pos, letter)| Op::Set { tree, pos, letter }),
        3 => (0..2usize, -2 * len_i..2 * len_i).prop_map(|(tree, k)| Op::Shift { tree, k }),
        1 => (0..2usize, any::<u64>()).prop_map(|(tree, seed)| Op::Init { tree, seed }),
        3 => (0..len, 0..len).prop_map(|(x, y)| Op::Diff { a: x.min(y), b: x.max(y) }),
    ]
}

fn random_letters(len: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random_range(0..3)).collect()
}

fn rotate_right<T: Clone>(s: &[T], k: i64) -> Vec<T> {
    let len = s.len() as i64;
    let mut out = s.to_vec();
    for (i, c) in s.iter().enumerate() {
        out[((i as i64 + k).rem_euclid(len)) as usize] = c.clone();
    }
    out
}

fn naive_diff<T: PartialEq>(s: &[T], q: &[T], a: usize, b: usize) -> Vec<usize> {
    (a..=b).filter(|&x| s[x] != q[x]).collect()
}

/// Every pair of equivalent tags must cover equal strings.
fn audit_tags<L: Clone + PartialEq + std::fmt::Debug>(
    store: &SharedStore,
    trees: &[&TaggedShiftTree<L>],
) {
    let mut by_class = HashMap::new();
    for tree in trees {
        for (node, tag) in tree.tags() {
            let class = store.borrow_mut().find(tag);
            let s = tree.node_string(node);
            if let Some(prev) = by_class.insert(class, s.clone()) {
                assert_eq!(prev, s, "equivalent tags with different strings");
            }
        }
    }
}

fn depth_and_ops() -> impl Strategy<Value = (u32, Vec<u64>, Vec<u64>, Vec<Op>)> {
    (0u32..=6).prop_flat_map(|n| {
        let len = 1usize << n;
        (
            Just(n),
            prop::collection::vec(0..3u64, len),
            prop::collection::vec(0..3u64, len),
            prop::collection::vec(op_strategy(len), 0..40),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn both_variants_track_naive_strings((n, s0, s1, ops) in depth_and_ops()) {
        let len = 1usize << n;
        let ctx = Arc::new(HashContext::new(len, n as u64));
        let store = shared_store();
        let mut model = [s0.clone(), s1.clone()];
        let mut hashed = [
            HashedShiftTree::from_letters(ctx.clone(), &s0).unwrap(),
            HashedShiftTree::from_letters(ctx.clone(), &s1).unwrap(),
        ];
        let mut tagged = [
            TaggedShiftTree::from_letters(store.clone(), &s0).unwrap(),
            TaggedShiftTree::from_letters(store.clone(), &s1).unwrap(),
        ];
        for op in ops {
            match op {
                Op::Set { tree, pos, letter } => {
                    model[tree][pos] = letter;
                    hashed[tree].set(pos, letter).unwrap();
                    tagged[tree].set(pos, letter).unwrap();
                }
                Op::Shift { tree, k } => {
                    model[tree] = rotate_right(&model[tree], k);
                    hashed[tree].shift(k);
                    tagged[tree].shift(k);
                }
                Op::Init { tree, seed } => {
                    model[tree] = random_letters(len, seed);
                    hashed[tree].init(&model[tree]).unwrap();
                    tagged[tree].init(&model[tree]).unwrap();
                }
                Op::Diff { a, b } => {
                    let want = naive_diff(&model[0], &model[1], a, b);
                    prop_assert_eq!(hashed[0].diff(&hashed[1], a, b).unwrap(), want.clone());
                    prop_assert_eq!(tagged[0].diff(&tagged[1], a, b).unwrap(), want.clone());
                    prop_assert_eq!(tagged[1].diff(&tagged[0], a, b).unwrap(), want);
                }
            }
            for t in 0..2 {
                prop_assert_eq!(&hashed[t].materialize(), &model[t]);
                prop_assert_eq!(&tagged[t].materialize(), &model[t]);
                prop_assert!(hashed[t].audit());
            }
            audit_tags(&store, &[&tagged[0], &tagged[1]]);
            prop_assert_eq!(store.borrow().live_count(), 2 * (len - 1));
        }
    }

    #[test]
    fn shift_then_set_matches_shifted_model(n in 1u32..=7, k in -300i64..300, pos in 0usize..128, seed in any::<u64>()) {
        let len = 1usize << n;
        let pos = pos % len;
        let s = random_letters(len, seed);
        let mut t = HashedShiftTree::from_letters(Arc::new(HashContext::new(len, seed)), &s).unwrap();
        t.shift(k);
        t.set(pos, 2).unwrap();
        let mut want = rotate_right(&s, k);
        want[pos] = 2;
        prop_assert_eq!(t.materialize(), want);
        prop_assert!(t.audit());
    }
}

/// A letter type that only supports equality.
#[derive(Debug, Clone)]
struct Glyph(String);

impl PartialEq for Glyph {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[test]
fn tagged_tree_needs_only_equality() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let names = ["alpha", "beta", "gamma"];
    let glyphs = |rng: &mut ChaCha8Rng| -> Vec<Glyph> {
        (0..32)
            .map(|_| Glyph(names[rng.random_range(0..3)].to_string()))
            .collect()
    };
    let store = shared_store();
    let (s, q) = (glyphs(&mut rng), glyphs(&mut rng));
    let mut t = TaggedShiftTree::from_letters(store.clone(), &s).unwrap();
    let u = TaggedShiftTree::from_letters(store.clone(), &q).unwrap();
    let mut model = s;
    for _ in 0..200 {
        let k = rng.random_range(-40..40);
        t.shift(k);
        model = rotate_right(&model, k);
        let pos = rng.random_range(0..32);
        let g = Glyph(names[rng.random_range(0..3)].to_string());
        t.set(pos, g.clone()).unwrap();
        model[pos] = g;
        let a = rng.random_range(0..32);
        let b = rng.random_range(a..32);
        assert_eq!(t.diff(&u, a, b).unwrap(), naive_diff(&model, &q, a, b));
        audit_tags(&store, &[&t, &u]);
    }
}

#[test]
fn shift_costs_are_exact() {
    for n in 0..=8u32 {
        let len = 1i64 << n;
        let ctx = Arc::new(HashContext::new(len as usize, 1));
        let mut h = HashedShiftTree::new(ctx, n).unwrap();
        let store = shared_store();
        let mut t = TaggedShiftTree::new(store, n, 0u8);
        for k in -len..2 * len {
            let r = k.rem_euclid(len);
            let want = if r == 0 {
                0
            } else {
                (len >> r.trailing_zeros()) - 1
            } as u64;
            h.reset_counters();
            t.reset_counters();
            h.shift(k);
            t.shift(k);
            assert_eq!(h.counters().updates, want, "n={n} k={k}");
            assert_eq!(t.counters().updates, want, "n={n} k={k}");
        }
    }
}

#[test]
fn diff_visit_and_store_op_envelopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=9u32 {
        let len = 1usize << n;
        let ctx = Arc::new(HashContext::new(len, 3));
        let store = shared_store();
        let base: Vec<u64> = (0..len).map(|_| rng.random_range(0..2)).collect();
        let mut h = [
            HashedShiftTree::from_letters(ctx.clone(), &base).unwrap(),
            HashedShiftTree::from_letters(ctx.clone(), &base).unwrap(),
        ];
        let mut t = [
            TaggedShiftTree::from_letters(store.clone(), &base).unwrap(),
            TaggedShiftTree::from_letters(store.clone(), &base).unwrap(),
        ];
        store.borrow_mut().reset_counters();
        for tree in t.iter_mut() {
            tree.reset_counters();
        }
        // Potential argument: each update costs at most 11 amortized store
        // operations, a diff at most 9 per required call plus 18 per level.
        let mut budget = 0u64;
        let n64 = n as u64;
        for _ in 0..300 {
            let which = rng.random_range(0..2);
            if rng.random_bool(0.5) {
                let k = rng.random_range(-(len as i64)..len as i64);
                h[which].shift(k);
                t[which].shift(k);
            } else {
                for _ in 0..rng.random_range(1..4) {
                    let pos = rng.random_range(0..len);
                    let x = rng.random_range(0..2);
                    h[which].set(pos, x).unwrap();
                    t[which].set(pos, x).unwrap();
                }
            }
            let a = rng.random_range(0..len);
            let b = rng.random_range(a..len);
            let before = h[0].counters().diff_visits;
            let got = h[0].diff(&h[1], a, b).unwrap();
            let d = got.len() as u64;
            assert!(h[0].counters().diff_visits - before <= 3 * ((d + 2) * n64 + 2 * n64));
            assert_eq!(t[0].diff(&t[1], a, b).unwrap(), got);
            budget += 9 * (d + 2) * n64 + 18 * n64;
        }
        let updates = t[0].counters().updates + t[1].counters().updates;
        budget += 11 * updates;
        let ops = store.borrow().counters().ops();
        assert!(ops <= budget, "n={n}: {ops} store ops, budget {budget}");
    }
}

#[test]
fn tag_memory_is_linear_in_tree_size() {
    let store = shared_store();
    let mut trees: Vec<_> = (0..4)
        .map(|_| TaggedShiftTree::new(store.clone(), 8, 0u8))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let i = rng.random_range(0..4);
        trees[i].shift(rng.random_range(-256..256));
        let j = (i + 1) % 4;
        let (a, b) = (rng.random_range(0..128), rng.random_range(128..256));
        trees[i].diff(&trees[j], a, b).unwrap();
    }
    let s = store.borrow();
    assert_eq!(s.live_count(), 4 * 255);
    assert!(s.slot_count() <= 2 * 4 * 255);
}
