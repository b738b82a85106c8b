//! Modular subset sum: every residue `t` such that some sub-multiset of the
//! input sums to `t mod m`.
//!
//! The solver simulates Bellman's recurrence `S <- S ∪ (S + x)` with two
//! shift-trees. The first holds `s·0^(L-m)`, where `s` is the characteristic
//! vector of `S`; the second holds a cyclic shift of `s·0^(L-2m)·s`, which has
//! `s` shifted by `x` as a prefix for every `x` in `[0, m]`. Comparing the two
//! prefixes lists the symmetric difference `(S + x) △ S`, half of which are
//! new sums. The second tree walks through all shifts in bit-reversal order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hash::HashContext;
use crate::hashed::HashedShiftTree;
use crate::schedule::ShiftSchedule;
use crate::tagged::{shared_store, TaggedShiftTree};
use crate::tree::ShiftTree;

/// A multiset over `Z_m` given by its multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    modulus: usize,
    multiplicities: Vec<u64>,
}

impl Instance {
    /// Instance from a table with one count per residue. Copies of zero are
    /// dropped, since they never add a sum.
    pub fn new(modulus: usize, mut multiplicities: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        if multiplicities.len() != modulus {
            return Err(Error::MultiplicityTable {
                expected: modulus,
                found: multiplicities.len(),
            });
        }
        multiplicities[0] = 0;
        Ok(Self {
            modulus,
            multiplicities,
        })
    }

    pub fn empty(modulus: usize) -> Result<Self> {
        Self::new(modulus, vec![0; modulus])
    }

    /// Instance holding each value once, reduced mod `modulus`.
    pub fn from_values(modulus: usize, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut inst = Self::empty(modulus)?;
        for v in values {
            inst.add(v, 1);
        }
        Ok(inst)
    }

    /// `draws` values drawn uniformly from `[0, modulus)`.
    pub fn random(modulus: usize, draws: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = modulus as u64;
        Self::from_values(modulus, (0..draws).map(|_| rng.random_range(0..m.max(1))))
    }

    /// Adds `count` copies of `value mod m`.
    pub fn add(&mut self, value: u64, count: u64) {
        let x = (value % self.modulus as u64) as usize;
        if x != 0 {
            self.multiplicities[x] = self.multiplicities[x].saturating_add(count);
        }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn multiplicity(&self, x: usize) -> u64 {
        self.multiplicities.get(x).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }
}

/// Attainable sums, as a membership table plus insertion order.
#[derive(Debug, Clone)]
pub struct SumSet {
    member: Vec<bool>,
    order: Vec<usize>,
}

impl SumSet {
    /// `{0}` over `Z_m`.
    pub fn new(modulus: usize) -> Self {
        let mut set = Self {
            member: vec![false; modulus],
            order: Vec::new(),
        };
        set.insert(0);
        set
    }

    pub fn modulus(&self) -> usize {
        self.member.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    /// Returns whether `x` was new.
    pub fn insert(&mut self, x: usize) -> bool {
        if self.member[x] {
            return false;
        }
        self.member[x] = true;
        self.order.push(x);
        true
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Sums in the order they were discovered.
    pub fn insertion_order(&self) -> &[usize] {
        &self.order
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        let mut v = self.order.clone();
        v.sort_unstable();
        v
    }

    pub fn membership(&self) -> &[bool] {
        &self.member
    }
}

impl PartialEq for SumSet {
    fn eq(&self, other: &Self) -> bool {
        self.member == other.member
    }
}

impl Eq for SumSet {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Hashed,
    Tagged,
    Naive,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Hashed, Backend::Tagged, Backend::Naive];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Hashed => "hashed",
            Backend::Tagged => "tagged",
            Backend::Naive => "naive",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown backend `{s}` (expected hashed, tagged or naive)"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Node updates across both trees, including initialization.
    pub updates: u64,
    pub diff_visits: u64,
    /// Tag store operations (tagged backend only).
    pub store_ops: u64,
    /// Difference queries, one per simulated Bellman step.
    pub bellman_iterations: u64,
    /// Total size of all reported difference sets.
    pub reported_differences: u64,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub sums: SumSet,
    pub stats: SolveStats,
}

/// Length of the padded strings: the smallest power of two `>= 2m`.
pub fn padded_len(modulus: usize) -> usize {
    (2 * modulus).next_power_of_two()
}

/// Positions of `diff` that are not sums yet.
pub fn new_sums(diff: &[usize], sums: &SumSet) -> Vec<usize> {
    diff.iter()
        .copied()
        .filter(|&d| !sums.contains(d))
        .collect()
}

/// Step-by-step run of the shift-tree algorithm over any backend.
pub struct Solver<T: ShiftTree> {
    modulus: usize,
    multiplicities: Vec<u64>,
    first: T,
    second: T,
    schedule: ShiftSchedule,
    sums: SumSet,
    bellman_iterations: u64,
    reported_differences: u64,
}

impl<T> Solver<T>
where
    T: ShiftTree,
    T::Letter: From<bool>,
{
    /// Takes two trees of length [`padded_len`] and loads the initial strings.
    pub fn new(inst: &Instance, mut first: T, mut second: T) -> Result<Self> {
        let m = inst.modulus();
        let len = padded_len(m);
        for tree in [&first, &second] {
            if tree.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    found: tree.len(),
                });
            }
        }
        let mut padded: Vec<T::Letter> = (0..len).map(|i| T::Letter::from(i == 0)).collect();
        first.init(&padded)?;
        padded[len - m] = T::Letter::from(true);
        second.init(&padded)?;
        Ok(Self {
            modulus: m,
            multiplicities: inst.multiplicities().to_vec(),
            first,
            second,
            schedule: ShiftSchedule::new(len.trailing_zeros()),
            sums: SumSet::new(m),
            bellman_iterations: 0,
            reported_differences: 0,
        })
    }

    /// Moves to the next shift and runs the Bellman steps for that element.
    /// Returns `false` once every shift has been processed.
    pub fn step(&mut self) -> Result<bool> {
        let Some(delta) = self.schedule.next_delta() else {
            return Ok(false);
        };
        self.second.shift(delta);
        let x = self.schedule.current();
        let m = self.modulus;
        let len = self.first.len();
        let copies = self.multiplicities.get(x).copied().unwrap_or(0);
        for _ in 0..copies {
            self.bellman_iterations += 1;
            let diff = self.first.diff(&self.second, 0, m - 1)?;
            if diff.is_empty() {
                break;
            }
            self.reported_differences += diff.len() as u64;
            let fresh = new_sums(&diff, &self.sums);
            if diff.len() != 2 * fresh.len() {
                return Err(Error::HashCollision {
                    shift: x,
                    reported: diff.len(),
                    new_sums: fresh.len(),
                });
            }
            for d in fresh {
                self.sums.insert(d);
                self.first.set(d, true.into())?;
                self.second.set((d + x) % len, true.into())?;
                self.second.set((d + x + len - m) % len, true.into())?;
            }
        }
        Ok(true)
    }

    pub fn run(&mut self) -> Result<()> {
        while self.step()? {}
        Ok(())
    }

    /// Shift the second tree currently applies.
    pub fn current_shift(&self) -> usize {
        self.schedule.current()
    }

    pub fn sums(&self) -> &SumSet {
        &self.sums
    }

    pub fn first(&self) -> &T {
        &self.first
    }

    pub fn second(&self) -> &T {
        &self.second
    }

    /// Checks that the trees hold `s·0^(L-m)` and `(s·0^(L-2m)·s)` shifted by
    /// the current shift, for the current sum set `s`.
    pub fn padding_holds(&self) -> bool {
        let m = self.modulus;
        let len = self.first.len();
        let bit = |i: usize| T::Letter::from(i < m && self.sums.contains(i));
        let first_ok = self
            .first
            .materialize()
            .into_iter()
            .enumerate()
            .all(|(i, c)| c == bit(i));
        let shifted = self.second.materialize();
        let x = self.current_shift();
        let second_ok = (0..len).all(|i| {
            let c = &shifted[(i + x) % len];
            let want = if i >= len - m {
                bit(i - (len - m))
            } else {
                bit(i)
            };
            *c == want
        });
        first_ok && second_ok
    }

    pub fn stats(&self) -> SolveStats {
        let (a, b) = (self.first.counters(), self.second.counters());
        SolveStats {
            updates: a.updates + b.updates,
            diff_visits: a.diff_visits + b.diff_visits,
            store_ops: 0,
            bellman_iterations: self.bellman_iterations,
            reported_differences: self.reported_differences,
        }
    }

    pub fn into_solution(self) -> Solution {
        let stats = self.stats();
        Solution {
            sums: self.sums,
            stats,
        }
    }
}

/// Solves `inst` with the chosen backend. `seed` only affects the hashed one.
pub fn solve(inst: &Instance, backend: Backend, seed: u64) -> Result<Solution> {
    let m = inst.modulus();
    if backend == Backend::Naive {
        return Ok(solve_naive(inst));
    }
    if m == 1 {
        return Ok(Solution {
            sums: SumSet::new(1),
            stats: SolveStats::default(),
        });
    }
    let len = padded_len(m);
    let depth = len.trailing_zeros();
    match backend {
        Backend::Hashed => {
            let ctx = Arc::new(HashContext::new(len, seed));
            let first = HashedShiftTree::new(Arc::clone(&ctx), depth)?;
            let second = HashedShiftTree::new(ctx, depth)?;
            let mut solver = Solver::new(inst, first, second)?;
            solver.run()?;
            Ok(solver.into_solution())
        }
        Backend::Tagged => {
            let store = shared_store();
            let first = TaggedShiftTree::new(store.clone(), depth, 0u8);
            let second = TaggedShiftTree::new(store.clone(), depth, 0u8);
            let mut solver = Solver::new(inst, first, second)?;
            solver.run()?;
            let store_ops = store.borrow().counters().ops();
            let mut solution = solver.into_solution();
            solution.stats.store_ops = store_ops;
            Ok(solution)
        }
        Backend::Naive => unreachable!(),
    }
}

/// Direct Bellman iteration over a membership table, `O(m)` per step.
pub fn solve_naive(inst: &Instance) -> Solution {
    let m = inst.modulus();
    let mut sums = SumSet::new(m);
    let mut stats = SolveStats::default();
    for x in 1..m {
        // More than m copies of x cannot add anything new.
        let copies = inst.multiplicity(x).min(m as u64);
        for _ in 0..copies {
            stats.bellman_iterations += 1;
            let added: Vec<usize> = (0..m)
                .filter(|&a| sums.contains(a) && !sums.contains((a + x) % m))
                .map(|a| (a + x) % m)
                .collect();
            if added.is_empty() {
                break;
            }
            for a in added {
                sums.insert(a);
            }
        }
    }
    Solution { sums, stats }
}
