//! Union-find over tags with deletions.
//!
//! Deletion only marks a slot; marked slots keep serving as interior links
//! of their class tree. Once marked slots outnumber live ones, the forest is
//! rebuilt over the live tags (each class becomes a star around one live
//! member) and the marked slots go to a freelist. Live tags keep their slot
//! across rebuilds, class representatives do not.

/// Handle to a live tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TagId(u32);

impl TagId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Representative of an equivalence class. Only valid until the next
/// mutation of the store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassId(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Live,
    Marked,
    Free,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StoreCounters {
    pub new_tags: u64,
    pub finds: u64,
    pub unions: u64,
    pub deletes: u64,
    /// Parent links followed by finds, including those done by rebuilds.
    pub link_steps: u64,
    pub rebuilds: u64,
}

impl StoreCounters {
    /// Operations issued through the public interface.
    pub fn ops(&self) -> u64 {
        self.new_tags + self.finds + self.unions + self.deletes
    }
}

#[derive(Debug, Clone)]
pub struct TagStore {
    parent: Vec<u32>,
    rank: Vec<u8>,
    slot: Vec<Slot>,
    free: Vec<u32>,
    scratch: Vec<u32>,
    live: usize,
    marked: usize,
    peak_live: usize,
    deletion: bool,
    counters: StoreCounters,
}

impl Default for TagStore {
    fn default() -> Self {
        Self::new()
    }
}

impl TagStore {
    pub fn new() -> Self {
        Self {
            parent: Vec::new(),
            rank: Vec::new(),
            slot: Vec::new(),
            free: Vec::new(),
            scratch: Vec::new(),
            live: 0,
            marked: 0,
            peak_live: 0,
            deletion: true,
            counters: StoreCounters::default(),
        }
    }

    /// A store whose deletions are ignored, so slots are never reclaimed.
    #[cfg(test)]
    pub(crate) fn without_deletion() -> Self {
        Self {
            deletion: false,
            ..Self::new()
        }
    }

    /// Creates a tag in its own singleton class.
    pub fn new_tag(&mut self) -> TagId {
        self.counters.new_tags += 1;
        let x = match self.free.pop() {
            Some(x) => x,
            None => {
                let x = u32::try_from(self.parent.len()).expect("tag store exceeded u32 slots");
                self.parent.push(x);
                self.rank.push(0);
                self.slot.push(Slot::Free);
                x
            }
        };
        let i = x as usize;
        self.parent[i] = x;
        self.rank[i] = 0;
        self.slot[i] = Slot::Live;
        self.live += 1;
        self.peak_live = self.peak_live.max(self.live);
        TagId(x)
    }

    pub fn is_live(&self, x: TagId) -> bool {
        self.slot.get(x.index()) == Some(&Slot::Live)
    }

    pub fn find(&mut self, x: TagId) -> ClassId {
        debug_assert!(self.is_live(x), "find on dead tag {x:?}");
        self.counters.finds += 1;
        ClassId(self.root(x.0))
    }

    pub fn same_class(&mut self, x: TagId, y: TagId) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn union(&mut self, x: TagId, y: TagId) {
        debug_assert!(self.is_live(x) && self.is_live(y), "union on dead tag");
        self.counters.unions += 1;
        let (rx, ry) = (self.root(x.0), self.root(y.0));
        if rx == ry {
            return;
        }
        let (hi, lo) = if self.rank[rx as usize] >= self.rank[ry as usize] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[lo as usize] = hi;
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
    }

    /// Removes `x` from its class. `x` must not be used afterwards.
    pub fn delete_tag(&mut self, x: TagId) {
        assert!(self.is_live(x), "delete of dead tag {x:?}");
        self.counters.deletes += 1;
        if !self.deletion {
            return;
        }
        self.slot[x.index()] = Slot::Marked;
        self.live -= 1;
        self.marked += 1;
        if self.marked > self.live {
            self.rebuild();
        }
    }

    fn root(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
            self.counters.link_steps += 1;
        }
        let mut cur = x;
        while cur != r {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = r;
            cur = next;
        }
        r
    }

    fn rebuild(&mut self) {
        self.counters.rebuilds += 1;
        const NONE: u32 = u32::MAX;
        let n = self.parent.len();
        let mut leader = std::mem::take(&mut self.scratch);
        leader.clear();
        leader.resize(n, NONE);
        // Compress every live tag onto its root and pick the first live
        // member of each class as the new center.
        for x in 0..n {
            if self.slot[x] == Slot::Live {
                let r = self.root(x as u32) as usize;
                if leader[r] == NONE {
                    leader[r] = x as u32;
                }
            }
        }
        for x in 0..n {
            match self.slot[x] {
                Slot::Live => {
                    let l = leader[self.parent[x] as usize];
                    self.parent[x] = l;
                    self.rank[x] = 0;
                    if l as usize != x {
                        self.rank[l as usize] = 1;
                    }
                }
                Slot::Marked => {
                    self.slot[x] = Slot::Free;
                    self.free.push(x as u32);
                }
                Slot::Free => {}
            }
        }
        self.scratch = leader;
        self.marked = 0;
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    /// Deleted tags whose slots are not reclaimed yet.
    pub fn marked_count(&self) -> usize {
        self.marked
    }

    /// Allocated slots, live or not.
    pub fn slot_count(&self) -> usize {
        self.parent.len()
    }

    /// Largest number of simultaneously live tags seen so far.
    pub fn peak_live(&self) -> usize {
        self.peak_live
    }

    pub fn counters(&self) -> StoreCounters {
        self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters = StoreCounters::default();
    }
}
