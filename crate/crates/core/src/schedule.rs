//! Visiting every cyclic shift in bit-reversal order.
//!
//! Consecutive bit-reversed indices differ by a delta whose 2-adic valuation
//! is large on average: exactly `2^j` of the `L - 1` deltas have valuation
//! `j`. A shift with valuation `j` rehashes `L / 2^j - 1` nodes, so the full
//! traversal costs `k * L - (L - 1)` node updates for `L = 2^k`.

use crate::error::{Error, Result};

/// Reverses the low `width` bits of `j`.
pub fn bitrev(width: u32, j: usize) -> Result<usize> {
    if width < usize::BITS && j >> width != 0 {
        return Err(Error::IndexOutOfRange { index: j, width });
    }
    Ok(bitrev_unchecked(width, j))
}

#[inline]
fn bitrev_unchecked(width: u32, mut j: usize) -> usize {
    let mut out = 0;
    for _ in 0..width {
        out = (out << 1) | (j & 1);
        j >>= 1;
    }
    out
}

/// Iterator over the signed shift deltas `bitrev(i) - bitrev(i - 1)` for
/// `i = 1 .. 2^width - 1`.
#[derive(Debug, Clone)]
pub struct ShiftSchedule {
    width: u32,
    index: usize,
    current: usize,
}

impl ShiftSchedule {
    pub fn new(width: u32) -> Self {
        assert!(width < usize::BITS, "schedule width {width} is too large");
        Self {
            width,
            index: 0,
            current: 0,
        }
    }

    /// Number of positions in the permutation, `2^width`.
    pub fn period(&self) -> usize {
        1 << self.width
    }

    /// Position in the permutation reached so far.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Shift value at the current position.
    pub fn current(&self) -> usize {
        self.current
    }

    /// Advances one position and returns the delta to the new shift, or
    /// `None` once every shift has been visited.
    pub fn next_delta(&mut self) -> Option<i64> {
        if self.index + 1 >= self.period() {
            return None;
        }
        self.index += 1;
        let next = bitrev_unchecked(self.width, self.index);
        let delta = next as i64 - self.current as i64;
        self.current = next;
        Some(delta)
    }
}

impl Iterator for ShiftSchedule {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        self.next_delta()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.period() - 1 - self.index;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ShiftSchedule {}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reversal through string manipulation, independent of the bit loop.
    fn reverse_via_string(width: u32, j: usize) -> usize {
        if width == 0 {
            return 0;
        }
        let s = format!("{:0w$b}", j, w = width as usize);
        usize::from_str_radix(&s.chars().rev().collect::<String>(), 2).unwrap()
    }

    fn valuation(d: i64) -> u32 {
        d.unsigned_abs().trailing_zeros()
    }

    #[test]
    fn bitrev_examples() {
        assert_eq!(bitrev(5, 0), Ok(0));
        assert_eq!(bitrev(4, 1), Ok(8));
        assert_eq!(bitrev(3, 6), Ok(3));
        assert_eq!(bitrev(0, 0), Ok(0));
        assert_eq!(
            bitrev(3, 8),
            Err(Error::IndexOutOfRange { index: 8, width: 3 })
        );
    }

    #[test]
    fn bitrev_matches_string_reversal() {
        for width in 0..=12 {
            for j in 0..1usize << width {
                let r = bitrev(width, j).unwrap();
                assert_eq!(r, reverse_via_string(width, j));
                assert_eq!(bitrev(width, r), Ok(j));
            }
        }
    }

    #[test]
    fn first_deltas() {
        let deltas: Vec<i64> = ShiftSchedule::new(4).take(3).collect();
        assert_eq!(deltas, vec![8, -4, 8]);
    }

    #[test]
    fn deltas_telescope() {
        for width in 0..=12 {
            let mut sched = ShiftSchedule::new(width);
            let total: i64 = sched.by_ref().sum();
            assert_eq!(total, (1i64 << width) - 1);
            assert_eq!(sched.current(), (1 << width) - 1);
            assert_eq!(sched.next_delta(), None);
        }
    }

    #[test]
    fn visits_every_shift_once() {
        let width = 10;
        let mut sched = ShiftSchedule::new(width);
        let mut seen = vec![false; 1 << width];
        seen[0] = true;
        while sched.next_delta().is_some() {
            assert!(!std::mem::replace(&mut seen[sched.current()], true));
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn valuation_histogram() {
        for width in 1..=16u32 {
            let mut hist = vec![0usize; width as usize];
            for d in ShiftSchedule::new(width) {
                hist[valuation(d) as usize] += 1;
            }
            for (j, &count) in hist.iter().enumerate() {
                assert_eq!(count, 1 << j, "width {width}, valuation {j}");
            }
        }
    }

    #[test]
    fn predicted_update_total() {
        // A shift with valuation j on a 2^k tree updates 2^(k-j) - 1 nodes.
        let cost = |k: u32| -> usize {
            ShiftSchedule::new(k)
                .map(|d| (1usize << (k - valuation(d))) - 1)
                .sum()
        };
        assert_eq!(cost(4), 49);
        for k in 1..=16 {
            assert_eq!(cost(k), k as usize * (1 << k) - ((1 << k) - 1));
        }
    }
}
