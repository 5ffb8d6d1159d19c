//! Fixed-width bitsets backing the adjacency matrix and subgroup membership.
//!
//! The freeness certifier intersects adjacency rows millions of times, so the
//! representation is a plain `Vec<u64>` with popcount-based counting and no
//! per-bit branching in the hot paths.

/// A fixed-length set of bits, indexed `0..len`.
#[derive(Clone, PartialEq, Eq)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    /// Creates an all-zeros bitset of `len` bits.
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Number of addressable bits (not the number set).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sets bit `i`. Panics if `i >= len`.
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// Tests bit `i`. Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of set bits.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|self & other|` without materializing the intersection.
    ///
    /// Both operands must have the same length.
    pub fn and_count(&self, other: &Bitset) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Overwrites `self` with `a & b`, reusing the allocation.
    ///
    /// All three bitsets must have the same length.
    pub fn assign_and(&mut self, a: &Bitset, b: &Bitset) {
        debug_assert_eq!(self.len, a.len);
        debug_assert_eq!(a.len, b.len);
        for (dst, (x, y)) in self.words.iter_mut().zip(a.words.iter().zip(&b.words)) {
            *dst = x & y;
        }
    }

    /// Iterates over the indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

impl std::fmt::Debug for Bitset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_get_count() {
        let mut b = Bitset::new(130);
        assert_eq!(b.count(), 0);
        for i in [0, 63, 64, 65, 129] {
            b.set(i);
        }
        assert_eq!(b.count(), 5);
        assert!(b.get(63) && b.get(64) && !b.get(62));
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 65, 129]);
    }

    #[test]
    fn empty_and_zero_len() {
        let b = Bitset::new(0);
        assert!(b.is_empty());
        assert_eq!(b.count(), 0);
        assert_eq!(b.iter_ones().count(), 0);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn out_of_range_set_panics() {
        Bitset::new(10).set(10);
    }

    proptest! {
        #[test]
        fn and_count_matches_naive(xs in prop::collection::vec(any::<bool>(), 1..200),
                                   ys_seed in any::<u64>()) {
            let n = xs.len();
            let mut a = Bitset::new(n);
            let mut b = Bitset::new(n);
            let mut naive = 0;
            for (i, &x) in xs.iter().enumerate() {
                let y = (ys_seed >> (i % 64)) & 1 == 1;
                if x {
                    a.set(i);
                }
                if y {
                    b.set(i);
                }
                if x && y {
                    naive += 1;
                }
            }
            prop_assert_eq!(a.and_count(&b), naive);
            let mut c = Bitset::new(n);
            c.assign_and(&a, &b);
            prop_assert_eq!(c.count(), naive);
            for i in c.iter_ones() {
                prop_assert!(a.get(i) && b.get(i));
            }
        }
    }
}
