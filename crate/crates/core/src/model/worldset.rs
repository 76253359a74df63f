use std::fmt;

use smallvec::SmallVec;

/// A set of world indices, stored as a bitset.
///
/// Sets carry the size of their universe so that complement and iteration
/// never step outside the model's worlds. Models with up to 64 worlds stay
/// inline; larger ones spill to the heap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

const BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(BITS)
}

impl WorldSet {
    pub fn empty(len: usize) -> Self {
        WorldSet {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = WorldSet {
            len,
            words: SmallVec::from_elem(u64::MAX, word_count(len)),
        };
        set.trim();
        set
    }

    pub fn singleton(len: usize, world: usize) -> Self {
        let mut set = Self::empty(len);
        set.insert(world);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, worlds: I) -> Self {
        let mut set = Self::empty(len);
        for w in worlds {
            set.insert(w);
        }
        set
    }

    fn trim(&mut self) {
        let rem = self.len % BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, world: usize) {
        assert!(world < self.len, "world index {world} out of range {}", self.len);
        self.words[world / BITS] |= 1 << (world % BITS);
    }

    pub fn remove(&mut self, world: usize) {
        if world < self.len {
            self.words[world / BITS] &= !(1 << (world % BITS));
        }
    }

    pub fn contains(&self, world: usize) -> bool {
        world < self.len && self.words[world / BITS] & (1 << (world % BITS)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.len)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn complement(&self) -> WorldSet {
        let mut out = WorldSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        WorldSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        WorldSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// `!self | other`, i.e. the extension of an implication.
    pub fn implies(&self, other: &WorldSet) -> WorldSet {
        let mut out = WorldSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| !a | b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |w| self.contains(*w))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_stays_in_universe() {
        let s = WorldSet::from_indices(3, [1]);
        assert_eq!(s.complement().iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(WorldSet::full(3).complement().is_empty());
        assert_eq!(WorldSet::full(70).count(), 70);
        assert!(WorldSet::full(64).is_full());
    }

    #[test]
    fn implication_matches_pointwise_definition() {
        let a = WorldSet::from_indices(4, [0, 1]);
        let b = WorldSet::from_indices(4, [1, 2]);
        let imp = a.implies(&b);
        for w in 0..4 {
            assert_eq!(imp.contains(w), !a.contains(w) || b.contains(w));
        }
    }

    #[test]
    fn large_universe_spills() {
        let mut s = WorldSet::empty(130);
        s.insert(129);
        s.insert(3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 129]);
        assert!(s.is_subset(&WorldSet::full(130)));
        assert_eq!(s.complement().count(), 128);
    }
}
