//! Fixed-universe bit sets.
//!
//! [`BitSet`] is the raw word vector; [`ElementSubset`] adds a cached
//! population count and is what the rest of the crate passes around as a
//! subset of a group's element indices.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    universe: usize,
}

impl BitSet {
    pub fn new(universe: usize) -> Self {
        BitSet {
            words: vec![0; universe.div_ceil(WORD)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = BitSet::new(universe);
        for w in set.words.iter_mut() {
            *w = !0;
        }
        set.trim();
        set
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Returns true if the bit was newly set.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(
            i < self.universe,
            "bit {i} outside universe {}",
            self.universe
        );
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let present = *w & mask != 0;
        *w &= !mask;
        present
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Lowest index present in both sets.
    pub fn first_common(&self, other: &BitSet) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find(|(_, (a, b))| *a & *b != 0)
            .map(|(i, (a, b))| i * WORD + (a & b).trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Lexicographic comparison of the ascending member sequences.
    pub fn cmp_members(&self, other: &BitSet) -> Ordering {
        for i in 0..self.words.len().min(other.words.len()) {
            let (a, b) = (self.words[i], other.words[i]);
            if a == b {
                continue;
            }
            let diff = a ^ b;
            let low = diff & diff.wrapping_neg();
            // Members below `low` agree; the side holding `low` is smaller
            // unless the other side has no members left at all.
            let (holder_is_self, rest) = if a & low != 0 {
                (true, other)
            } else {
                (false, self)
            };
            let rest_nonempty = rest.words[i] & !(low | (low - 1)) != 0
                || rest.words[i + 1..].iter().any(|&w| w != 0);
            return match (holder_is_self, rest_nonempty) {
                (true, true) | (false, false) => Ordering::Less,
                _ => Ordering::Greater,
            };
        }
        Ordering::Equal
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// A subset of a group's element indices with a cached cardinality.
#[derive(Clone)]
pub struct ElementSubset {
    bits: BitSet,
    count: usize,
}

impl ElementSubset {
    pub fn empty(universe: usize) -> Self {
        ElementSubset {
            bits: BitSet::new(universe),
            count: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        ElementSubset {
            bits: BitSet::full(universe),
            count: universe,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = ElementSubset::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_bits(bits: BitSet) -> Self {
        let count = bits.count();
        ElementSubset { bits, count }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.bits.universe()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = self.bits.insert(i);
        self.count += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let present = self.bits.remove(i);
        self.count -= present as usize;
        present
    }

    pub fn iter(&self) -> Ones<'_> {
        self.bits.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn is_subset(&self, other: &ElementSubset) -> bool {
        self.count <= other.count && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &ElementSubset) -> ElementSubset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSubset::from_bits(bits)
    }

    pub fn union(&self, other: &ElementSubset) -> ElementSubset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSubset::from_bits(bits)
    }

    pub fn difference(&self, other: &ElementSubset) -> ElementSubset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ElementSubset::from_bits(bits)
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.first()
    }
}

impl PartialEq for ElementSubset {
    fn eq(&self, other: &Self) -> bool {
        self.count == other.count && self.bits == other.bits
    }
}

impl Eq for ElementSubset {}

impl Hash for ElementSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

/// Canonical order: ascending cardinality, ties broken by the ascending
/// member sequence compared lexicographically.
impl Ord for ElementSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count
            .cmp(&other.count)
            .then_with(|| self.bits.cmp_members(&other.bits))
    }
}

impl PartialOrd for ElementSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
