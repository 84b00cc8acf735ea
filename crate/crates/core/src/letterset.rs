//! Bitsets over the symmetrized alphabet.

use std::cmp::Ordering;
use std::fmt;

use crate::word::{Alphabet, Letter};

/// A set of letters, bit `i` standing for [`Letter::from_index`]`(i)`.
///
/// Trailing zero words are never stored, so equality and hashing depend on
/// the content only, not on the rank the set was built for.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LetterSet {
    bits: Vec<u64>,
}

impl LetterSet {
    pub fn new() -> Self {
        LetterSet::default()
    }

    pub fn singleton(l: Letter) -> Self {
        let mut s = LetterSet::new();
        s.insert(l);
        s
    }

    /// The whole symmetrized alphabet.
    pub fn full(alphabet: Alphabet) -> Self {
        alphabet.letters().collect()
    }

    /// Builds a set from raw index bits (bit `i` = letter with index `i`).
    pub fn from_mask(mask: u64) -> Self {
        let mut s = LetterSet { bits: vec![mask] };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.bits.last() == Some(&0) {
            self.bits.pop();
        }
    }

    pub fn insert(&mut self, l: Letter) -> bool {
        let i = l.index();
        let (w, b) = (i / 64, i % 64);
        if self.bits.len() <= w {
            self.bits.resize(w + 1, 0);
        }
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, l: Letter) -> bool {
        let i = l.index();
        let (w, b) = (i / 64, i % 64);
        let present = self.bits.get(w).is_some_and(|x| x & (1 << b) != 0);
        if present {
            self.bits[w] &= !(1 << b);
            self.trim();
        }
        present
    }

    pub fn contains(&self, l: Letter) -> bool {
        let i = l.index();
        self.bits.get(i / 64).is_some_and(|x| x & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Letters in alphabet order.
    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word & (1u64 << b) != 0)
                .map(move |b| Letter::from_index(w * 64 + b))
        })
    }

    pub fn intersects(&self, other: &LetterSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    /// True if some element of `self` is missing from `other`.
    pub fn has_outside(&self, other: &LetterSet) -> bool {
        self.bits
            .iter()
            .enumerate()
            .any(|(i, a)| a & !other.bits.get(i).copied().unwrap_or(0) != 0)
    }

    pub fn is_subset(&self, other: &LetterSet) -> bool {
        !self.has_outside(other)
    }

    /// True if `self` meets both `cut` and its complement.
    pub fn is_split_by(&self, cut: &LetterSet) -> bool {
        self.intersects(cut) && self.has_outside(cut)
    }

    pub fn union(&self, other: &LetterSet) -> LetterSet {
        let n = self.bits.len().max(other.bits.len());
        let bits = (0..n)
            .map(|i| self.bits.get(i).copied().unwrap_or(0) | other.bits.get(i).copied().unwrap_or(0))
            .collect();
        let mut s = LetterSet { bits };
        s.trim();
        s
    }

    pub fn intersection(&self, other: &LetterSet) -> LetterSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        let mut s = LetterSet { bits };
        s.trim();
        s
    }

    /// Complement inside the symmetrized alphabet.
    pub fn complement(&self, alphabet: Alphabet) -> LetterSet {
        alphabet.letters().filter(|&l| !self.contains(l)).collect()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::new();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

/// Orders sets by their value as binary numbers, bit `i` weighing `2^i`.
impl Ord for LetterSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for LetterSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated letters, e.g. `a,b,C,D`.
impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
