//! Letters, reduced words and cyclic words over a finite free basis.
//!
//! A letter is a nonzero signed integer: `k` is the `k`-th generator and `-k`
//! its formal inverse. The symmetrized alphabet is ordered
//! `a < A < b < B < ...`, i.e. each generator is immediately followed by its
//! inverse; this order drives every deterministic choice in the crate
//! (spanning trees, canonical rotations, normal forms, tie-breaks).
//!
//! Text syntax: lowercase `a`..`z` are generators 1..26 and uppercase
//! `A`..`Z` their inverses. Any generator may also be written `xN` (inverse
//! `XN`); generators above 26 are always rendered that way. The empty word
//! renders as `1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator of the free group or the formal inverse of one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    /// Panics if `value` is zero.
    pub fn new(value: i32) -> Self {
        assert!(value != 0, "letter value must be nonzero");
        Letter(value)
    }

    /// The `k`-th generator (1-based).
    pub fn generator(k: u32) -> Self {
        Letter::new(k as i32)
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// 1-based generator number, ignoring the sign.
    pub fn generator_number(self) -> u32 {
        self.0.unsigned_abs()
    }

    /// The positive letter with the same generator.
    pub fn positive(self) -> Self {
        Letter(self.0.abs())
    }

    /// Position in the symmetrized alphabet: `a -> 0, A -> 1, b -> 2, ...`.
    pub fn index(self) -> usize {
        2 * (self.generator_number() as usize - 1) + usize::from(self.0 < 0)
    }

    pub fn from_index(index: usize) -> Self {
        let g = (index / 2 + 1) as i32;
        if index % 2 == 0 {
            Letter(g)
        } else {
            Letter(-g)
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator_number();
        if g <= 26 {
            let base = if self.is_positive() { b'a' } else { b'A' };
            write!(f, "{}", (base + (g - 1) as u8) as char)
        } else if self.is_positive() {
            write!(f, "x{g}")
        } else {
            write!(f, "X{g}")
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_letters(s)?;
        match letters.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::BadToken {
                token: s.to_string(),
                position: 0,
            }),
        }
    }
}

/// The symmetrized alphabet of a free group of rank `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// Number of letters in the symmetrized alphabet, `2r`.
    pub fn size(self) -> usize {
        2 * self.rank as usize
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.generator_number() <= self.rank
    }

    pub fn check(self, letter: Letter) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter: letter.to_string(),
                rank: self.rank,
            })
        }
    }

    /// All `2r` letters in alphabet order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.size()).map(Letter::from_index)
    }

    /// The `r` positive generators.
    pub fn generators(self) -> impl Iterator<Item = Letter> {
        (1..=self.rank).map(Letter::generator)
    }
}

/// Free reduction of an arbitrary letter sequence against an alphabet.
pub fn reduce_word<I>(raw: I, alphabet: Alphabet) -> Result<Word>
where
    I: IntoIterator<Item = Letter>,
{
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        alphabet.check(l)?;
        push_reduced(&mut out, l);
    }
    Ok(Word(out))
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces `raw`.
    pub fn reduced<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut out = Vec::new();
        for l in raw {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Accepts `letters` only if already freely reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Self> {
        if let Some(i) = letters.windows(2).position(|w| w[1] == w[0].inverse()) {
            return Err(Error::NotReduced(i));
        }
        Ok(Word(letters))
    }

    /// Parses and freely reduces.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Word::reduced(parse_letters(s)?))
    }

    /// Parses, rejecting input that is not already freely reduced.
    pub fn parse_strict(s: &str) -> Result<Self> {
        Word::from_reduced(parse_letters(s)?)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator number occurring, 0 for the empty word.
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator_number()).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, alphabet: Alphabet) -> Result<()> {
        self.0.iter().try_for_each(|&l| alphabet.check(l))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.0.len() == 1 || l != f.inverse(),
            _ => true,
        }
    }

    /// Splits `self = v · w · v⁻¹` with `w` cyclically reduced and `v`
    /// shortest.
    pub fn cyclic_core(&self) -> (Word, CyclicWord) {
        let (v, w) = self.cyclic_core_word();
        (v, CyclicWord::from_cyclically_reduced(w))
    }

    /// Like [`Word::cyclic_core`] but keeps `w` in its original rotation.
    pub fn cyclic_core_word(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[n - 1 - k] == self.0[k].inverse() {
            k += 1;
        }
        (Word(self.0[..k].to_vec()), Word(self.0[k..n - k].to_vec()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse_strict(&s).map_err(serde::de::Error::custom)
    }
}

/// A cyclically reduced word up to rotation, stored as its least rotation
/// in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// Fails unless `w` is cyclically reduced.
    pub fn new(w: Word) -> Result<Self> {
        if !w.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced);
        }
        Ok(Self::from_cyclically_reduced(w))
    }

    fn from_cyclically_reduced(w: Word) -> Self {
        let mut letters = w.0;
        let k = least_rotation(&letters);
        letters.rotate_left(k);
        CyclicWord(letters)
    }

    pub fn parse(s: &str) -> Result<Self> {
        CyclicWord::new(Word::parse_strict(s)?)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The canonical rotation as a linear word.
    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator_number()).max().unwrap_or(0)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Booth's algorithm: start index of the lexicographically least rotation.
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let key = |i: usize| s[i % n].index();
    let mut fail = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = key(j);
        let mut i = fail[j - k - 1];
        while i != usize::MAX && sj != key(k + i + 1) {
            if sj < key(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i];
        }
        if i == usize::MAX && sj != key(k) {
            if sj < key(k) {
                k = j;
            }
            fail[j - k] = usize::MAX;
        } else {
            fail[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    k % n
}

/// Splits text into letters without reducing.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    if s.trim() == "1" {
        return Ok(out);
    }
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if (c == 'x' || c == 'X') && chars.get(i + 1).is_some_and(|(_, d)| d.is_ascii_digit()) {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(s.len(), |&(p, _)| p);
            let digits = &s[chars[i + 1].0..end];
            let k: u32 = digits.parse().ok().filter(|&k| k > 0 && k <= i32::MAX as u32).ok_or_else(|| {
                Error::BadToken {
                    token: s[pos..end].to_string(),
                    position: pos,
                }
            })?;
            out.push(if c == 'x' {
                Letter::generator(k)
            } else {
                Letter::generator(k).inverse()
            });
            i = j;
            continue;
        }
        if c.is_ascii_lowercase() {
            out.push(Letter::generator((c as u8 - b'a' + 1) as u32));
        } else if c.is_ascii_uppercase() {
            out.push(Letter::generator((c as u8 - b'A' + 1) as u32).inverse());
        } else {
            return Err(Error::BadToken {
                token: c.to_string(),
                position: pos,
            });
        }
        i += 1;
    }
    Ok(out)
}
