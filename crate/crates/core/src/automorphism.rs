//! Whitehead automorphisms and their action on words and graphs.
//!
//! First-kind automorphisms permute the symmetrized alphabet. A second-kind
//! automorphism is given by a pivot letter `v` and a `v`-cut `Y` (a set of
//! letters containing `v` but not `v⁻¹`); it fixes `v` and sends every
//! other letter `a` to `v⁻¹ a` if `a⁻¹ ∈ Y`, to `a v` if `a ∈ Y`, to both
//! at once if both hold.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{cyclic_core, fold, trim_pointed, AGraph, PointedAGraph};
use crate::letterset::LetterSet;
use crate::word::{parse_letters, Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAut {
    /// Generator `i + 1` maps to generator `perm[i]`, inverted when
    /// `inverted[i]`.
    FirstKind { perm: Vec<u32>, inverted: Vec<bool> },
    /// Pivot letter and the cut containing it.
    SecondKind { pivot: Letter, cut: LetterSet },
}

fn check_vcut(pivot: Letter, cut: &LetterSet) -> Result<()> {
    if cut.contains(pivot) && !cut.contains(pivot.inverse()) {
        Ok(())
    } else {
        Err(Error::NotVCut {
            letter: pivot.to_string(),
            set: format!("{cut:?}"),
        })
    }
}

impl WhiteheadAut {
    /// Second-kind automorphism; `cut` must contain `pivot` and avoid its
    /// inverse.
    pub fn second_kind(pivot: Letter, cut: LetterSet) -> Result<Self> {
        check_vcut(pivot, &cut)?;
        Ok(WhiteheadAut::SecondKind { pivot, cut })
    }

    /// First-kind automorphism; `perm` must be a permutation of `1..=r`.
    pub fn first_kind(perm: Vec<u32>, inverted: Vec<bool>) -> Result<Self> {
        let r = perm.len();
        let mut seen = vec![false; r];
        for &p in &perm {
            let i = p as usize;
            if i == 0 || i > r || seen[i - 1] {
                return Err(Error::Invariant(format!("{perm:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        if inverted.len() != r {
            return Err(Error::RankMismatch {
                expected: r as u32,
                found: inverted.len() as u32,
            });
        }
        Ok(WhiteheadAut::FirstKind { perm, inverted })
    }

    /// The identity, written as the second-kind pair `(a, {a})`.
    pub fn identity() -> Self {
        let a = Letter::generator(1);
        WhiteheadAut::SecondKind {
            pivot: a,
            cut: LetterSet::singleton(a),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            WhiteheadAut::SecondKind { cut, .. } => cut.len() == 1,
            WhiteheadAut::FirstKind { perm, inverted } => {
                perm.iter().enumerate().all(|(i, &p)| p as usize == i + 1) && inverted.iter().all(|&s| !s)
            }
        }
    }

    /// Largest generator this automorphism mentions.
    pub fn max_generator(&self) -> u32 {
        match self {
            WhiteheadAut::FirstKind { perm, .. } => perm.len() as u32,
            WhiteheadAut::SecondKind { pivot, cut } => cut
                .iter()
                .map(|l| l.generator_number())
                .max()
                .unwrap_or(0)
                .max(pivot.generator_number()),
        }
    }

    pub fn apply_to_letter(&self, a: Letter) -> Word {
        match self {
            WhiteheadAut::FirstKind { perm, inverted } => {
                let g = a.generator_number() as usize;
                if g > perm.len() {
                    return Word::reduced([a]);
                }
                let mut img = Letter::generator(perm[g - 1]);
                if inverted[g - 1] {
                    img = img.inverse();
                }
                if !a.is_positive() {
                    img = img.inverse();
                }
                Word::reduced([img])
            }
            WhiteheadAut::SecondKind { pivot, cut } => {
                let v = *pivot;
                if a == v || a == v.inverse() {
                    return Word::reduced([a]);
                }
                let mut letters = Vec::with_capacity(3);
                if cut.contains(a.inverse()) {
                    letters.push(v.inverse());
                }
                letters.push(a);
                if cut.contains(a) {
                    letters.push(v);
                }
                Word::from_reduced(letters).expect("a differs from the pivot")
            }
        }
    }

    pub fn apply_to_word(&self, u: &Word) -> Word {
        Word::reduced(u.letters().iter().flat_map(|&a| self.apply_to_letter(a).into_letters()))
    }

    /// Subdivides each edge by the image of its label, folds, then trims
    /// every endpoint except the base.
    pub fn apply_to_pointed_graph(&self, g: &PointedAGraph) -> Result<PointedAGraph> {
        let sub = g.graph.subdivide(|a| self.apply_to_letter(a))?;
        let folded = fold(&sub);
        let base = folded.vertex_map[g.base];
        let (trimmed, _) = trim_pointed(&folded.graph, base);
        Ok(trimmed)
    }

    /// Image of a cyclically reduced graph: the cyclic core of the
    /// subdivided and folded graph.
    pub fn apply_to_cyclic_graph(&self, g: &AGraph) -> Result<AGraph> {
        g.check_cyclically_reduced()?;
        let sub = g.subdivide(|a| self.apply_to_letter(a))?;
        let folded = fold(&sub);
        Ok(cyclic_core(&folded.graph)?.graph)
    }

    pub fn inverse(&self) -> WhiteheadAut {
        match self {
            WhiteheadAut::SecondKind { pivot, cut } => {
                let mut y = cut.clone();
                y.remove(*pivot);
                y.insert(pivot.inverse());
                WhiteheadAut::SecondKind {
                    pivot: pivot.inverse(),
                    cut: y,
                }
            }
            WhiteheadAut::FirstKind { perm, inverted } => {
                let r = perm.len();
                let mut inv_perm = vec![0; r];
                let mut inv_inverted = vec![false; r];
                for i in 0..r {
                    let j = perm[i] as usize - 1;
                    inv_perm[j] = i as u32 + 1;
                    inv_inverted[j] = inverted[i];
                }
                WhiteheadAut::FirstKind {
                    perm: inv_perm,
                    inverted: inv_inverted,
                }
            }
        }
    }
}

impl fmt::Display for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAut::SecondKind { pivot, cut } => write!(f, "({pivot} | {cut})"),
            WhiteheadAut::FirstKind { perm, inverted } => {
                f.write_str("perm: ")?;
                for (i, &p) in perm.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}->{}", Letter::generator(i as u32 + 1), Letter::generator(p))?;
                }
                f.write_str("; signs: ")?;
                for (i, &s) in inverted.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(if s { "-" } else { "+" })?;
                }
                Ok(())
            }
        }
    }
}

fn bad(s: &str) -> Error {
    Error::BadToken {
        token: s.to_string(),
        position: 0,
    }
}

impl FromStr for WhiteheadAut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (v, y) = inner.split_once('|').ok_or_else(|| bad(s))?;
            let pivot: Letter = v.trim().parse()?;
            let mut cut = LetterSet::new();
            for tok in y.split(',') {
                cut.insert(tok.trim().parse()?);
            }
            return WhiteheadAut::second_kind(pivot, cut);
        }
        let rest = t.strip_prefix("perm:").ok_or_else(|| bad(s))?;
        let (maps, signs) = rest.split_once("; signs:").ok_or_else(|| bad(s))?;
        let mut pairs = Vec::new();
        for m in maps.split(',') {
            let (from, to) = m.split_once("->").ok_or_else(|| bad(m))?;
            let from: Letter = from.trim().parse()?;
            let to: Letter = to.trim().parse()?;
            if !from.is_positive() || !to.is_positive() {
                return Err(bad(m));
            }
            pairs.push((from.generator_number(), to.generator_number()));
        }
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(i, &(f, _))| f as usize != i + 1) {
            return Err(bad(maps));
        }
        let perm = pairs.into_iter().map(|(_, t)| t).collect();
        let inverted = signs
            .split(',')
            .map(|x| match x.trim() {
                "+" => Ok(false),
                "-" => Ok(true),
                other => Err(bad(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        WhiteheadAut::first_kind(perm, inverted)
    }
}

/// All non-identity second-kind automorphisms of a rank-`r` free group,
/// pivot letters in alphabet order; there are `2r(2^(2r-2) - 1)` of them.
pub fn enumerate_second_kind(alphabet: Alphabet) -> impl Iterator<Item = WhiteheadAut> {
    let size = alphabet.size();
    assert!(size <= 64, "enumeration is limited to rank 32");
    let others = size - 2;
    let subsets: u64 = if others >= 64 { u64::MAX } else { (1u64 << others) - 1 };
    alphabet.letters().flat_map(move |v| {
        let rest: Vec<Letter> = alphabet
            .letters()
            .filter(|&l| l != v && l != v.inverse())
            .collect();
        (1..=subsets).map(move |mask| {
            let mut cut = LetterSet::singleton(v);
            for (i, &l) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    cut.insert(l);
                }
            }
            WhiteheadAut::SecondKind { pivot: v, cut }
        })
    })
}

/// An automorphism followed by an optional conjugation `x ↦ c⁻¹ x c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutStep {
    pub aut: WhiteheadAut,
    pub conjugator: Option<Word>,
}

impl AutStep {
    pub fn apply_to_word(&self, u: &Word) -> Word {
        let img = self.aut.apply_to_word(u);
        match &self.conjugator {
            Some(c) => img.conjugate_by(c),
            None => img,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    aut: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    conjugator: Option<Word>,
}

impl Serialize for AutStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepRepr {
            aut: self.aut.to_string(),
            conjugator: self.conjugator.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AutStep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = StepRepr::deserialize(d)?;
        Ok(AutStep {
            aut: r.aut.parse().map_err(serde::de::Error::custom)?,
            conjugator: r.conjugator,
        })
    }
}

/// Steps in application order: the first step is applied to the input
/// first. Never stored as a composed map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinimizationTrace {
    pub steps: Vec<AutStep>,
}

impl MinimizationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: AutStep) {
        self.steps.push(step);
    }

    pub fn apply_to_word(&self, u: &Word) -> Word {
        self.steps.iter().fold(u.clone(), |acc, s| s.apply_to_word(&acc))
    }

    pub fn apply_to_words(&self, us: &[Word]) -> Vec<Word> {
        us.iter().map(|u| self.apply_to_word(u)).collect()
    }

    pub fn conjugators(&self) -> impl Iterator<Item = &Word> {
        self.steps.iter().filter_map(|s| s.conjugator.as_ref())
    }

    /// Images of the generators under the composed automorphism. Image
    /// lengths can grow exponentially with the trace length, so this fails
    /// once the total image length exceeds `limit` letters.
    pub fn compose(&self, alphabet: Alphabet, limit: usize) -> Result<Vec<Word>> {
        let mut images: Vec<Word> = alphabet.generators().map(|g| Word::reduced([g])).collect();
        for step in &self.steps {
            images = images.iter().map(|w| step.apply_to_word(w)).collect();
            let total: usize = images.iter().map(Word::len).sum();
            if total > limit {
                return Err(Error::CompositionTooLarge(total));
            }
        }
        Ok(images)
    }
}

/// Parses a comma-separated list of letters into a set.
pub fn parse_letter_set(s: &str) -> Result<LetterSet> {
    let mut set = LetterSet::new();
    for tok in s.split(',') {
        for l in parse_letters(tok)? {
            set.insert(l);
        }
    }
    Ok(set)
}
