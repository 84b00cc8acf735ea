//! The Whitehead hypergraph of a cyclically reduced graph: vertices are the
//! letters, and each graph vertex contributes one hyperedge, its hyperlink.
//!
//! For a Whitehead automorphism given by `(v, Y)` the size change of the
//! graph is `capacity(Y) - degree(v)`, which turns the search for a best
//! automorphism into a family of min-cut problems (see [`crate::mincut`]).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::AGraph;
use crate::letterset::LetterSet;
use crate::word::{Alphabet, Letter};

/// Hyperedges are kept as a multiset: distinct letter sets with their
/// multiplicities, sorted by [`LetterSet`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadHypergraph {
    rank: u32,
    hyperedges: Vec<(LetterSet, usize)>,
}

impl WhiteheadHypergraph {
    /// One hyperedge per vertex of `g`, equal to its hyperlink.
    pub fn build(g: &AGraph) -> Result<Self> {
        g.check_cyclically_reduced()?;
        Ok(Self::from_hyperedges(g.rank(), g.hyperlinks()))
    }

    /// Hypergraph with arbitrary (nonempty) hyperedges; empty sets are
    /// dropped.
    pub fn from_hyperedges<I>(rank: u32, edges: I) -> Self
    where
        I: IntoIterator<Item = LetterSet>,
    {
        let mut counts: BTreeMap<LetterSet, usize> = BTreeMap::new();
        for e in edges.into_iter().filter(|e| !e.is_empty()) {
            *counts.entry(e).or_default() += 1;
        }
        WhiteheadHypergraph {
            rank,
            hyperedges: counts.into_iter().collect(),
        }
    }

    /// Multiset union, as for a tuple of graphs.
    pub fn union(&self, other: &WhiteheadHypergraph) -> WhiteheadHypergraph {
        let mut counts: BTreeMap<LetterSet, usize> = BTreeMap::new();
        for (e, m) in self.hyperedges.iter().chain(&other.hyperedges) {
            *counts.entry(e.clone()).or_default() += m;
        }
        WhiteheadHypergraph {
            rank: self.rank.max(other.rank),
            hyperedges: counts.into_iter().collect(),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.rank.max(1)).expect("rank is positive")
    }

    /// Distinct hyperedges with multiplicities.
    pub fn hyperedges(&self) -> &[(LetterSet, usize)] {
        &self.hyperedges
    }

    /// Number of hyperedges counted with multiplicity.
    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.iter().map(|(_, m)| m).sum()
    }

    /// Number of hyperedges meeting both `cut` and its complement.
    pub fn capacity(&self, cut: &LetterSet) -> usize {
        self.hyperedges
            .iter()
            .filter(|(e, _)| e.is_split_by(cut))
            .map(|(_, m)| m)
            .sum()
    }

    /// Number of hyperedges containing `v`.
    pub fn degree(&self, v: Letter) -> usize {
        self.hyperedges
            .iter()
            .filter(|(e, _)| e.contains(v))
            .map(|(_, m)| m)
            .sum()
    }

    /// Size change `capacity(cut) - degree(v)` caused by the automorphism
    /// `(v, cut)`.
    pub fn predicted_delta(&self, v: Letter, cut: &LetterSet) -> Result<i64> {
        if !cut.contains(v) || cut.contains(v.inverse()) {
            return Err(Error::NotVCut {
                letter: v.to_string(),
                set: format!("{cut:?}"),
            });
        }
        Ok(self.capacity(cut) as i64 - self.degree(v) as i64)
    }

    /// Positive letters that occur in some hyperedge.
    pub fn active_generators(&self) -> Vec<Letter> {
        let mut seen = LetterSet::new();
        for (e, _) in &self.hyperedges {
            for l in e.iter() {
                seen.insert(l.positive());
            }
        }
        seen.iter().collect()
    }

    /// One line per distinct hyperedge: its letters and a `xK`
    /// multiplicity suffix.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (e, m) in &self.hyperedges {
            let _ = writeln!(s, "{e} x{m}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::parse_letter_set;

    fn set(s: &str) -> LetterSet {
        parse_letter_set(s).unwrap()
    }

    #[test]
    fn rose_gives_one_hyperedge() {
        let mut g = AGraph::new(2, 1);
        g.add_edge(0, Letter::generator(1), 0).unwrap();
        g.add_edge(0, Letter::generator(2), 0).unwrap();
        let w = WhiteheadHypergraph::build(&g).unwrap();
        assert_eq!(w.hyperedges(), &[(set("a,A,b,B"), 1)]);
    }

    #[test]
    fn rejects_graph_with_endpoint() {
        let mut g = AGraph::new(2, 2);
        g.add_edge(0, Letter::generator(1), 0).unwrap();
        g.add_edge(0, Letter::generator(2), 1).unwrap();
        assert!(matches!(WhiteheadHypergraph::build(&g), Err(Error::GraphNotCyclicallyReduced(1))));
    }

    #[test]
    fn capacity_and_degree_basics() {
        let w = WhiteheadHypergraph::from_hyperedges(2, [set("a,B"), set("a,B"), set("A,b")]);
        assert_eq!(w.hyperedge_count(), 3);
        assert_eq!(w.capacity(&LetterSet::new()), 0);
        assert_eq!(w.capacity(&LetterSet::full(w.alphabet())), 0);
        assert_eq!(w.capacity(&set("a")), 2);
        assert_eq!(w.degree("a".parse().unwrap()), 2);
        assert_eq!(w.degree("x9".parse().unwrap()), 0);
        assert_eq!(w.predicted_delta("a".parse().unwrap(), &set("a")).unwrap(), 0);
        assert!(w.predicted_delta("a".parse().unwrap(), &set("b")).is_err());
        assert_eq!(w.dump(), "A,b x1\na,B x2\n");
    }

    #[test]
    fn union_adds_multiplicities() {
        let w1 = WhiteheadHypergraph::from_hyperedges(2, [set("a,B")]);
        let w2 = WhiteheadHypergraph::from_hyperedges(3, [set("a,B"), set("c,C")]);
        let u = w1.union(&w2);
        assert_eq!(u.rank(), 3);
        assert_eq!(u.hyperedges(), &[(set("a,B"), 2), (set("c,C"), 1)]);
    }
}
