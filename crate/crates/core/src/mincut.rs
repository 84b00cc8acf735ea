//! Minimum `v`-cuts of a Whitehead hypergraph.
//!
//! The cut capacity counts hyperedges meeting both sides, so it is a
//! submodular set function and can be minimized exactly through max-flow:
//! every distinct hyperedge `d` becomes two gadget nodes `d_in -> d_out`
//! carrying its multiplicity, and every letter `u` of `d` is wired
//! `u -> d_in` and `d_out -> u` with infinite capacity. Finite `v`/`v⁻¹`
//! cuts of that network correspond exactly to `v`-cuts of the hypergraph,
//! with equal capacity. Max-flow is computed with Dinic's blocking-flow
//! algorithm.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::WhiteheadHypergraph;
use crate::letterset::LetterSet;
use crate::word::Letter;

#[derive(Debug, Clone, Copy)]
struct FlowArc {
    to: usize,
    capacity: i64,
    residual: i64,
}

/// A directed network with integer capacities. Arcs are stored in pairs:
/// arc `2k` is the forward arc and `2k + 1` its reverse residual arc.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<FlowArc>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(source < node_count && sink < node_count && source != sink);
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); node_count],
            source,
            sink,
        }
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    /// Number of forward arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64) {
        let i = self.arcs.len();
        self.arcs.push(FlowArc {
            to,
            capacity,
            residual: capacity,
        });
        self.arcs.push(FlowArc {
            to: from,
            capacity: 0,
            residual: 0,
        });
        self.out[from].push(i);
        self.out[to].push(i + 1);
    }

    fn levels(&self) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.out.len()];
        level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &i in &self.out[u] {
                let a = self.arcs[i];
                if a.residual > 0 && level[a.to] == u32::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        level
    }

    /// Augments along shortest paths until the level graph is exhausted;
    /// iterative depth-first search with per-node arc cursors.
    fn blocking_flow(&mut self, level: &mut [u32]) -> i64 {
        let mut cursor = vec![0usize; self.out.len()];
        let mut path: Vec<usize> = Vec::new();
        let mut total = 0;
        let mut u = self.source;
        loop {
            if u == self.sink {
                let push = path.iter().map(|&i| self.arcs[i].residual).min().unwrap_or(0);
                let mut back_to = None;
                for (k, &i) in path.iter().enumerate() {
                    self.arcs[i].residual -= push;
                    self.arcs[i ^ 1].residual += push;
                    if self.arcs[i].residual == 0 && back_to.is_none() {
                        back_to = Some(k);
                    }
                }
                total += push;
                let k = back_to.expect("some arc saturates");
                path.truncate(k);
                u = path.last().map_or(self.source, |&i| self.arcs[i].to);
                continue;
            }
            let mut advanced = false;
            while cursor[u] < self.out[u].len() {
                let i = self.out[u][cursor[u]];
                let a = self.arcs[i];
                if a.residual > 0 && level[a.to] == level[u].wrapping_add(1) {
                    path.push(i);
                    u = a.to;
                    advanced = true;
                    break;
                }
                cursor[u] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: remove u from the level graph and retreat
            level[u] = u32::MAX;
            match path.pop() {
                None => break,
                Some(i) => {
                    u = self.arcs[i ^ 1].to;
                    cursor[u] += 1;
                }
            }
        }
        total
    }

    /// Dinic's algorithm; returns the value of a maximum flow.
    pub fn max_flow(&mut self) -> i64 {
        let mut total = 0;
        loop {
            let mut level = self.levels();
            if level[self.sink] == u32::MAX {
                return total;
            }
            total += self.blocking_flow(&mut level);
        }
    }

    /// Nodes reachable from the source in the residual network.
    pub fn source_side(&self) -> Vec<bool> {
        let level = self.levels();
        level.iter().map(|&l| l != u32::MAX).collect()
    }

    /// Flow currently carried by forward arc `k`.
    pub fn flow(&self, k: usize) -> i64 {
        let a = self.arcs[2 * k];
        a.capacity - a.residual
    }

    /// Net flow out of the source.
    pub fn flow_value(&self) -> i64 {
        self.excess(self.source).map_or(0, |e| -e)
    }

    /// Inflow minus outflow at `node` over forward arcs.
    fn excess(&self, node: usize) -> Option<i64> {
        let mut ex = 0;
        for k in 0..self.arc_count() {
            let f = self.flow(k);
            let to = self.arcs[2 * k].to;
            let from = self.arcs[2 * k + 1].to;
            if to == node {
                ex += f;
            }
            if from == node {
                ex -= f;
            }
        }
        Some(ex)
    }

    /// Capacity bounds on every arc and conservation at every internal node.
    pub fn is_valid_flow(&self) -> bool {
        let bounded = (0..self.arc_count()).all(|k| {
            let f = self.flow(k);
            f >= 0 && f <= self.arcs[2 * k].capacity
        });
        bounded
            && (0..self.node_count())
                .filter(|&v| v != self.source && v != self.sink)
                .all(|v| self.excess(v) == Some(0))
    }

    /// Capacity of the cut separating `side` from its complement.
    pub fn cut_capacity(&self, side: &[bool]) -> i64 {
        (0..self.arc_count())
            .filter(|&k| side[self.arcs[2 * k + 1].to] && !side[self.arcs[2 * k].to])
            .map(|k| self.arcs[2 * k].capacity)
            .sum()
    }

    pub fn to_dot(&self, names: &[String]) -> String {
        let mut s = String::from("digraph network {\n");
        for k in 0..self.arc_count() {
            let from = self.arcs[2 * k + 1].to;
            let a = self.arcs[2 * k];
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}/{}\"];",
                names[from],
                names[a.to],
                a.capacity - a.residual,
                a.capacity
            );
        }
        s.push_str("}\n");
        s
    }
}

/// The gadget network of a hypergraph for pivot `v`: letter nodes first
/// (node `i` is the letter with index `i`), then `d_in`, `d_out` per
/// distinct hyperedge. Source is `v`, sink is `v⁻¹`.
pub fn hypergraph_to_network(w: &WhiteheadHypergraph, v: Letter) -> FlowNetwork {
    let letters = w.alphabet().size().max(v.index() + 2);
    let gadgets = w.hyperedges().len();
    let infinite = w.hyperedge_count() as i64 + 1;
    let mut net = FlowNetwork::new(letters + 2 * gadgets, v.index(), v.inverse().index());
    for (k, (e, m)) in w.hyperedges().iter().enumerate() {
        let d_in = letters + 2 * k;
        let d_out = d_in + 1;
        net.add_arc(d_in, d_out, *m as i64);
        for u in e.iter() {
            net.add_arc(u.index(), d_in, infinite);
            net.add_arc(d_out, u.index(), infinite);
        }
    }
    net
}

/// Node names for [`FlowNetwork::to_dot`] on a gadget network.
pub fn gadget_node_names(w: &WhiteheadHypergraph, net: &FlowNetwork) -> Vec<String> {
    let letters = net.node_count() - 2 * w.hyperedges().len();
    let mut names: Vec<String> = (0..letters).map(|i| Letter::from_index(i).to_string()).collect();
    for (k, _) in w.hyperedges().iter().enumerate() {
        names.push(format!("d{k}_in"));
        names.push(format!("d{k}_out"));
    }
    names
}

/// Directed doubling of a hypergraph whose hyperedges all have at most two
/// letters: each pair `{x, y}` becomes arcs `x -> y` and `y -> x` carrying
/// its multiplicity.
pub fn doubled_graph_network(w: &WhiteheadHypergraph, v: Letter) -> Result<FlowNetwork> {
    let letters = w.alphabet().size().max(v.index() + 2);
    let mut net = FlowNetwork::new(letters, v.index(), v.inverse().index());
    for (e, m) in w.hyperedges() {
        let ends: Vec<Letter> = e.iter().collect();
        match ends.as_slice() {
            [_] => {}
            [x, y] => {
                net.add_arc(x.index(), y.index(), *m as i64);
                net.add_arc(y.index(), x.index(), *m as i64);
            }
            _ => return Err(Error::Invariant(format!("hyperedge {e:?} is not a graph edge"))),
        }
    }
    Ok(net)
}

/// A `v`-cut and its capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub cut: LetterSet,
    pub capacity: usize,
}

/// Minimum-capacity `v`-cut. The witness is the set of letters reachable
/// from `v` in the final residual network, i.e. the inclusion-least
/// minimum cut.
pub fn min_vcut(w: &WhiteheadHypergraph, v: Letter) -> CutResult {
    let mut net = hypergraph_to_network(w, v);
    let value = net.max_flow();
    let side = net.source_side();
    let letters = net.node_count() - 2 * w.hyperedges().len();
    let cut: LetterSet = (0..letters).filter(|&i| side[i]).map(Letter::from_index).collect();
    debug_assert_eq!(w.capacity(&cut) as i64, value);
    CutResult {
        cut,
        capacity: value as usize,
    }
}

/// Largest rank accepted by [`brute_force_min_vcut`].
pub const BRUTE_FORCE_MAX_RANK: u32 = 8;

/// Exhaustive minimum over all `2^(2r-2)` `v`-cuts; ties go to the cut with
/// the least [`LetterSet`] value.
pub fn brute_force_min_vcut(w: &WhiteheadHypergraph, v: Letter) -> Result<CutResult> {
    let rank = w.rank().max(v.generator_number());
    if rank > BRUTE_FORCE_MAX_RANK {
        return Err(Error::RankGuard {
            rank,
            max: BRUTE_FORCE_MAX_RANK,
        });
    }
    let rest: Vec<Letter> = (0..2 * rank as usize)
        .map(Letter::from_index)
        .filter(|&l| l != v && l != v.inverse())
        .collect();
    let mut best: Option<CutResult> = None;
    for mask in 0u64..(1 << rest.len()) {
        let mut cut = LetterSet::singleton(v);
        for (i, &l) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cut.insert(l);
            }
        }
        let capacity = w.capacity(&cut);
        if best.as_ref().is_none_or(|b| capacity < b.capacity) {
            best = Some(CutResult { cut, capacity });
        }
    }
    Ok(best.expect("at least the singleton cut"))
}

/// A second-kind automorphism together with the size change it causes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub pivot: Letter,
    pub cut: LetterSet,
    pub delta: i64,
}

/// Evaluates the minimum cut for every positive letter occurring in `w`
/// (letters absent from `w` have degree 0 and cannot help) and returns the
/// most negative `capacity - degree`, or `None` if no move shrinks the
/// graph. Ties go to the smallest pivot. Per-letter searches run in
/// parallel; the selection is sequential.
pub fn best_whitehead_move(w: &WhiteheadHypergraph) -> Option<Move> {
    let candidates: Vec<Move> = w
        .active_generators()
        .into_par_iter()
        .map(|v| {
            let r = min_vcut(w, v);
            Move {
                pivot: v,
                delta: r.capacity as i64 - w.degree(v) as i64,
                cut: r.cut,
            }
        })
        .collect();
    candidates
        .into_iter()
        .filter(|m| m.delta < 0)
        .min_by_key(|m| (m.delta, m.pivot.index()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::parse_letter_set;

    fn set(s: &str) -> LetterSet {
        parse_letter_set(s).unwrap()
    }

    fn l(s: &str) -> Letter {
        s.parse().unwrap()
    }

    #[test]
    fn dinic_small_network() {
        let mut net = FlowNetwork::new(6, 0, 5);
        for (u, v, c) in [(0, 1, 10), (0, 2, 10), (1, 3, 4), (1, 4, 8), (2, 4, 9), (3, 5, 10), (4, 3, 6), (4, 5, 10)] {
            net.add_arc(u, v, c);
        }
        assert_eq!(net.max_flow(), 19);
        assert!(net.is_valid_flow());
        assert_eq!(net.flow_value(), 19);
        let side = net.source_side();
        assert_eq!(net.cut_capacity(&side), 19);
    }

    #[test]
    fn dinic_disconnected() {
        let mut net = FlowNetwork::new(4, 0, 3);
        net.add_arc(0, 1, 10);
        net.add_arc(2, 3, 5);
        assert_eq!(net.max_flow(), 0);
    }

    #[test]
    fn single_hyperedge_with_both_ends_is_always_cut() {
        let w = WhiteheadHypergraph::from_hyperedges(1, [set("a,A")]);
        let r = min_vcut(&w, l("a"));
        assert_eq!(r.capacity, 1);
        assert_eq!(r.cut, set("a"));
    }

    #[test]
    fn cyclic_word_ab() {
        // hyperedges of the circular graph of ab: {a, B} and {b, A}
        let w = WhiteheadHypergraph::from_hyperedges(2, [set("a,B"), set("A,b")]);
        let r = min_vcut(&w, l("a"));
        assert_eq!(r.capacity, 0);
        assert_eq!(r.cut, set("a,B"));
        assert_eq!(brute_force_min_vcut(&w, l("a")).unwrap(), r);
        let m = best_whitehead_move(&w).unwrap();
        assert_eq!((m.pivot, m.cut, m.delta), (l("a"), set("a,B"), -1));
    }

    #[test]
    fn cyclic_word_aa_has_no_move() {
        let w = WhiteheadHypergraph::from_hyperedges(1, [set("a,A"), set("a,A")]);
        assert_eq!(min_vcut(&w, l("a")).capacity, 2);
        assert!(best_whitehead_move(&w).is_none());
    }

    #[test]
    fn every_hyperedge_contains_pivot_pair() {
        let w = WhiteheadHypergraph::from_hyperedges(3, [set("a,A,b"), set("a,A,c,C"), set("a,A")]);
        assert_eq!(min_vcut(&w, l("a")).capacity, w.degree(l("a")));
    }

    #[test]
    fn brute_force_guard() {
        let w = WhiteheadHypergraph::from_hyperedges(9, [set("a,x9")]);
        assert!(matches!(brute_force_min_vcut(&w, l("a")), Err(Error::RankGuard { rank: 9, .. })));
    }

    #[test]
    fn doubled_graph_rejects_hyperedges() {
        let w = WhiteheadHypergraph::from_hyperedges(2, [set("a,b,B")]);
        assert!(doubled_graph_network(&w, l("a")).is_err());
    }
}
