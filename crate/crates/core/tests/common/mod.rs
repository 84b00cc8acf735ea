//! Independent oracles shared by the integration tests. Words are handled
//! as plain `i32` vectors (generator k is `k`, its inverse `-k`) so the
//! checks do not go through the library's automorphism code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use whitehead::graph::{cyclic_core, extract_basis, stallings_graph, AGraph};
use whitehead::{Letter, Word};

pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

pub fn to_ints(u: &Word) -> Vec<i32> {
    u.letters().iter().map(|l| l.value()).collect()
}

pub fn from_ints(v: &[i32]) -> Word {
    Word::reduced(v.iter().map(|&x| Letter::new(x)))
}

pub fn free_reduce(v: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(v.len());
    for &x in v {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(v: &[i32]) -> Vec<i32> {
    let mut r = free_reduce(v);
    while r.len() >= 2 && r[0] == -r[r.len() - 1] {
        r.remove(0);
        r.pop();
    }
    r
}

/// Position in the order a < A < b < B < ...
pub fn letter_rank(x: i32) -> u32 {
    2 * (x.unsigned_abs() - 1) + u32::from(x < 0)
}

/// Least rotation in letter order, by trying them all.
pub fn canonical_rotation(v: &[i32]) -> Vec<i32> {
    (0..v.len().max(1))
        .map(|k| {
            let mut r = v.to_vec();
            if !r.is_empty() {
                r.rotate_left(k);
            }
            r
        })
        .min_by_key(|r| r.iter().map(|&x| letter_rank(x)).collect::<Vec<_>>())
        .unwrap()
}

/// An automorphism given by the images of generators 1..=r.
#[derive(Clone, Debug)]
pub struct Substitution(pub Vec<Vec<i32>>);

impl Substitution {
    pub fn apply(&self, v: &[i32]) -> Vec<i32> {
        let mut out = Vec::new();
        for &x in v {
            let img = &self.0[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(img.iter().rev().map(|y| -y));
            }
        }
        free_reduce(&out)
    }
}

/// All non-identity second-kind Whitehead automorphisms of rank `r`,
/// written out as substitutions.
pub fn second_kind_substitutions(r: i32) -> Vec<Substitution> {
    let letters: Vec<i32> = (1..=r).flat_map(|k| [k, -k]).collect();
    let mut out = Vec::new();
    for &v in &letters {
        let others: Vec<i32> = letters.iter().copied().filter(|&x| x != v && x != -v).collect();
        for mask in 1u32..(1 << others.len()) {
            let y: HashSet<i32> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let images = (1..=r)
                .map(|a| {
                    if a == v.abs() {
                        return vec![a];
                    }
                    let mut img = Vec::new();
                    if y.contains(&-a) {
                        img.push(-v);
                    }
                    img.push(a);
                    if y.contains(&a) {
                        img.push(v);
                    }
                    img
                })
                .collect();
            out.push(Substitution(images));
        }
    }
    out
}

/// Minimum length in the orbit of the cyclic word `u` under the given
/// automorphisms, exploring cyclic words up to length `|u| + slack`.
pub fn cyclic_orbit_min(u: &[i32], auts: &[Substitution], slack: usize) -> usize {
    let start = canonical_rotation(&cyclic_reduce(u));
    let bound = start.len() + slack;
    let mut seen: HashSet<Vec<i32>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut best = start.len();
    while let Some(x) = queue.pop_front() {
        best = best.min(x.len());
        for phi in auts {
            let y = canonical_rotation(&cyclic_reduce(&phi.apply(&x)));
            if y.len() <= bound && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    best
}

/// Minimum size in the orbit of the subgroup generated by `gens`. Orbit
/// members are kept as core graphs (conjugation is free) and explored up
/// to size `start + slack`.
pub fn subgroup_orbit_min(gens: &[Word], rank: u32, auts: &[Substitution], slack: usize) -> usize {
    let g = stallings_graph(gens, rank).unwrap();
    let core = cyclic_core(&g.graph).unwrap().graph;
    let bound = core.size() + slack;
    let mut best = g.size().min(core.size());
    let key = |h: &AGraph| h.unpointed_normal_form();
    let basis_of = |h: &AGraph| {
        let p = whitehead::PointedAGraph::new(h.clone(), 0).unwrap();
        extract_basis(&p)
    };
    let mut seen = HashSet::from([key(&core)]);
    let mut queue = VecDeque::from([core]);
    while let Some(h) = queue.pop_front() {
        best = best.min(h.size());
        let basis: Vec<Vec<i32>> = basis_of(&h).iter().map(to_ints).collect();
        for phi in auts {
            let images: Vec<Word> = basis.iter().map(|b| from_ints(&phi.apply(b))).collect();
            let img = stallings_graph(&images, rank).unwrap();
            let c = cyclic_core(&img.graph).unwrap().graph;
            if c.size() <= bound && seen.insert(key(&c)) {
                queue.push_back(c);
            }
        }
    }
    best
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of the exponent sums of `u`; 1 is necessary for primitivity.
pub fn exponent_gcd(u: &Word, rank: u32) -> i64 {
    let mut sums = vec![0i64; rank as usize + 1];
    for l in u.letters() {
        sums[l.generator_number() as usize] += l.value().signum() as i64;
    }
    sums.into_iter().fold(0, gcd)
}

pub fn edge(g: &mut AGraph, x: usize, label: &str, y: usize) {
    g.add_edge(x, label.parse().unwrap(), y).unwrap();
}

/// Γ1: reduced graph of ⟨aaB, bbA⟩, base 0.
pub fn gamma1() -> AGraph {
    let mut g = AGraph::new(2, 3);
    edge(&mut g, 0, "a", 1);
    edge(&mut g, 0, "b", 2);
    edge(&mut g, 1, "a", 2);
    edge(&mut g, 2, "b", 1);
    g
}

/// The six-vertex rank-5 cyclically reduced graph used for the hypergraph
/// example, vertices 1..6 renumbered 0..5.
pub fn six_vertex_example() -> AGraph {
    let mut g = AGraph::new(5, 6);
    for (x, l, y) in [
        (1, "a", 4),
        (1, "b", 2),
        (2, "d", 3),
        (5, "c", 3),
        (5, "d", 6),
        (3, "e", 6),
        (4, "a", 5),
        (2, "c", 5),
        (5, "a", 2),
    ] {
        edge(&mut g, x - 1, l, y - 1);
    }
    g
}
