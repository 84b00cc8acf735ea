//! Seeded random instances and the randomized cross-checks behind
//! `oracle-check`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automorphism::WhiteheadAut;
use crate::error::Result;
use crate::graph::{cyclic_core, stallings_graph, AGraph};
use crate::hypergraph::WhiteheadHypergraph;
use crate::letterset::LetterSet;
use crate::mincut::{brute_force_min_vcut, hypergraph_to_network, min_vcut};
use crate::word::{Alphabet, Letter, Word};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_letter<R: Rng>(rng: &mut R, alphabet: Alphabet) -> Letter {
    Letter::from_index(rng.gen_range(0..alphabet.size()))
}

/// A uniformly random freely reduced word of length `len`.
pub fn random_reduced_word<R: Rng>(rng: &mut R, alphabet: Alphabet, len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = random_letter(rng, alphabet);
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word::from_reduced(out).expect("built reduced")
}

/// A random cyclically reduced word of length `len`.
pub fn random_cyclic_word<R: Rng>(rng: &mut R, alphabet: Alphabet, len: usize) -> Word {
    loop {
        let w = random_reduced_word(rng, alphabet, len);
        if w.is_cyclically_reduced() {
            return w;
        }
    }
}

/// Between 1 and `max_gens` random reduced words of length 1 to `max_len`.
pub fn random_generators<R: Rng>(rng: &mut R, alphabet: Alphabet, max_gens: usize, max_len: usize) -> Vec<Word> {
    let k = rng.gen_range(1..=max_gens.max(1));
    (0..k)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            random_reduced_word(rng, alphabet, len)
        })
        .collect()
}

/// A random connected cyclically reduced graph with at most `max_size`
/// vertices: the cyclic core of a random subgroup graph.
pub fn random_cyclic_graph<R: Rng>(rng: &mut R, alphabet: Alphabet, max_size: usize) -> AGraph {
    loop {
        let gens = random_generators(rng, alphabet, 3, max_size.max(2));
        let g = stallings_graph(&gens, alphabet.rank()).expect("letters in range");
        if let Ok(cc) = cyclic_core(&g.graph) {
            if cc.graph.edge_count() > 0 && cc.graph.size() <= max_size {
                return cc.graph;
            }
        }
    }
}

/// Random nonempty subsets of the letters as hyperedges.
pub fn random_hypergraph<R: Rng>(rng: &mut R, alphabet: Alphabet, max_edges: usize) -> WhiteheadHypergraph {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let m = rng.gen_range(1..=max_edges.max(1));
    let edges = (0..m).map(|_| {
        let k = rng.gen_range(1..=letters.len());
        letters.choose_multiple(rng, k).copied().collect::<LetterSet>()
    });
    WhiteheadHypergraph::from_hyperedges(alphabet.rank(), edges)
}

/// A uniformly random `v`-cut.
pub fn random_vcut<R: Rng>(rng: &mut R, alphabet: Alphabet, v: Letter) -> LetterSet {
    let mut cut = LetterSet::singleton(v);
    for l in alphabet.letters() {
        if l != v && l != v.inverse() && rng.gen_bool(0.5) {
            cut.insert(l);
        }
    }
    cut
}

/// Counts from a randomized cross-check run.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct OracleReport {
    pub cases: usize,
    pub mincut_checks: usize,
    pub mincut_mismatches: usize,
    pub delta_checks: usize,
    pub delta_mismatches: usize,
    pub flow_violations: usize,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mincut_mismatches == 0 && self.delta_mismatches == 0 && self.flow_violations == 0
    }
}

/// For `cases` random instances of rank `rank`:
/// the flow min-cut capacity agrees with exhaustive search for every
/// letter of a random hypergraph, the flow is feasible, and the size
/// change of a random automorphism applied to a random graph equals
/// `capacity - degree`.
pub fn oracle_check(rank: u32, cases: usize, seed: u64) -> Result<OracleReport> {
    let alphabet = Alphabet::new(rank)?;
    let mut rng = rng_from_seed(seed);
    let mut report = OracleReport {
        cases,
        ..Default::default()
    };
    for case in 0..cases {
        let w = random_hypergraph(&mut rng, alphabet, 40);
        for v in alphabet.generators() {
            let mut net = hypergraph_to_network(&w, v);
            net.max_flow();
            if !net.is_valid_flow() {
                report.flow_violations += 1;
            }
            let fast = min_vcut(&w, v);
            let slow = brute_force_min_vcut(&w, v)?;
            report.mincut_checks += 1;
            if fast.capacity != slow.capacity || w.capacity(&fast.cut) != fast.capacity {
                report.mincut_mismatches += 1;
                report.failures.push(format!(
                    "case {case}: letter {v}: flow {} vs exhaustive {}",
                    fast.capacity, slow.capacity
                ));
            }
        }

        let g = random_cyclic_graph(&mut rng, alphabet, 30);
        let hyper = WhiteheadHypergraph::build(&g)?;
        let v = Letter::generator(rng.gen_range(1..=rank));
        let cut = random_vcut(&mut rng, alphabet, v);
        let predicted = hyper.predicted_delta(v, &cut)?;
        let image = WhiteheadAut::second_kind(v, cut.clone())?.apply_to_cyclic_graph(&g)?;
        report.delta_checks += 1;
        let actual = image.size() as i64 - g.size() as i64;
        if actual != predicted {
            report.delta_mismatches += 1;
            report
                .failures
                .push(format!("case {case}: ({v} | {cut}) changed size by {actual}, predicted {predicted}"));
        }
    }
    Ok(report)
}
