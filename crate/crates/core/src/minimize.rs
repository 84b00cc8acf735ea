//! Greedy Whitehead minimization.
//!
//! Each iteration builds the Whitehead hypergraph of the current cyclically
//! reduced graph, finds the second-kind automorphism with the most negative
//! size change through per-letter min-cuts, and applies it. The size
//! strictly drops at every step, so a run over an input of size `n` makes
//! at most `n` steps; when no move shrinks the graph its size is minimal in
//! the automorphic orbit.

use serde::Serialize;

use crate::automorphism::{AutStep, MinimizationTrace, WhiteheadAut};
use crate::error::{Error, Result};
use crate::graph::{circular_graph, cyclic_core, extract_basis, stallings_graph, AGraph, PointedAGraph};
use crate::hypergraph::WhiteheadHypergraph;
use crate::mincut::{best_whitehead_move, Move};
use crate::word::{CyclicWord, Word};

/// Outcome of a minimization run.
#[derive(Debug, Clone, Serialize)]
pub struct Minimization<T> {
    pub minimal: T,
    /// Size of the input, then the size after every step.
    pub size_history: Vec<usize>,
    pub trace: MinimizationTrace,
}

impl<T> Minimization<T> {
    pub fn final_size(&self) -> usize {
        *self.size_history.last().expect("history holds the initial size")
    }

    pub fn initial_size(&self) -> usize {
        self.size_history[0]
    }

    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

/// Minimal subgroup representative: a basis and its pointed graph.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupMinimum {
    pub basis: Vec<Word>,
    #[serde(skip)]
    pub graph: PointedAGraph,
}

fn to_aut(m: &Move) -> WhiteheadAut {
    WhiteheadAut::second_kind(m.pivot, m.cut.clone()).expect("min-cut witness is a v-cut")
}

fn check_size(before: usize, delta: i64, after: usize) -> Result<()> {
    if before as i64 + delta == after as i64 {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "size {before} with predicted change {delta} became {after}"
        )))
    }
}

/// Greedy loop over a tuple of cyclically reduced graphs sharing each
/// automorphism; the size is the total vertex count.
fn greedy_classes(mut parts: Vec<AGraph>) -> Result<Minimization<Vec<AGraph>>> {
    let mut total: usize = parts.iter().map(AGraph::size).sum();
    let mut size_history = vec![total];
    let mut trace = MinimizationTrace::default();
    loop {
        let mut hyper = WhiteheadHypergraph::build(&parts[0])?;
        for g in &parts[1..] {
            hyper = hyper.union(&WhiteheadHypergraph::build(g)?);
        }
        let Some(m) = best_whitehead_move(&hyper) else {
            break;
        };
        let aut = to_aut(&m);
        parts = parts
            .iter()
            .map(|g| aut.apply_to_cyclic_graph(g))
            .collect::<Result<_>>()?;
        let next: usize = parts.iter().map(AGraph::size).sum();
        check_size(total, m.delta, next)?;
        total = next;
        size_history.push(total);
        trace.push(AutStep { aut, conjugator: None });
    }
    Ok(Minimization {
        minimal: parts,
        size_history,
        trace,
    })
}

/// Minimizes the conjugacy class represented by a cyclically reduced graph.
pub fn minimize_conjugacy(g: &AGraph) -> Result<Minimization<AGraph>> {
    g.check_cyclically_reduced()?;
    let run = greedy_classes(vec![g.clone()])?;
    Ok(Minimization {
        minimal: run.minimal.into_iter().next().expect("one component"),
        size_history: run.size_history,
        trace: run.trace,
    })
}

/// Minimizes a tuple of conjugacy classes simultaneously: one automorphism
/// per step, applied to every component.
pub fn minimize_tuple(parts: &[AGraph]) -> Result<Minimization<Vec<AGraph>>> {
    if parts.is_empty() {
        return Ok(Minimization {
            minimal: Vec::new(),
            size_history: vec![0],
            trace: MinimizationTrace::default(),
        });
    }
    for g in parts {
        g.check_cyclically_reduced()?;
    }
    greedy_classes(parts.to_vec())
}

/// Re-bases a pointed graph at its cyclic core. Returns the core pointed at
/// the retraction of the old base, and the branch word from the old base.
fn rebase_at_core(g: &PointedAGraph) -> Result<(PointedAGraph, Word)> {
    let cc = cyclic_core(&g.graph)?;
    let base = cc.branches.beta(g.base).ok_or(Error::EmptyCore)?;
    let branch = cc.branches.branch_word(g.base).ok_or(Error::EmptyCore)?;
    Ok((PointedAGraph { graph: cc.graph, base }, branch))
}

fn nonempty(w: Word) -> Option<Word> {
    (!w.is_empty()).then_some(w)
}

/// Greedy loop on a pointed graph; each step records the automorphism and
/// the conjugation that moves the base back onto the cyclic core.
fn greedy_pointed(start: PointedAGraph) -> Result<(PointedAGraph, Vec<usize>, MinimizationTrace)> {
    let mut size_history = vec![start.size()];
    let mut trace = MinimizationTrace::default();
    if start.graph.edge_count() == 0 {
        return Ok((start, size_history, trace));
    }
    let (mut cur, branch) = rebase_at_core(&start)?;
    if !branch.is_empty() {
        size_history.push(cur.size());
        trace.push(AutStep {
            aut: WhiteheadAut::identity(),
            conjugator: Some(branch),
        });
    }
    loop {
        let hyper = WhiteheadHypergraph::build(&cur.graph)?;
        let Some(m) = best_whitehead_move(&hyper) else {
            break;
        };
        let aut = to_aut(&m);
        let image = aut.apply_to_pointed_graph(&cur)?;
        let (next, branch) = rebase_at_core(&image)?;
        check_size(cur.size(), m.delta, next.size())?;
        cur = next;
        size_history.push(cur.size());
        trace.push(AutStep {
            aut,
            conjugator: nonempty(branch),
        });
    }
    Ok((cur, size_history, trace))
}

fn rank_of(words: &[Word]) -> u32 {
    words.iter().map(Word::max_generator).max().unwrap_or(0).max(1)
}

/// Minimizes the subgroup generated by `gens`. The size of a subgroup is
/// the vertex count of its reduced graph; the trivial subgroup has size 1.
pub fn minimize_subgroup(gens: &[Word]) -> Result<Minimization<SubgroupMinimum>> {
    let start = stallings_graph(gens, rank_of(gens))?;
    let (graph, size_history, trace) = greedy_pointed(start)?;
    Ok(Minimization {
        minimal: SubgroupMinimum {
            basis: extract_basis(&graph),
            graph,
        },
        size_history,
        trace,
    })
}

/// Minimizes a word: the result is a shortest element of its automorphic
/// orbit. Sizes in the history are word lengths.
pub fn minimize_word(u: &Word) -> Result<Minimization<Word>> {
    if u.is_empty() {
        return Ok(Minimization {
            minimal: Word::empty(),
            size_history: vec![0],
            trace: MinimizationTrace::default(),
        });
    }
    let start = stallings_graph(std::slice::from_ref(u), rank_of(std::slice::from_ref(u)))?;
    let (graph, _, trace) = greedy_pointed(start)?;
    let mut current = u.clone();
    let mut size_history = vec![u.len()];
    for step in &trace.steps {
        current = step.apply_to_word(&current);
        if current.len() > u.len() {
            return Err(Error::Invariant(format!(
                "intermediate word of length {} exceeds input length {}",
                current.len(),
                u.len()
            )));
        }
        size_history.push(current.len());
    }
    if current.len() != graph.size() {
        return Err(Error::Invariant(format!(
            "word of length {} but graph of size {}",
            current.len(),
            graph.size()
        )));
    }
    Ok(Minimization {
        minimal: current,
        size_history,
        trace,
    })
}

/// Minimizes a cyclic word through its circular graph.
pub fn minimize_cyclic_word(u: &CyclicWord) -> Result<Minimization<CyclicWord>> {
    if u.is_empty() {
        return Ok(Minimization {
            minimal: u.clone(),
            size_history: vec![0],
            trace: MinimizationTrace::default(),
        });
    }
    let run = minimize_conjugacy(&circular_graph(&u.to_word())?)?;
    let mut current = u.to_word();
    for step in &run.trace.steps {
        current = step.apply_to_word(&current).cyclic_core_word().1;
    }
    if current.len() != run.minimal.size() {
        return Err(Error::Invariant(format!(
            "cyclic word of length {} but graph of size {}",
            current.len(),
            run.minimal.size()
        )));
    }
    Ok(Minimization {
        minimal: CyclicWord::new(current)?,
        size_history: run.size_history,
        trace: run.trace,
    })
}
