//! Whitehead minimization for free groups.
//!
//! Words, cyclic words, finitely generated subgroups and tuples of
//! conjugacy classes are all handled as finite labeled graphs. A greedy
//! loop applies the Whitehead automorphism that shrinks the graph most,
//! found with one min-cut computation per generator on the Whitehead
//! hypergraph, until no automorphism shrinks it further.
//!
//! ```
//! use whitehead::{minimize_word, Word};
//!
//! let run = minimize_word(&Word::parse("babAB").unwrap()).unwrap();
//! assert_eq!(run.minimal.len(), 1);
//! ```

pub mod automorphism;
pub mod decide;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod letterset;
pub mod mincut;
pub mod minimize;
pub mod random;
pub mod word;

pub use automorphism::{AutStep, MinimizationTrace, WhiteheadAut};
pub use decide::{is_free_factor, is_primitive, Verdict};
pub use error::{Error, Result};
pub use graph::{AGraph, PointedAGraph};
pub use hypergraph::WhiteheadHypergraph;
pub use letterset::LetterSet;
pub use minimize::{
    minimize_conjugacy, minimize_cyclic_word, minimize_subgroup, minimize_tuple, minimize_word, Minimization,
    SubgroupMinimum,
};
pub use word::{Alphabet, CyclicWord, Letter, Word};
