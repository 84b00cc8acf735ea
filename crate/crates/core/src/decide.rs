//! Primitivity and free-factor tests built on minimization.

use serde::Serialize;

use crate::automorphism::MinimizationTrace;
use crate::error::{Error, Result};
use crate::minimize::{minimize_subgroup, minimize_word};
use crate::word::Word;

/// A yes/no answer with the trace that reached the minimal representative.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub minimal_size: usize,
    pub witness: MinimizationTrace,
}

/// A word is primitive iff some automorphism sends it to a single letter,
/// iff its minimal length is 1.
pub fn is_primitive(u: &Word) -> Result<Verdict> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let run = minimize_word(u)?;
    Ok(Verdict {
        holds: run.final_size() == 1,
        minimal_size: run.final_size(),
        witness: run.trace,
    })
}

/// A finitely generated subgroup is a free factor iff its minimal graph is
/// a single vertex, i.e. some automorphism sends it to a subgroup generated
/// by letters. The trivial subgroup counts as a free factor.
pub fn is_free_factor(gens: &[Word]) -> Result<Verdict> {
    let run = minimize_subgroup(gens)?;
    Ok(Verdict {
        holds: run.final_size() == 1,
        minimal_size: run.final_size(),
        witness: run.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn primitive_examples() {
        for u in ["a", "ab", "abA", "aab", "babAB", "abc"] {
            assert!(is_primitive(&w(u)).unwrap().holds, "{u}");
        }
        for u in ["aa", "abAB", "aabb", "abab"] {
            assert!(!is_primitive(&w(u)).unwrap().holds, "{u}");
        }
        assert!(matches!(is_primitive(&Word::empty()), Err(Error::EmptyWord)));
    }

    #[test]
    fn witness_reaches_a_letter() {
        let u = w("babAB");
        let v = is_primitive(&u).unwrap();
        assert_eq!(v.witness.apply_to_word(&u).len(), v.minimal_size);
    }

    #[test]
    fn free_factor_examples() {
        assert!(is_free_factor(&[w("ab"), w("b")]).unwrap().holds);
        assert!(is_free_factor(&[w("ab")]).unwrap().holds);
        assert!(is_free_factor(&[]).unwrap().holds);
        assert!(!is_free_factor(&[w("aa")]).unwrap().holds);
        assert!(!is_free_factor(&[w("aaB"), w("bbA")]).unwrap().holds);
        assert!(!is_free_factor(&[w("abAB")]).unwrap().holds);
    }
}
