//! Text format for graphs.
//!
//! ```text
//! # comments and blank lines are ignored
//! agraph <vertices> <rank> [base]
//! <source> <letter> <target>
//! ...
//! ```
//!
//! Vertices are numbered from 0. A letter may be negative (`1 B 0` is the
//! same edge as `0 b 1`). A file may hold several `agraph` blocks; a line
//! `cyclic <word>` outside any block adds the circular graph of a cyclically
//! reduced word as one more block.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{circular_graph, AGraph, Edge};
use crate::word::{Letter, Word};

/// A parsed graph block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: AGraph,
    pub base: Option<usize>,
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn parse_number(tok: &str, what: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| format_err(line, format!("expected {what}, found {tok:?}")))
}

struct Block {
    file: GraphFile,
    seen: HashSet<Edge>,
}

/// Parses every block in `text`.
pub fn parse_graph_blocks(text: &str) -> Result<Vec<GraphFile>> {
    let mut done: Vec<GraphFile> = Vec::new();
    let mut current: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "agraph" => {
                if !(3..=4).contains(&toks.len()) {
                    return Err(format_err(line, "expected `agraph <vertices> <rank> [base]`"));
                }
                let n = parse_number(toks[1], "a vertex count", line)?;
                let rank = parse_number(toks[2], "a rank", line)?;
                if rank == 0 || rank > i32::MAX as usize / 2 {
                    return Err(format_err(line, format!("rank {rank} is out of range")));
                }
                if n == 0 {
                    return Err(format_err(line, "a graph needs at least one vertex"));
                }
                let base = match toks.get(3) {
                    Some(t) => {
                        let b = parse_number(t, "a base vertex", line)?;
                        if b >= n {
                            return Err(format_err(line, format!("base {b} is not a vertex (0..{n})")));
                        }
                        Some(b)
                    }
                    None => None,
                };
                done.extend(current.take().map(|b| b.file));
                current = Some(Block {
                    file: GraphFile {
                        graph: AGraph::new(rank as u32, n),
                        base,
                    },
                    seen: HashSet::new(),
                });
            }
            "cyclic" => {
                if toks.len() != 2 {
                    return Err(format_err(line, "expected `cyclic <word>`"));
                }
                let w = Word::parse_strict(toks[1]).map_err(|e| format_err(line, e.to_string()))?;
                let g = circular_graph(&w).map_err(|e| format_err(line, e.to_string()))?;
                done.extend(current.take().map(|b| b.file));
                done.push(GraphFile { graph: g, base: None });
            }
            _ => {
                let Some(block) = current.as_mut() else {
                    return Err(format_err(line, "edge before any `agraph` header"));
                };
                if toks.len() != 3 {
                    return Err(format_err(line, "expected `<source> <letter> <target>`"));
                }
                let g = &mut block.file.graph;
                let n = g.vertex_count();
                let s = parse_number(toks[0], "a source vertex", line)?;
                let t = parse_number(toks[2], "a target vertex", line)?;
                for v in [s, t] {
                    if v >= n {
                        return Err(format_err(line, format!("dangling vertex id {v} (graph has {n} vertices)")));
                    }
                }
                let label: Letter = toks[1].parse().map_err(|e: Error| format_err(line, e.to_string()))?;
                if label.generator_number() > g.rank() {
                    return Err(format_err(
                        line,
                        format!("label {label} is outside the alphabet of rank {}", g.rank()),
                    ));
                }
                g.add_edge(s, label, t).map_err(|e| format_err(line, e.to_string()))?;
                let e = *g.edges().last().expect("edge just added");
                if !block.seen.insert(e) {
                    return Err(format_err(line, format!("duplicate edge {s} {label} {t}")));
                }
            }
        }
    }
    done.extend(current.map(|b| b.file));
    Ok(done)
}

/// Parses a file holding exactly one block.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut blocks = parse_graph_blocks(text)?;
    match blocks.len() {
        1 => Ok(blocks.pop().expect("one block")),
        0 => Err(format_err(0, "no `agraph` header")),
        k => Err(format_err(0, format!("expected one graph, found {k}"))),
    }
}

/// Writes `g` in the text format; edges are written positively, in order.
pub fn write_graph(g: &AGraph, base: Option<usize>) -> String {
    let mut s = String::new();
    match base {
        Some(b) => {
            let _ = writeln!(s, "agraph {} {} {}", g.vertex_count(), g.rank(), b);
        }
        None => {
            let _ = writeln!(s, "agraph {} {}", g.vertex_count(), g.rank());
        }
    }
    for e in g.edges() {
        let _ = writeln!(s, "{} {} {}", e.source, e.label, e.target);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# example\nagraph 3 2 0\n0 a 1\n0 b 2\n1 a 2 # trailing\n1 B 2\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.base, Some(0));
        assert_eq!(f.graph.edge_count(), 4);
        assert_eq!(f.graph.edges()[3].source, 2);
        let again = parse_graph(&write_graph(&f.graph, f.base)).unwrap();
        assert_eq!(again, f);
    }

    fn line_of(text: &str) -> usize {
        match parse_graph_blocks(text) {
            Err(Error::Format { line, .. }) => line,
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(line_of("agraph 2 2\n0 a 1\n0 a 1\n"), 3);
        assert_eq!(line_of("agraph 2 2\n0 a 1\n1 A 0\n"), 3);
        assert_eq!(line_of("agraph 2 2\n\n0 a 2\n"), 3);
        assert_eq!(line_of("agraph 2 2\n0 c 1\n"), 2);
        assert_eq!(line_of("0 a 1\n"), 1);
        assert_eq!(line_of("agraph 2 0\n"), 1);
        assert_eq!(line_of("agraph 2 2 5\n"), 1);
        assert_eq!(line_of("agraph 2 2\n0 a\n"), 2);
        assert_eq!(line_of("agraph 2 2\n0 ? 1\n"), 2);
        assert_eq!(line_of("cyclic abA\n"), 1);
    }

    #[test]
    fn several_blocks() {
        let text = "agraph 1 2\n0 a 0\n0 b 0\ncyclic ab\nagraph 1 1\n0 a 0\n";
        let blocks = parse_graph_blocks(text).unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[1].graph.vertex_count(), 2);
        assert!(parse_graph(text).is_err());
    }
}
