//! Dual A-graphs (Stallings graphs): folding, trimming, branches, subgroup
//! graphs and basis extraction.
//!
//! Only positively labeled edges are stored; every edge `(x, a, y)` implies
//! its dual `(y, a⁻¹, x)`. Vertex ids are dense indices `0..vertex_count`
//! and are reassigned by every operation that builds a new graph; the
//! returned vertex maps are the only link between old and new ids.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::letterset::LetterSet;
use crate::word::{Alphabet, Letter, Word};

/// A positively labeled edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub label: Letter,
    pub target: usize,
}

/// One outgoing arc of the dual graph: label, target, index of the stored
/// positive edge it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub label: Letter,
    pub target: usize,
    pub edge: usize,
}

/// Outgoing arcs per vertex, sorted by label in alphabet order.
pub type Adjacency = Vec<Vec<Arc>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AGraph {
    rank: u32,
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl AGraph {
    pub fn new(rank: u32, vertex_count: usize) -> Self {
        AGraph {
            rank,
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Single vertex, no edges.
    pub fn point(rank: u32) -> Self {
        AGraph::new(rank, 1)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.rank.max(1)).expect("rank is positive")
    }

    /// Raises the rank; labels are unaffected.
    pub fn with_rank(mut self, rank: u32) -> Self {
        self.rank = self.rank.max(rank);
        self
    }

    /// Number of vertices, the size of the graph.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn size(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: x,
                count: self.vertex_count,
            })
        }
    }

    /// Adds `(source, label, target)` together with its dual. Negative
    /// labels are stored as the reversed positive edge.
    pub fn add_edge(&mut self, source: usize, label: Letter, target: usize) -> Result<()> {
        self.check_vertex(source)?;
        self.check_vertex(target)?;
        self.alphabet().check(label)?;
        let e = if label.is_positive() {
            Edge { source, label, target }
        } else {
            Edge {
                source: target,
                label: label.inverse(),
                target: source,
            }
        };
        self.edges.push(e);
        Ok(())
    }

    /// Adds a path labeled `word` from `source` to `target`, creating
    /// `|word| - 1` fresh vertices. `word` must be nonempty.
    pub fn add_path(&mut self, source: usize, word: &Word, target: usize) -> Result<()> {
        let letters = word.letters();
        let Some((&last, init)) = letters.split_last() else {
            return Err(Error::EmptyWord);
        };
        let mut x = source;
        for &l in init {
            let y = self.add_vertex();
            self.add_edge(x, l, y)?;
            x = y;
        }
        self.add_edge(x, last, target)
    }

    /// Outgoing arcs of the dual graph, per vertex, sorted by label.
    pub fn adjacency(&self) -> Adjacency {
        let mut adj: Adjacency = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.source].push(Arc {
                label: e.label,
                target: e.target,
                edge: i,
            });
            adj[e.target].push(Arc {
                label: e.label.inverse(),
                target: e.source,
                edge: i,
            });
        }
        for arcs in &mut adj {
            arcs.sort_by_key(|a| (a.label.index(), a.target, a.edge));
        }
        adj
    }

    /// Labels of the edges entering `x` (duals included).
    pub fn hyperlink(&self, x: usize) -> Result<LetterSet> {
        self.check_vertex(x)?;
        let mut s = LetterSet::new();
        for e in &self.edges {
            if e.target == x {
                s.insert(e.label);
            }
            if e.source == x {
                s.insert(e.label.inverse());
            }
        }
        Ok(s)
    }

    /// All hyperlinks at once, indexed by vertex.
    pub fn hyperlinks(&self) -> Vec<LetterSet> {
        let mut out = vec![LetterSet::new(); self.vertex_count];
        for e in &self.edges {
            out[e.target].insert(e.label);
            out[e.source].insert(e.label.inverse());
        }
        out
    }

    /// Number of edges entering each vertex (duals included).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.source] += 1;
            deg[e.target] += 1;
        }
        deg
    }

    /// First reduction conflict: a vertex entered by two edges with the same
    /// label.
    pub fn reduction_conflict(&self) -> Option<(usize, Letter)> {
        let adj = self.adjacency();
        for (x, arcs) in adj.iter().enumerate() {
            for w in arcs.windows(2) {
                if w[0].label == w[1].label {
                    // two arcs out of x labeled l = two edges into x labeled l⁻¹
                    return Some((x, w[0].label.inverse()));
                }
            }
        }
        None
    }

    pub fn is_reduced(&self) -> bool {
        self.reduction_conflict().is_none()
    }

    pub fn check_reduced(&self) -> Result<()> {
        match self.reduction_conflict() {
            None => Ok(()),
            Some((vertex, l)) => Err(Error::GraphNotReduced {
                vertex,
                label: l.to_string(),
            }),
        }
    }

    /// Reduced, and every vertex is entered by at least two edges.
    pub fn check_cyclically_reduced(&self) -> Result<()> {
        self.check_reduced()?;
        match self.degrees().iter().position(|&d| d < 2) {
            Some(x) => Err(Error::GraphNotCyclicallyReduced(x)),
            None => Ok(()),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.check_cyclically_reduced().is_ok()
    }

    /// Connected components as lists of vertices, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for a in &adj[x] {
                    if !seen[a.target] {
                        seen[a.target] = true;
                        comp.push(a.target);
                        stack.push(a.target);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Smallest rank covering every label.
    pub fn max_generator(&self) -> u32 {
        self.edges.iter().map(|e| e.label.generator_number()).max().unwrap_or(0)
    }

    /// Positive generators occurring as labels, in order.
    pub fn used_generators(&self) -> Vec<Letter> {
        let mut g: Vec<Letter> = self.edges.iter().map(|e| e.label).collect();
        g.sort();
        g.dedup();
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &AGraph) -> AGraph {
        let shift = self.vertex_count;
        let mut g = AGraph::new(self.rank.max(other.rank), self.vertex_count + other.vertex_count);
        g.edges = self.edges.clone();
        g.edges.extend(other.edges.iter().map(|e| Edge {
            source: e.source + shift,
            label: e.label,
            target: e.target + shift,
        }));
        g
    }

    /// Replaces every edge `(x, a, y)` by a path labeled `image(a)`.
    pub fn subdivide<F>(&self, mut image: F) -> Result<AGraph>
    where
        F: FnMut(Letter) -> Word,
    {
        let mut rank = self.rank;
        let mut g = AGraph::new(rank, self.vertex_count);
        let mut paths = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let w = image(e.label);
            rank = rank.max(w.max_generator());
            paths.push(w);
        }
        g.rank = rank;
        for (e, w) in self.edges.iter().zip(&paths) {
            g.add_path(e.source, w, e.target)?;
        }
        Ok(g)
    }

    /// Canonical form of the unpointed graph: per component, the least
    /// pointed normal form over all base vertices; components sorted.
    /// Quadratic; meant for tests and small graphs.
    pub fn unpointed_normal_form(&self) -> NormalForm {
        let adj = self.adjacency();
        let mut forms: Vec<String> = self
            .components()
            .into_iter()
            .map(|comp| {
                comp.iter()
                    .map(|&b| normal_form_from(&adj, b, self.vertex_count).0)
                    .min()
                    .expect("component is nonempty")
            })
            .collect();
        forms.sort();
        NormalForm(forms.join("||"))
    }
}

/// A graph with a distinguished base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedAGraph {
    pub graph: AGraph,
    pub base: usize,
}

impl PointedAGraph {
    pub fn new(graph: AGraph, base: usize) -> Result<Self> {
        graph.check_vertex(base)?;
        Ok(PointedAGraph { graph, base })
    }

    pub fn size(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Connected, reduced, and no endpoint other than the base.
    pub fn check_subgroup_graph(&self) -> Result<()> {
        self.graph.check_reduced()?;
        if !self.graph.is_connected() {
            return Err(Error::Invariant("subgroup graph is not connected".into()));
        }
        if self.graph.vertex_count() == 1 {
            return Ok(());
        }
        let deg = self.graph.degrees();
        match (0..deg.len()).find(|&x| x != self.base && deg[x] < 2) {
            Some(x) => Err(Error::GraphNotCyclicallyReduced(x)),
            None => Ok(()),
        }
    }

    pub fn normal_form(&self) -> NormalForm {
        pointed_normal_form(self)
    }
}

/// Result of folding: the reduced graph and the old-to-new vertex map.
#[derive(Debug, Clone)]
pub struct Folded {
    pub graph: AGraph,
    pub vertex_map: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }
}

/// Folding state: per class representative, one recorded target per label.
struct Folder {
    uf: UnionFind,
    out: Vec<Vec<(usize, usize)>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(n: usize) -> Self {
        Folder {
            uf: UnionFind::new(n),
            out: vec![Vec::new(); n],
            pending: Vec::new(),
        }
    }

    fn record(&mut self, rep: usize, label: usize, target: usize) {
        match self.out[rep].iter().find(|&&(l, _)| l == label) {
            Some(&(_, t)) => self.pending.push((t, target)),
            None => self.out[rep].push((label, target)),
        }
    }

    fn insert(&mut self, x: usize, label: usize, y: usize) {
        let rx = self.uf.find(x);
        self.record(rx, label, y);
        self.drain();
    }

    fn drain(&mut self) {
        while let Some((p, q)) = self.pending.pop() {
            let (rp, rq) = (self.uf.find(p), self.uf.find(q));
            if rp == rq {
                continue;
            }
            let (root, child) = if self.uf.size[rp] >= self.uf.size[rq] {
                (rp, rq)
            } else {
                (rq, rp)
            };
            self.uf.parent[child] = root;
            self.uf.size[root] += self.uf.size[child];
            for (l, t) in std::mem::take(&mut self.out[child]) {
                self.record(root, l, t);
            }
        }
    }
}

/// Stallings folding: identifies vertices until no two equally labeled
/// edges enter the same vertex.
pub fn fold(g: &AGraph) -> Folded {
    let order: Vec<usize> = (0..g.edges.len()).collect();
    fold_in_order(g, &order)
}

/// [`fold`] processing the edges in the given order. The result does not
/// depend on the order up to vertex renaming.
pub fn fold_in_order(g: &AGraph, order: &[usize]) -> Folded {
    let n = g.vertex_count;
    let mut folder = Folder::new(n);
    for &i in order {
        let e = g.edges[i];
        folder.insert(e.source, e.label.index(), e.target);
        folder.insert(e.target, e.label.inverse().index(), e.source);
    }
    let mut new_id = vec![usize::MAX; n];
    let mut count = 0;
    let mut vertex_map = Vec::with_capacity(n);
    for v in 0..n {
        let r = folder.uf.find(v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
        vertex_map.push(new_id[r]);
    }
    let mut graph = AGraph::new(g.rank, count);
    let mut seen = HashSet::new();
    for e in &g.edges {
        let ne = Edge {
            source: vertex_map[e.source],
            label: e.label,
            target: vertex_map[e.target],
        };
        if seen.insert(ne) {
            graph.edges.push(ne);
        }
    }
    Folded { graph, vertex_map }
}

/// Subgraph induced by the vertices with `keep[v]`, renumbered in order.
fn induced(g: &AGraph, keep: &[bool]) -> (AGraph, Vec<Option<usize>>) {
    let mut map = vec![None; g.vertex_count];
    let mut count = 0;
    for v in 0..g.vertex_count {
        if keep[v] {
            map[v] = Some(count);
            count += 1;
        }
    }
    let mut out = AGraph::new(g.rank, count);
    for e in &g.edges {
        if let (Some(s), Some(t)) = (map[e.source], map[e.target]) {
            out.edges.push(Edge {
                source: s,
                label: e.label,
                target: t,
            });
        }
    }
    (out, map)
}

/// Repeatedly removes endpoints (vertices entered by at most one edge),
/// never removing `keep`. Returns the surviving-vertex mask.
fn trim_mask(g: &AGraph, adj: &Adjacency, keep: Option<usize>) -> Vec<bool> {
    let n = g.vertex_count;
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| deg[x] <= 1 && Some(x) != keep).collect();
    while let Some(x) = queue.pop_front() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for a in &adj[x] {
            let y = a.target;
            if alive[y] && y != x {
                deg[y] -= 1;
                if deg[y] <= 1 && Some(y) != keep {
                    queue.push_back(y);
                }
            }
        }
    }
    alive
}

/// Trims every endpoint except `base`; returns the trimmed pointed graph and
/// the vertex map.
pub fn trim_pointed(g: &AGraph, base: usize) -> (PointedAGraph, Vec<Option<usize>>) {
    let adj = g.adjacency();
    let alive = trim_mask(g, &adj, Some(base));
    let (graph, map) = induced(g, &alive);
    let base = map[base].expect("base survives trimming");
    (PointedAGraph { graph, base }, map)
}

/// Shortest paths from removed vertices to the cyclic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchInfo {
    /// Core vertex (in core numbering) each original vertex retracts to.
    beta: Vec<Option<usize>>,
    /// First step towards the core: label and next original vertex.
    step: Vec<Option<(Letter, usize)>>,
}

impl BranchInfo {
    /// Extremity in the core of the branch at `x`.
    pub fn beta(&self, x: usize) -> Option<usize> {
        self.beta.get(x).copied().flatten()
    }

    /// Label of the branch at `x`; empty when `x` lies in the core.
    pub fn branch_word(&self, x: usize) -> Option<Word> {
        self.beta(x)?;
        let mut letters = Vec::new();
        let mut cur = x;
        while let Some((l, next)) = self.step[cur] {
            letters.push(l);
            cur = next;
        }
        Some(Word::from_reduced(letters).expect("branch paths are reduced"))
    }
}

/// The cyclic core of a reduced graph with branch data.
#[derive(Debug, Clone)]
pub struct CyclicCore {
    pub graph: AGraph,
    pub branches: BranchInfo,
    pub vertex_map: Vec<Option<usize>>,
}

/// Trims a reduced graph down to its cyclic core.
///
/// A single vertex without edges (the trivial subgroup) is its own core.
/// Any other graph whose trimming leaves nothing fails with
/// [`Error::EmptyCore`].
pub fn cyclic_core(g: &AGraph) -> Result<CyclicCore> {
    g.check_reduced()?;
    if g.vertex_count == 1 && g.edges.is_empty() {
        return Ok(CyclicCore {
            graph: g.clone(),
            branches: BranchInfo {
                beta: vec![Some(0)],
                step: vec![None],
            },
            vertex_map: vec![Some(0)],
        });
    }
    let adj = g.adjacency();
    let alive = trim_mask(g, &adj, None);
    if !alive.iter().any(|&a| a) {
        return Err(Error::EmptyCore);
    }
    let (core, map) = induced(g, &alive);
    let n = g.vertex_count;
    let mut beta: Vec<Option<usize>> = map.clone();
    let mut step = vec![None; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| alive[x]).collect();
    while let Some(y) = queue.pop_front() {
        for a in &adj[y] {
            let x = a.target;
            if beta[x].is_none() {
                // arc y -l-> x is the edge x -l⁻¹-> y
                beta[x] = beta[y];
                step[x] = Some((a.label.inverse(), y));
                queue.push_back(x);
            }
        }
    }
    Ok(CyclicCore {
        graph: core,
        branches: BranchInfo { beta, step },
        vertex_map: map,
    })
}

/// The bouquet of loops labeled by the (nonempty) generators around base 0.
pub fn build_bouquet(gens: &[Word], rank: u32) -> Result<PointedAGraph> {
    let mut g = AGraph::point(rank);
    for w in gens.iter().filter(|w| !w.is_empty()) {
        w.check_alphabet(g.alphabet())?;
        g.add_path(0, w, 0)?;
    }
    Ok(PointedAGraph { graph: g, base: 0 })
}

/// The reduced graph representing the subgroup generated by `gens`.
pub fn stallings_graph(gens: &[Word], rank: u32) -> Result<PointedAGraph> {
    let bouquet = build_bouquet(gens, rank)?;
    let folded = fold(&bouquet.graph);
    Ok(PointedAGraph {
        base: folded.vertex_map[bouquet.base],
        graph: folded.graph,
    })
}

/// The cycle spelling a nonempty cyclically reduced word, as a graph of
/// the conjugacy class it represents.
pub fn circular_graph(u: &Word) -> Result<AGraph> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !u.is_cyclically_reduced() {
        return Err(Error::NotCyclicallyReduced);
    }
    let n = u.len();
    let mut g = AGraph::new(u.max_generator().max(1), n);
    for (i, &l) in u.letters().iter().enumerate() {
        g.add_edge(i, l, (i + 1) % n)?;
    }
    Ok(g)
}

/// Breadth-first spanning tree from `base`, arcs taken in label order.
/// Returns parent arcs per vertex and the visiting order.
fn bfs_tree(adj: &Adjacency, base: usize) -> (Vec<Option<Arc>>, Vec<usize>, Vec<bool>) {
    let n = adj.len();
    let mut parent: Vec<Option<Arc>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = vec![base];
    seen[base] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for a in &adj[x] {
            if !seen[a.target] {
                seen[a.target] = true;
                parent[a.target] = Some(Arc {
                    label: a.label,
                    target: x,
                    edge: a.edge,
                });
                order.push(a.target);
            }
        }
    }
    (parent, order, seen)
}

/// A free basis of the subgroup represented by `g`: `u_x · a · u_y⁻¹` for
/// each positive edge `(x, a, y)` outside a BFS spanning tree, where `u_x`
/// labels the tree path from the base to `x`.
pub fn extract_basis(g: &PointedAGraph) -> Vec<Word> {
    let adj = g.graph.adjacency();
    let (parent, order, _) = bfs_tree(&adj, g.base);
    let n = g.graph.vertex_count;
    let mut tree_edge = vec![false; g.graph.edges.len()];
    let mut prefix: Vec<Word> = vec![Word::empty(); n];
    for &x in &order {
        if let Some(p) = parent[x] {
            tree_edge[p.edge] = true;
            prefix[x] = prefix[p.target].mul(&Word::reduced([p.label]));
        }
    }
    let mut basis = Vec::new();
    let mut done = vec![false; g.graph.edges.len()];
    for &x in &order {
        for a in &adj[x] {
            if !a.label.is_positive() || tree_edge[a.edge] || done[a.edge] {
                continue;
            }
            done[a.edge] = true;
            let h = prefix[x].mul(&Word::reduced([a.label])).mul(&prefix[a.target].inverse());
            basis.push(h);
        }
    }
    basis
}

/// Canonical string of a pointed reduced graph: equal iff there is a
/// base-preserving label-preserving isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(pub String);

impl NormalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

fn normal_form_from(adj: &Adjacency, base: usize, n: usize) -> NormalForm {
    let (_, order, seen) = bfs_tree(adj, base);
    let mut new_id = vec![usize::MAX; n];
    for (i, &x) in order.iter().enumerate() {
        new_id[x] = i;
    }
    let mut s = String::new();
    let _ = write!(s, "{}", order.len());
    for &x in &order {
        s.push('|');
        for a in &adj[x] {
            let _ = write!(s, "{}>{};", a.label, new_id[a.target]);
        }
    }
    let unreached = seen.iter().filter(|&&b| !b).count();
    if unreached > 0 {
        let _ = write!(s, "+{unreached}");
    }
    NormalForm(s)
}

/// BFS relabeling from the base with letters in alphabet order.
pub fn pointed_normal_form(g: &PointedAGraph) -> NormalForm {
    normal_form_from(&g.graph.adjacency(), g.base, g.graph.vertex_count)
}

/// Graphviz rendering; positive edges only.
pub fn to_dot(g: &AGraph, base: Option<usize>) -> String {
    let mut s = String::from("digraph agraph {\n  rankdir=LR;\n");
    for v in 0..g.vertex_count {
        let shape = if Some(v) == base { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  {v} [shape={shape}];");
    }
    for e in &g.edges {
        let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", e.source, e.target, e.label);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn graph(rank: u32, n: usize, edges: &[(usize, &str, usize)]) -> AGraph {
        let mut g = AGraph::new(rank, n);
        for &(x, l, y) in edges {
            g.add_edge(x, l.parse().unwrap(), y).unwrap();
        }
        g
    }

    #[test]
    fn hyperlink_of_isolated_vertex_is_empty() {
        let g = AGraph::new(2, 2);
        assert!(g.hyperlink(1).unwrap().is_empty());
        assert!(g.hyperlink(2).is_err());
    }

    #[test]
    fn bouquet_shapes() {
        let empty = build_bouquet(&[], 2).unwrap();
        assert_eq!(empty.size(), 1);
        assert_eq!(empty.graph.edge_count(), 0);
        let one = build_bouquet(&[w("a")], 2).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(one.graph.edges(), &[Edge { source: 0, label: Letter::generator(1), target: 0 }]);
        let dropped = build_bouquet(&[Word::empty(), w("ab")], 2).unwrap();
        assert_eq!(dropped.size(), 2);
    }

    #[test]
    fn fold_identical_loops() {
        let g = graph(1, 1, &[(0, "a", 0), (0, "a", 0)]);
        assert!(!g.is_reduced());
        let f = fold(&g);
        assert_eq!(f.graph.vertex_count(), 1);
        assert_eq!(f.graph.edge_count(), 1);
    }

    #[test]
    fn fold_two_loops_built_as_paths() {
        // a-loop and aa-loop at the base fold to a single a-loop
        let g = build_bouquet(&[w("a"), w("aa")], 1).unwrap();
        let f = fold(&g.graph);
        assert_eq!(f.graph.vertex_count(), 1);
        assert_eq!(f.graph.edge_count(), 1);
    }

    #[test]
    fn reduced_graph_folds_to_itself() {
        let g = graph(2, 3, &[(0, "a", 1), (0, "b", 2), (1, "a", 2), (2, "b", 1)]);
        assert!(g.is_reduced());
        let f = fold(&g);
        assert_eq!(f.vertex_map, vec![0, 1, 2]);
        assert_eq!(f.graph, g);
    }

    #[test]
    fn cyclic_core_of_cyclically_reduced_graph_is_identity() {
        let g = graph(2, 3, &[(0, "a", 1), (0, "b", 2), (1, "a", 2), (2, "b", 1)]);
        let cc = cyclic_core(&g).unwrap();
        assert_eq!(cc.graph, g);
        for x in 0..3 {
            assert_eq!(cc.branches.beta(x), Some(x));
            assert!(cc.branches.branch_word(x).unwrap().is_empty());
        }
    }

    #[test]
    fn cyclic_core_of_tree_is_error_but_point_is_trivial() {
        let tree = graph(2, 3, &[(0, "a", 1), (1, "b", 2)]);
        assert_eq!(cyclic_core(&tree).unwrap_err(), Error::EmptyCore);
        let point = AGraph::point(2);
        let cc = cyclic_core(&point).unwrap();
        assert_eq!(cc.graph.vertex_count(), 1);
    }

    #[test]
    fn cyclic_core_requires_reduced() {
        let g = graph(1, 2, &[(0, "a", 1), (0, "a", 0)]);
        assert!(matches!(cyclic_core(&g), Err(Error::GraphNotReduced { .. })));
    }

    #[test]
    fn basis_of_rose() {
        let g = graph(2, 1, &[(0, "a", 0), (0, "b", 0)]);
        let basis = extract_basis(&PointedAGraph::new(g, 0).unwrap());
        assert_eq!(basis, vec![w("a"), w("b")]);
        assert!(extract_basis(&PointedAGraph::new(AGraph::point(2), 0).unwrap()).is_empty());
    }

    #[test]
    fn normal_form_ignores_vertex_ids() {
        let g1 = graph(2, 3, &[(0, "a", 1), (0, "b", 2), (1, "a", 2), (2, "b", 1)]);
        let g2 = graph(2, 3, &[(2, "a", 0), (2, "b", 1), (0, "a", 1), (1, "b", 0)]);
        let p1 = PointedAGraph::new(g1, 0).unwrap();
        let p2 = PointedAGraph::new(g2, 2).unwrap();
        assert_eq!(p1.normal_form(), p2.normal_form());
        let pa = stallings_graph(&[w("a")], 2).unwrap();
        let pb = stallings_graph(&[w("b")], 2).unwrap();
        assert_ne!(pa.normal_form(), pb.normal_form());
    }

    #[test]
    fn add_edge_validates() {
        let mut g = AGraph::new(2, 2);
        assert!(g.add_edge(0, "c".parse().unwrap(), 1).is_err());
        assert!(g.add_edge(0, "a".parse().unwrap(), 5).is_err());
        g.add_edge(0, "B".parse().unwrap(), 1).unwrap();
        assert_eq!(g.edges()[0], Edge { source: 1, label: Letter::generator(2), target: 0 });
    }

    #[test]
    fn dot_draws_positive_edges_only() {
        let g = graph(2, 2, &[(0, "a", 1), (1, "B", 0)]);
        let dot = to_dot(&g, Some(0));
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("0 -> 1 [label=\"a\"]"));
        assert!(dot.contains("0 -> 1 [label=\"b\"]"));
        assert!(dot.contains("0 [shape=doublecircle]"));
    }
}
