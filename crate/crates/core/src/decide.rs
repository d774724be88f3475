//! Deciders for the directed and undirected problems.
//!
//! Two independent routes test the resolution graphs for odd-weight
//! cycles:
//!
//! * [`Route::Parity`] runs a union-find with parity labels over every graph.
//! * [`Route::Bipartite`] subdivides each weight-0 edge, drops the weights
//!   and 2-colors the disjoint union by breadth-first search.
//!
//! Both produce an odd-weight cycle witness on rejection.

use std::collections::VecDeque;
use std::fmt;

use crate::matrix::{
    induced_set_genotypes, pph_to_dpph, GameteViolation, GenotypeMatrix, InducedSet, InducedTable,
    ResolutionKind,
};
use crate::resolution::{build_all_resolution_graphs, Edge, Resolution, ResolutionGraph};

/// Union-find whose elements carry a parity relative to their root.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            parity: vec![0; len],
            rank: vec![0; len],
        }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut root = x;
        let mut acc = 0;
        while self.parent[root] != root {
            acc ^= self.parity[root];
            root = self.parent[root];
        }
        // compress, rewriting each parity to be relative to the root
        let mut cur = x;
        let mut cur_parity = acc;
        while self.parent[cur] != root && cur != root {
            let next = self.parent[cur];
            let next_parity = cur_parity ^ self.parity[cur];
            self.parent[cur] = root;
            self.parity[cur] = cur_parity;
            cur = next;
            cur_parity = next_parity;
        }
        (root, acc)
    }

    /// Records `parity(a) ^ parity(b) == weight`. Returns `Ok(true)` when two
    /// classes were merged, `Ok(false)` when the constraint was already
    /// implied, and `Err(())` when it contradicts the existing ones.
    #[allow(clippy::result_unit_err)]
    pub fn union(&mut self, a: usize, b: usize, weight: u8) -> Result<bool, ()> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        let weight = weight & 1;
        if ra == rb {
            return if pa ^ pb == weight {
                Ok(false)
            } else {
                Err(())
            };
        }
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ weight;
        if self.rank[child] == self.rank[root] {
            self.rank[root] += 1;
        }
        Ok(true)
    }
}

/// A closed walk in one resolution graph with odd total weight.
/// `edges[t]` joins `vertices[t]` and `vertices[(t + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycle {
    pub anchor: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl OddCycle {
    pub fn weight(&self) -> usize {
        self.edges.iter().map(|e| usize::from(e.weight())).sum()
    }

    /// Checks the walk is closed, odd, and uses only edges of `graph`.
    pub fn is_valid_in(&self, graph: &ResolutionGraph) -> bool {
        let len = self.vertices.len();
        if len == 0 || len != self.edges.len() || graph.anchor() != self.anchor {
            return false;
        }
        let closed = self.edges.iter().enumerate().all(|(t, e)| {
            let (from, to) = (self.vertices[t], self.vertices[(t + 1) % len]);
            e.other(from) == Some(to) && graph.contains_edge(e)
        });
        closed && self.weight() % 2 == 1
    }
}

impl fmt::Display for OddCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.anchor + 1)?;
        let len = self.vertices.len();
        for (t, e) in self.edges.iter().enumerate() {
            let (from, to) = (self.vertices[t], self.vertices[(t + 1) % len]);
            write!(f, " {}-{}:{}", from + 1, to + 1, e.weight())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Genotypes force `{01, 10, 11}` on this column pair.
    GametePair(GameteViolation),
    OddCycle(OddCycle),
}

impl Witness {
    /// Re-checks the witness from scratch against the directed instance it
    /// was produced for.
    pub fn validate(&self, a: &GenotypeMatrix) -> bool {
        match self {
            Witness::GametePair(v) => induced_set_genotypes(a, v.first, v.second)
                .map(|s| v.first < v.second && s.is_superset(InducedSet::THREE_GAMETES))
                .unwrap_or(false),
            Witness::OddCycle(cycle) => {
                let graphs = build_all_resolution_graphs(a);
                graphs
                    .get(cycle.anchor)
                    .is_some_and(|g| cycle.is_valid_in(g))
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::GametePair(v) => write!(f, "gamete-pair {} {}", v.first + 1, v.second + 1),
            Witness::OddCycle(c) => write!(f, "odd-cycle {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Admits,
    Rejects(Witness),
}

impl Verdict {
    pub fn admits(&self) -> bool {
        matches!(self, Verdict::Admits)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Admits => None,
            Verdict::Rejects(w) => Some(w),
        }
    }
}

/// `YES` or `NO <witness>`.
impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Admits => write!(f, "YES"),
            Verdict::Rejects(w) => write!(f, "NO {w}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Route {
    #[default]
    Parity,
    Bipartite,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Parity => "parity",
            Route::Bipartite => "bipartite",
        })
    }
}

impl std::str::FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "parity" => Ok(Route::Parity),
            "bipartite" => Ok(Route::Bipartite),
            other => Err(format!("unknown route {other:?}")),
        }
    }
}

/// Smallest column pair where the genotypes already force `{01, 10, 11}`.
pub fn gamete_precheck(a: &GenotypeMatrix) -> Result<(), GameteViolation> {
    match InducedTable::new(a).three_gamete_violation() {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Odd-weight cycle of `graph`, if any. Vertices are visited in ascending
/// column order and edges in sorted order, so the witness is deterministic.
pub fn has_odd_weight_cycle(graph: &ResolutionGraph) -> Option<OddCycle> {
    let n = graph.vertices().len();
    let mut uf = ParityUnionFind::new(n);
    let mut forest: Vec<Vec<(usize, Edge)>> = vec![Vec::new(); n];
    for e in graph.edges() {
        let a = graph.vertex_index(e.lo)?;
        let b = graph.vertex_index(e.hi)?;
        match uf.union(a, b, e.weight()) {
            Ok(true) => {
                forest[a].push((b, *e));
                forest[b].push((a, *e));
            }
            Ok(false) => {}
            Err(()) => return Some(close_cycle(graph, &forest, a, b, *e)),
        }
    }
    None
}

/// Joins the spanning-forest path `a -> b` with the conflicting edge.
fn close_cycle(
    graph: &ResolutionGraph,
    forest: &[Vec<(usize, Edge)>],
    a: usize,
    b: usize,
    closing: Edge,
) -> OddCycle {
    let mut prev: Vec<Option<(usize, Edge)>> = vec![None; forest.len()];
    let mut seen = vec![false; forest.len()];
    let mut queue = VecDeque::from([a]);
    seen[a] = true;
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for &(w, e) in &forest[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    let mut rev_vertices = vec![b];
    let mut rev_edges = Vec::new();
    let mut cur = b;
    while let Some((p, e)) = prev[cur] {
        rev_edges.push(e);
        rev_vertices.push(p);
        cur = p;
    }
    rev_vertices.reverse();
    rev_edges.reverse();
    rev_edges.push(closing);
    let vs = graph.vertices();
    OddCycle {
        anchor: graph.anchor(),
        vertices: rev_vertices.into_iter().map(|v| vs[v]).collect(),
        edges: rev_edges,
    }
}

/// Vertex of the unweighted bipartiteness instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlainVertex {
    /// Column `column` inside the graph anchored at `anchor`.
    Site { anchor: usize, column: usize },
    /// Subdivision vertex of the weight-0 edge `{lo, hi}` of `anchor`.
    Midpoint { anchor: usize, lo: usize, hi: usize },
}

/// Simple undirected graph without weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlainGraph {
    vertices: Vec<PlainVertex>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PlainGraph {
    pub fn add_vertex(&mut self, v: PlainVertex) -> usize {
        self.vertices.push(v);
        self.adjacency.push(Vec::new());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "self-loop");
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        self.edge_count += 1;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex(&self, idx: usize) -> PlainVertex {
        self.vertices[idx]
    }

    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adjacency[idx]
    }

    /// A proper 2-coloring, or an odd cycle (as a vertex sequence) when the
    /// graph is not bipartite.
    pub fn two_coloring(&self) -> Result<Vec<u8>, Vec<usize>> {
        let n = self.vertices.len();
        let mut color: Vec<Option<u8>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap_or(0);
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(cv ^ 1);
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Err(tree_cycle(&parent, &depth, v, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap_or(0)).collect())
    }
}

/// Cycle formed by the BFS-tree paths from `u` and `v` to their common
/// ancestor plus the edge `u -- v`.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut x, mut y) = (u, v);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Disjoint union of the graphs with every weight-0 edge replaced by a path
/// of length two through a fresh midpoint; weights are dropped.
pub fn expand_to_bipartite_instance(graphs: &[ResolutionGraph]) -> PlainGraph {
    let mut plain = PlainGraph::default();
    for g in graphs {
        let base = plain.vertex_count();
        for &column in g.vertices() {
            plain.add_vertex(PlainVertex::Site {
                anchor: g.anchor(),
                column,
            });
        }
        for e in g.edges() {
            let (Some(a), Some(b)) = (g.vertex_index(e.lo), g.vertex_index(e.hi)) else {
                continue;
            };
            match e.kind {
                ResolutionKind::Unequal => plain.add_edge(base + a, base + b),
                ResolutionKind::Equal => {
                    let mid = plain.add_vertex(PlainVertex::Midpoint {
                        anchor: g.anchor(),
                        lo: e.lo,
                        hi: e.hi,
                    });
                    plain.add_edge(base + a, mid);
                    plain.add_edge(mid, base + b);
                }
            }
        }
    }
    plain
}

pub fn is_bipartite(graph: &PlainGraph) -> bool {
    graph.two_coloring().is_ok()
}

/// Maps an odd cycle of the expanded graph back onto the weighted graph it
/// came from.
fn lift_plain_cycle(plain: &PlainGraph, cycle: &[usize]) -> Option<OddCycle> {
    let start = cycle
        .iter()
        .position(|&v| matches!(plain.vertex(v), PlainVertex::Site { .. }))?;
    let len = cycle.len();
    let walk: Vec<PlainVertex> = (0..=len)
        .map(|t| plain.vertex(cycle[(start + t) % len]))
        .collect();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut anchor = None;
    let mut t = 0;
    while t < len {
        let PlainVertex::Site { anchor: a, column } = walk[t] else {
            return None;
        };
        anchor = Some(a);
        vertices.push(column);
        match walk[t + 1] {
            PlainVertex::Site { column: next, .. } => {
                edges.push(Edge::new(column, next, ResolutionKind::Unequal));
                t += 1;
            }
            PlainVertex::Midpoint { lo, hi, .. } => {
                edges.push(Edge::new(lo, hi, ResolutionKind::Equal));
                t += 2;
            }
        }
    }
    Some(OddCycle {
        anchor: anchor?,
        vertices,
        edges,
    })
}

/// Odd-weight cycle anywhere in `graphs` via the expansion route.
pub fn odd_cycle_via_bipartite(graphs: &[ResolutionGraph]) -> Option<OddCycle> {
    let plain = expand_to_bipartite_instance(graphs);
    match plain.two_coloring() {
        Ok(_) => None,
        Err(cycle) => lift_plain_cycle(&plain, &cycle),
    }
}

fn odd_cycle_via_parity(graphs: &[ResolutionGraph]) -> Option<OddCycle> {
    graphs.iter().find_map(has_odd_weight_cycle)
}

/// Decides the directed problem with the given route. Returns the verdict
/// together with the analysis it was derived from.
pub(crate) fn analyze_dpph(a: &GenotypeMatrix, route: Route) -> (Verdict, Option<Resolution>) {
    if let Err(v) = gamete_precheck(a) {
        return (Verdict::Rejects(Witness::GametePair(v)), None);
    }
    let res = Resolution::analyze(a);
    let cycle = match route {
        Route::Parity => odd_cycle_via_parity(&res.graphs),
        Route::Bipartite => odd_cycle_via_bipartite(&res.graphs),
    };
    let verdict = match cycle {
        Some(c) => Verdict::Rejects(Witness::OddCycle(c)),
        None => Verdict::Admits,
    };
    (verdict, Some(res))
}

pub fn decide_dpph_with(a: &GenotypeMatrix, route: Route) -> Verdict {
    analyze_dpph(a, route).0
}

/// Does `a` admit a perfect phylogeny rooted at the all-0 haplotype?
pub fn decide_dpph(a: &GenotypeMatrix) -> Verdict {
    decide_dpph_with(a, Route::Parity)
}

/// Undirected decision: flip to the directed instance, then decide. A
/// rejection witness refers to the flipped matrix `pph_to_dpph(a).0`.
pub fn decide_pph_with(a: &GenotypeMatrix, route: Route) -> Verdict {
    decide_dpph_with(&pph_to_dpph(a).0, route)
}

/// Undirected decision through the bipartiteness reduction.
pub fn decide_pph(a: &GenotypeMatrix) -> Verdict {
    decide_pph_with(a, Route::Bipartite)
}
