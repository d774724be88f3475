//! Resolution graphs: one graph per column over the heterozygous sites of
//! the genotypes that column owns. A weight-0 edge forces an equal
//! resolution of its two sites, a weight-1 edge an unequal one.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::matrix::{GenotypeMatrix, InducedSet, MatrixError, ResolutionKind};
use crate::ordering::{assign_genotypes_with, ColumnOrder, GenotypePartition};

/// Undirected weighted edge with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub kind: ResolutionKind,
}

impl Edge {
    pub fn new(a: usize, b: usize, kind: ResolutionKind) -> Self {
        debug_assert_ne!(a, b, "self-loop");
        Self {
            lo: a.min(b),
            hi: a.max(b),
            kind,
        }
    }

    pub fn with_weight(a: usize, b: usize, weight: u8) -> Self {
        Self::new(a, b, ResolutionKind::from_weight(weight))
    }

    pub fn weight(&self) -> u8 {
        self.kind.weight()
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

/// Resolution graph anchored at a column. A pair may carry both an
/// equal and an unequal edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    anchor: usize,
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl ResolutionGraph {
    /// Builds a graph from raw parts; vertices and edges are sorted and
    /// deduplicated. Edge endpoints are added as vertices.
    pub fn from_parts(anchor: usize, vertices: Vec<usize>, edges: Vec<Edge>) -> Self {
        let mut vertices = vertices;
        vertices.extend(edges.iter().flat_map(|e| [e.lo, e.hi]));
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        Self {
            anchor,
            vertices,
            edges,
        }
    }

    pub fn empty(anchor: usize) -> Self {
        Self::from_parts(anchor, Vec::new(), Vec::new())
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edges.binary_search(edge).is_ok()
    }

    /// Position of `v` in [`Self::vertices`].
    pub fn vertex_index(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Edge lists per vertex position, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, Edge)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            let (a, b) = (self.vertex_index(e.lo), self.vertex_index(e.hi));
            if let (Some(a), Some(b)) = (a, b) {
                adj[a].push((b, *e));
                adj[b].push((a, *e));
            }
        }
        adj
    }

    /// DOT rendering with 1-based column names and the weight as both the
    /// `w` attribute and the edge label.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph G{} {{", self.anchor + 1);
        self.write_dot_body(&mut out, "  ", "");
        out.push_str("}\n");
        out
    }

    fn write_dot_body(&self, out: &mut String, indent: &str, prefix: &str) {
        for &v in &self.vertices {
            let shape = if v == self.anchor {
                ", shape=doublecircle"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{indent}{prefix}{} [label=\"{}\"{shape}];",
                v + 1,
                v + 1
            );
        }
        for e in &self.edges {
            let style = match e.kind {
                ResolutionKind::Equal => "",
                ResolutionKind::Unequal => ", style=bold",
            };
            let _ = writeln!(
                out,
                "{indent}{prefix}{} -- {prefix}{} [w={w}, label=\"{w}\"{style}];",
                e.lo + 1,
                e.hi + 1,
                w = e.weight()
            );
        }
    }
}

/// All resolution graphs in one DOT document, one cluster per non-empty
/// graph.
pub fn graphs_to_dot(graphs: &[ResolutionGraph]) -> String {
    let mut out = String::from("graph resolution {\n");
    for g in graphs.iter().filter(|g| !g.is_empty()) {
        let _ = writeln!(out, "  subgraph cluster_G{} {{", g.anchor + 1);
        let _ = writeln!(out, "    label=\"G{}\";", g.anchor + 1);
        g.write_dot_body(&mut out, "    ", &format!("g{}_", g.anchor + 1));
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Which owner sets contain a genotype with 2s at a given column pair.
enum PairOwners {
    Dense { cols: usize, marks: Vec<u32> },
    Sparse(HashMap<(usize, usize), u32>),
}

const NO_OWNER: u32 = u32::MAX;
const SHARED: u32 = u32::MAX - 1;
const DENSE_PAIR_LIMIT: usize = 2048;

impl PairOwners {
    fn new(a: &GenotypeMatrix, partition: &GenotypePartition) -> Self {
        Self::with_layout(a, partition, a.cols() <= DENSE_PAIR_LIMIT)
    }

    fn with_layout(a: &GenotypeMatrix, partition: &GenotypePartition, dense: bool) -> Self {
        let cols = a.cols();
        let mut owners = if dense {
            PairOwners::Dense {
                cols,
                marks: vec![NO_OWNER; cols * cols],
            }
        } else {
            PairOwners::Sparse(HashMap::new())
        };
        let mut sites = Vec::new();
        for r in 0..a.rows() {
            let Some(owner) = partition.owner(r) else {
                continue;
            };
            sites.clear();
            sites.extend(a.heterozygous_sites(r));
            for (x, &k) in sites.iter().enumerate() {
                for &l in &sites[x + 1..] {
                    let mark = owners.mark_mut(k, l);
                    if *mark == NO_OWNER {
                        *mark = owner as u32;
                    } else if *mark != owner as u32 {
                        *mark = SHARED;
                    }
                }
            }
        }
        owners
    }

    fn mark_mut(&mut self, k: usize, l: usize) -> &mut u32 {
        match self {
            PairOwners::Dense { cols, marks } => &mut marks[k * *cols + l],
            PairOwners::Sparse(map) => map.entry((k, l)).or_insert(NO_OWNER),
        }
    }

    /// True when genotypes of at least two distinct owners have 2s at both
    /// `k < l`.
    fn shared(&self, k: usize, l: usize) -> bool {
        match self {
            PairOwners::Dense { cols, marks } => marks[k * cols + l] == SHARED,
            PairOwners::Sparse(map) => map.get(&(k, l)) == Some(&SHARED),
        }
    }
}

/// The order, partition and resolution graphs of one genotype matrix.
pub struct Resolution {
    pub order: ColumnOrder,
    pub partition: GenotypePartition,
    pub graphs: Vec<ResolutionGraph>,
}

impl Resolution {
    pub fn analyze(a: &GenotypeMatrix) -> Self {
        let order = ColumnOrder::new(a);
        let partition = assign_genotypes_with(a, &order);
        let owners = PairOwners::new(a, &partition);
        let members = partition.member_lists();
        let graphs = (0..a.cols())
            .map(|i| graph_for(a, &order, &owners, i, &members[i]))
            .collect();
        Self {
            order,
            partition,
            graphs,
        }
    }
}

fn graph_for(
    a: &GenotypeMatrix,
    order: &ColumnOrder,
    owners: &PairOwners,
    anchor: usize,
    members: &[usize],
) -> ResolutionGraph {
    let table = order.induced();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut sites = Vec::new();
    for &r in members {
        sites.clear();
        sites.extend(a.heterozygous_sites(r));
        vertices.extend_from_slice(&sites);
        for (x, &k) in sites.iter().enumerate() {
            for &l in &sites[x + 1..] {
                let induced = table.get(k, l);
                if induced.contains(1, 1) || owners.shared(k, l) {
                    edges.push(Edge::new(k, l, ResolutionKind::Equal));
                }
                if induced.is_superset(InducedSet::OPPOSED) {
                    edges.push(Edge::new(k, l, ResolutionKind::Unequal));
                }
            }
        }
    }
    ResolutionGraph::from_parts(anchor, vertices, edges)
}

/// The graph anchored at column `i`, given the partition of `a`.
pub fn build_resolution_graph(
    a: &GenotypeMatrix,
    partition: &GenotypePartition,
    i: usize,
) -> Result<ResolutionGraph, MatrixError> {
    if i >= a.cols() {
        return Err(MatrixError::BadColumnIndex {
            index: i,
            cols: a.cols(),
        });
    }
    let order = ColumnOrder::new(a);
    let owners = PairOwners::new(a, partition);
    let members: Vec<usize> = partition.members(i).collect();
    Ok(graph_for(a, &order, &owners, i, &members))
}

/// One graph per column; columns owning no genotype get an empty graph.
pub fn build_all_resolution_graphs(a: &GenotypeMatrix) -> Vec<ResolutionGraph> {
    Resolution::analyze(a).graphs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::assign_genotypes;

    fn g(rows: &[&str]) -> GenotypeMatrix {
        GenotypeMatrix::parse(&rows.join("\n")).unwrap()
    }

    fn e(a: usize, b: usize, w: u8) -> Edge {
        Edge::with_weight(a, b, w)
    }

    #[test]
    fn worked_example_graphs() {
        let graphs = build_all_resolution_graphs(&g(&["220", "202", "022"]));
        assert_eq!(graphs.len(), 3);
        assert_eq!(graphs[0].vertices(), &[0, 1, 2]);
        assert_eq!(graphs[0].edges(), &[e(0, 1, 1), e(0, 2, 1)]);
        assert_eq!(graphs[1].vertices(), &[1, 2]);
        assert_eq!(graphs[1].edges(), &[e(1, 2, 1)]);
        assert!(graphs[2].is_empty());
    }

    #[test]
    fn no_twos_gives_empty_graphs() {
        let graphs = build_all_resolution_graphs(&g(&["010"]));
        assert!(graphs.iter().all(ResolutionGraph::is_empty));
        let graphs = build_all_resolution_graphs(&g(&["000", "000"]));
        assert!(graphs.iter().all(ResolutionGraph::is_empty));
    }

    #[test]
    fn single_two() {
        let graphs = build_all_resolution_graphs(&g(&["2"]));
        assert_eq!(graphs[0].vertices(), &[0]);
        assert!(graphs[0].edges().is_empty());
    }

    #[test]
    fn equal_edge_from_shared_ones() {
        let a = g(&["22", "11"]);
        let p = assign_genotypes(&a);
        let g0 = build_resolution_graph(&a, &p, 0).unwrap();
        assert_eq!(g0.vertices(), &[0, 1]);
        assert_eq!(g0.edges(), &[e(0, 1, 0)]);
        assert!(build_resolution_graph(&a, &p, 2).is_err());
    }

    #[test]
    fn equal_edge_from_second_owner() {
        // rows 1 and 3 share sites 2,3 (1-based) but have different owners
        let a = g(&["222", "102", "022", "010"]);
        let res = Resolution::analyze(&a);
        let o0 = res.partition.owner(0).unwrap();
        let o2 = res.partition.owner(2).unwrap();
        assert_ne!(o0, o2);
        for owner in [o0, o2] {
            assert!(
                res.graphs[owner].contains_edge(&e(1, 2, 0)),
                "G{}",
                owner + 1
            );
        }
    }

    #[test]
    fn parallel_edges_are_kept() {
        // ind(1,2) = {01,10,11}: both rules fire on the double-2
        let a = g(&["22", "01", "10", "11"]);
        let graphs = build_all_resolution_graphs(&a);
        let owner = graphs.iter().find(|g| !g.is_empty()).unwrap();
        assert_eq!(owner.edges(), &[e(0, 1, 0), e(0, 1, 1)]);
    }

    #[test]
    fn dot_output() {
        let graphs = build_all_resolution_graphs(&g(&["220", "202", "022"]));
        let dot = graphs[1].to_dot();
        assert_eq!(
            dot,
            "graph G2 {\n  2 [label=\"2\", shape=doublecircle];\n  3 [label=\"3\"];\n  2 -- 3 [w=1, label=\"1\", style=bold];\n}\n"
        );
        let all = graphs_to_dot(&graphs);
        assert!(all.contains("subgraph cluster_G1"));
        assert!(all.contains("g1_1 -- g1_3 [w=1"));
        assert!(!all.contains("cluster_G3"));
    }

    #[test]
    fn sparse_pair_owners_match_dense() {
        let a = g(&["2202", "2022", "0222", "1100", "2220"]);
        let p = assign_genotypes(&a);
        let dense = PairOwners::with_layout(&a, &p, true);
        let sparse = PairOwners::with_layout(&a, &p, false);
        let mut shared = 0;
        for k in 0..4 {
            for l in k + 1..4 {
                assert_eq!(dense.shared(k, l), sparse.shared(k, l));
                shared += usize::from(dense.shared(k, l));
            }
        }
        assert!(shared > 0);
    }
}
