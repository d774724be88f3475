//! Haplotype construction for accepted instances.
//!
//! Each resolution graph is made connected by tying every stray component
//! to its anchor with a weight-0 edge. The parity of the path weight from
//! the anchor then fixes, for every heterozygous site of an owned genotype,
//! which of the two haplotypes carries the 0.

use std::collections::VecDeque;

use thiserror::Error;

use crate::decide::{analyze_dpph, has_odd_weight_cycle, OddCycle, Route, Verdict, Witness};
use crate::matrix::{
    pph_to_dpph, unflip_haplotypes, GenotypeMatrix, HaplotypeMatrix, ResolutionKind,
};
use crate::resolution::{Edge, ResolutionGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("input admits no perfect phylogeny: {0}")]
    NotAdmitting(Witness),
    #[error("graph G{} has an odd-weight cycle: {}", .0.anchor + 1, .0)]
    OddCycle(OddCycle),
    #[error("anchor column {} is not a vertex of its non-empty graph", .0 + 1)]
    AnchorMissing(usize),
    #[error("vertex {} of G{} is not connected to the anchor", .vertex + 1, .anchor + 1)]
    NotConnected { anchor: usize, vertex: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn flip_by(self, kind: ResolutionKind) -> Self {
        match (self, kind) {
            (p, ResolutionKind::Equal) => p,
            (Parity::Even, ResolutionKind::Unequal) => Parity::Odd,
            (Parity::Odd, ResolutionKind::Unequal) => Parity::Even,
        }
    }
}

/// Path-weight parity from the anchor to every vertex of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityLabeling {
    anchor: usize,
    labels: Vec<(usize, Parity)>,
}

impl ParityLabeling {
    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn get(&self, vertex: usize) -> Option<Parity> {
        self.labels
            .binary_search_by_key(&vertex, |&(v, _)| v)
            .ok()
            .map(|i| self.labels[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Parity)> + '_ {
        self.labels.iter().copied()
    }
}

/// Connects every component that misses the anchor through a weight-0 edge
/// from its smallest vertex.
pub fn augment_graph(graph: &ResolutionGraph) -> Result<ResolutionGraph, ConstructError> {
    if graph.is_empty() {
        return Ok(graph.clone());
    }
    let anchor = graph.anchor();
    let root = graph
        .vertex_index(anchor)
        .ok_or(ConstructError::AnchorMissing(anchor))?;
    if let Some(cycle) = has_odd_weight_cycle(graph) {
        return Err(ConstructError::OddCycle(cycle));
    }
    let adj = graph.adjacency();
    let mut seen = vec![false; adj.len()];
    let mut extra = Vec::new();
    let starts = std::iter::once(root).chain(0..adj.len());
    for start in starts {
        if seen[start] {
            continue;
        }
        if start != root {
            extra.push(Edge::new(
                anchor,
                graph.vertices()[start],
                ResolutionKind::Equal,
            ));
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut edges = graph.edges().to_vec();
    edges.extend(extra);
    Ok(ResolutionGraph::from_parts(
        anchor,
        graph.vertices().to_vec(),
        edges,
    ))
}

/// Breadth-first parity labels from the anchor of a connected graph.
pub fn parity_labels(graph: &ResolutionGraph) -> Result<ParityLabeling, ConstructError> {
    let anchor = graph.anchor();
    if graph.is_empty() {
        return Ok(ParityLabeling {
            anchor,
            labels: Vec::new(),
        });
    }
    let root = graph
        .vertex_index(anchor)
        .ok_or(ConstructError::AnchorMissing(anchor))?;
    let adj = graph.adjacency();
    let mut parity: Vec<Option<Parity>> = vec![None; adj.len()];
    parity[root] = Some(Parity::Even);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let pv = parity[v].unwrap_or(Parity::Even);
        for &(w, e) in &adj[v] {
            let expected = pv.flip_by(e.kind);
            match parity[w] {
                None => {
                    parity[w] = Some(expected);
                    queue.push_back(w);
                }
                Some(p) if p != expected => {
                    let cycle = has_odd_weight_cycle(graph)
                        .expect("conflicting parity implies an odd-weight cycle");
                    return Err(ConstructError::OddCycle(cycle));
                }
                Some(_) => {}
            }
        }
    }
    let labels = graph
        .vertices()
        .iter()
        .zip(parity)
        .map(|(&v, p)| {
            p.map(|p| (v, p))
                .ok_or(ConstructError::NotConnected { anchor, vertex: v })
        })
        .collect::<Result<_, _>>()?;
    Ok(ParityLabeling { anchor, labels })
}

/// An explaining haplotype matrix satisfying the three-gamete property, for
/// instances accepted by [`crate::decide::decide_dpph`].
pub fn construct_haplotypes_dpph(a: &GenotypeMatrix) -> Result<HaplotypeMatrix, ConstructError> {
    let (verdict, analysis) = analyze_dpph(a, Route::Parity);
    let res = match (verdict, analysis) {
        (Verdict::Rejects(w), _) => return Err(ConstructError::NotAdmitting(w)),
        (Verdict::Admits, Some(res)) => res,
        (Verdict::Admits, None) => unreachable!("accepted instances carry their analysis"),
    };
    let labelings = res
        .graphs
        .iter()
        .map(|g| augment_graph(g).and_then(|g| parity_labels(&g)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(2 * a.rows());
    for r in 0..a.rows() {
        let g = a.row(r);
        let mut h = g.to_vec();
        let mut h2 = g.to_vec();
        if let Some(owner) = res.partition.owner(r) {
            let labels = &labelings[owner];
            for (c, &v) in g.iter().enumerate() {
                if v == 2 {
                    let (x, y) = match labels.get(c) {
                        Some(Parity::Odd) => (1, 0),
                        _ => (0, 1),
                    };
                    h[c] = x;
                    h2[c] = y;
                }
            }
        }
        rows.push(h);
        rows.push(h2);
    }
    Ok(HaplotypeMatrix::from_rows(&rows).expect("constructed rows are binary and rectangular"))
}

/// An explaining haplotype matrix satisfying the four-gamete property:
/// flip to the directed instance, construct, flip the columns back.
pub fn construct_haplotypes_pph(a: &GenotypeMatrix) -> Result<HaplotypeMatrix, ConstructError> {
    let (directed, flips) = pph_to_dpph(a);
    let b = construct_haplotypes_dpph(&directed)?;
    Ok(unflip_haplotypes(&b, &flips).expect("flip set comes from the same matrix"))
}
