//! Perfect phylogeny trees for binary haplotype matrices.
//!
//! Construction works on the directed form: columns are complemented so
//! the root haplotype reads all-0, the rows carrying a 1 in each column
//! then form a laminar family, and the containment order of those row sets
//! is the tree. [`verify_tree`] checks the three defining conditions
//! directly and shares no code with [`build_tree`].

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::bits::BitSet;
use crate::matrix::{four_gamete_check, three_gamete_check, GameteViolation, HaplotypeMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhylogenyError {
    #[error("haplotypes admit no perfect phylogeny: {0}")]
    NotPerfectPhylogeny(GameteViolation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    /// Columns labeling the edge to the parent; empty for the root.
    pub columns: Vec<usize>,
    /// Haplotype rows placed at this node; empty for auxiliary nodes.
    pub rows: Vec<usize>,
    pub haplotype: Vec<u8>,
}

/// Rooted tree with row-labeled nodes and column-labeled edges. Node 0 is
/// the root. In a directed tree the root stands for the all-0 haplotype,
/// whether or not a row carries it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhylogenyTree {
    nodes: Vec<TreeNode>,
    directed: bool,
    cols: usize,
}

impl PhylogenyTree {
    /// Assembles a tree from raw nodes; no validation happens here.
    pub fn from_nodes(nodes: Vec<TreeNode>, directed: bool, cols: usize) -> Self {
        Self {
            nodes,
            directed,
            cols,
        }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn nodes_mut(&mut self) -> &mut [TreeNode] {
        &mut self.nodes
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.parent.is_some()).count()
    }

    /// Node holding `row`, if any.
    pub fn node_of_row(&self, row: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.rows.contains(&row))
    }

    /// DOT rendering: nodes show their 1-based row labels and haplotype,
    /// edges their 1-based column sets.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph phylogeny {\n  node [shape=box];\n");
        for (id, node) in self.nodes.iter().enumerate() {
            let hap: String = node
                .haplotype
                .iter()
                .map(|b| char::from(b'0' + b))
                .collect();
            let rows = join_one_based(&node.rows);
            let label = match (rows.is_empty(), id == 0) {
                (false, _) => format!("{rows}\\n{hap}"),
                (true, true) => format!("root\\n{hap}"),
                (true, false) => hap,
            };
            let style = if node.rows.is_empty() && id != 0 {
                ", style=dashed"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{id} [label=\"{label}\"{style}];");
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                let _ = writeln!(
                    out,
                    "  n{p} -> n{id} [label=\"{}\"];",
                    join_one_based(&node.columns)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

fn join_one_based(items: &[usize]) -> String {
    items
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Builds the perfect phylogeny of `b`. With `directed` the root is the
/// all-0 haplotype; otherwise the tree is rooted at the node of row 1.
pub fn build_tree(b: &HaplotypeMatrix, directed: bool) -> Result<PhylogenyTree, PhylogenyError> {
    if directed {
        three_gamete_check(b)
    } else {
        four_gamete_check(b)
    }
    .map_err(PhylogenyError::NotPerfectPhylogeny)?;

    let (rows, cols) = (b.rows(), b.cols());
    // root haplotype; columns where it is 1 are complemented below
    let root_hap: Vec<u8> = if directed {
        vec![0; cols]
    } else {
        b.row(0).to_vec()
    };

    let mut classes: HashMap<BitSet, Vec<usize>> = HashMap::new();
    let mut constant = Vec::new();
    for (c, &root_bit) in root_hap.iter().enumerate() {
        let mut set = BitSet::new(rows);
        for r in 0..rows {
            if b.get(r, c) != root_bit {
                set.insert(r);
            }
        }
        if set.is_empty() {
            constant.push(c);
        } else {
            classes.entry(set).or_default().push(c);
        }
    }
    let mut classes: Vec<(BitSet, Vec<usize>)> = classes.into_iter().collect();
    classes.sort_by(|(sa, ca), (sb, cb)| sb.count().cmp(&sa.count()).then(ca[0].cmp(&cb[0])));

    let mut nodes = vec![TreeNode {
        parent: None,
        columns: Vec::new(),
        rows: Vec::new(),
        haplotype: root_hap.clone(),
    }];
    let mut current = vec![0usize; rows];
    for (set, columns) in classes {
        let first = set.ones().next().expect("class sets are non-empty");
        let parent = current[first];
        let id = nodes.len();
        let mut haplotype = nodes[parent].haplotype.clone();
        for &c in &columns {
            haplotype[c] ^= 1;
        }
        nodes.push(TreeNode {
            parent: Some(parent),
            columns,
            rows: Vec::new(),
            haplotype,
        });
        for r in set.ones() {
            debug_assert_eq!(current[r], parent, "row sets must be laminar");
            current[r] = id;
        }
    }
    for (r, &node) in current.iter().enumerate() {
        nodes[node].rows.push(r);
    }
    if !constant.is_empty() {
        let mut haplotype = root_hap;
        for &c in &constant {
            haplotype[c] ^= 1;
        }
        nodes.push(TreeNode {
            parent: Some(0),
            columns: constant,
            rows: Vec::new(),
            haplotype,
        });
    }
    Ok(PhylogenyTree {
        nodes: renumber(nodes),
        directed,
        cols,
    })
}

/// Root first, then nodes ordered by their first row label; unlabeled
/// nodes keep creation order after all labeled ones.
fn renumber(nodes: Vec<TreeNode>) -> Vec<TreeNode> {
    let mut order: Vec<usize> = (1..nodes.len()).collect();
    order.sort_by_key(|&i| (nodes[i].rows.first().copied().unwrap_or(usize::MAX), i));
    order.insert(0, 0);
    let mut new_id = vec![0; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new;
    }
    let mut slots: Vec<Option<TreeNode>> = nodes.into_iter().map(Some).collect();
    order
        .iter()
        .map(|&old| {
            let mut n = slots[old].take().expect("each node moved once");
            n.parent = n.parent.map(|p| new_id[p]);
            n
        })
        .collect()
}

/// First violated defining condition found by [`verify_tree`]. Rows and
/// columns are reported 1-based; `None` stands for the implicit all-0 root
/// of a directed tree.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeViolation {
    #[error("malformed tree: {0}")]
    Structure(String),
    #[error("condition 1: row {} labels {count} nodes", .row + 1)]
    RowLabel { row: usize, count: usize },
    #[error("condition 2: column {} labels {count} edges", .column + 1)]
    ColumnLabel { column: usize, count: usize },
    #[error("condition 2: edge into node {node} carries no column")]
    UnlabeledEdge { node: usize },
    #[error("condition 3: rows {} and {} disagree with the tree path at column {}", RowName(.first), RowName(.second), .column + 1)]
    Path {
        first: Option<usize>,
        second: Option<usize>,
        column: usize,
    },
}

struct RowName<'a>(&'a Option<usize>);

impl fmt::Display for RowName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(r) => write!(f, "{}", r + 1),
            None => f.write_str("root"),
        }
    }
}

/// Checks that `tree` is a perfect phylogeny for `b`: every row labels
/// exactly one node, every column exactly one edge, every edge at least one
/// column, and two rows differ at a column exactly when that column's edge
/// lies on the path between them.
pub fn verify_tree(b: &HaplotypeMatrix, tree: &PhylogenyTree) -> Result<(), TreeViolation> {
    let nodes = tree.nodes();
    let structure = |msg: &str| Err(TreeViolation::Structure(msg.to_string()));
    if nodes.is_empty() {
        return structure("no nodes");
    }
    if nodes[0].parent.is_some() {
        return structure("node 0 is not the root");
    }
    if tree.cols() != b.cols() {
        return structure("column count differs from the matrix");
    }
    for (id, node) in nodes.iter().enumerate().skip(1) {
        match node.parent {
            None => return structure("more than one root"),
            Some(p) if p >= nodes.len() => return structure("parent out of range"),
            Some(_) => {}
        }
        // walking up must reach the root within |nodes| steps
        let mut cur = id;
        for _ in 0..=nodes.len() {
            match nodes[cur].parent {
                Some(p) => cur = p,
                None => break,
            }
        }
        if cur != 0 {
            return structure("parent links contain a cycle");
        }
    }

    // condition 1
    let mut row_count = vec![0usize; b.rows()];
    for node in nodes {
        for &r in &node.rows {
            match row_count.get_mut(r) {
                Some(c) => *c += 1,
                None => return structure("row label out of range"),
            }
        }
    }
    if let Some((row, &count)) = row_count.iter().enumerate().find(|(_, &c)| c != 1) {
        return Err(TreeViolation::RowLabel { row, count });
    }

    // condition 2
    let mut col_count = vec![0usize; b.cols()];
    for (id, node) in nodes.iter().enumerate().skip(1) {
        if node.columns.is_empty() {
            return Err(TreeViolation::UnlabeledEdge { node: id });
        }
        for &c in &node.columns {
            match col_count.get_mut(c) {
                Some(n) => *n += 1,
                None => return structure("column label out of range"),
            }
        }
    }
    if !nodes[0].columns.is_empty() {
        return structure("root carries edge columns");
    }
    if let Some((column, &count)) = col_count.iter().enumerate().find(|(_, &c)| c != 1) {
        return Err(TreeViolation::ColumnLabel { column, count });
    }

    // condition 3: with every column on exactly one edge, the columns on the
    // path between two nodes are the symmetric difference of their root paths
    let mut root_path: Vec<Option<BitSet>> = vec![None; nodes.len()];
    fn path_of(nodes: &[TreeNode], memo: &mut [Option<BitSet>], id: usize, cols: usize) -> BitSet {
        if let Some(p) = &memo[id] {
            return p.clone();
        }
        let mut set = match nodes[id].parent {
            Some(p) => path_of(nodes, memo, p, cols),
            None => BitSet::new(cols),
        };
        for &c in &nodes[id].columns {
            set.insert(c);
        }
        memo[id] = Some(set.clone());
        set
    }

    // (row label, node, haplotype) for one representative row per node
    let zero = vec![0u8; b.cols()];
    let mut reps: Vec<(Option<usize>, usize, &[u8])> = Vec::new();
    if tree.is_directed() {
        reps.push((None, 0, &zero));
    }
    for (id, node) in nodes.iter().enumerate() {
        let Some(&first) = node.rows.first() else {
            continue;
        };
        for &r in &node.rows[1..] {
            if let Some(column) = first_difference(b.row(first), b.row(r)) {
                return Err(TreeViolation::Path {
                    first: Some(first),
                    second: Some(r),
                    column,
                });
            }
        }
        if let Some((label, _, hap)) = reps.iter().find(|(_, n, _)| *n == id) {
            if let Some(column) = first_difference(hap, b.row(first)) {
                return Err(TreeViolation::Path {
                    first: *label,
                    second: Some(first),
                    column,
                });
            }
            continue;
        }
        reps.push((Some(first), id, b.row(first)));
    }
    let paths: Vec<BitSet> = reps
        .iter()
        .map(|&(_, id, _)| path_of(nodes, &mut root_path, id, b.cols()))
        .collect();
    for x in 0..reps.len() {
        for y in x + 1..reps.len() {
            let mut on_path = paths[x].clone();
            on_path.xor_with(&paths[y]);
            let (hx, hy) = (reps[x].2, reps[y].2);
            for c in 0..b.cols() {
                if (hx[c] != hy[c]) != on_path.contains(c) {
                    return Err(TreeViolation::Path {
                        first: reps[x].0,
                        second: reps[y].0,
                        column: c,
                    });
                }
            }
        }
    }
    Ok(())
}

fn first_difference(a: &[u8], b: &[u8]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(rows: &[&str]) -> HaplotypeMatrix {
        HaplotypeMatrix::parse(&rows.join("\n")).unwrap()
    }

    #[test]
    fn two_rows_one_edge() {
        let b = h(&["0", "1"]);
        let t = build_tree(&b, false).unwrap();
        assert_eq!(t.nodes().len(), 2);
        assert_eq!(t.edge_count(), 1);
        assert_eq!(t.nodes()[1].columns, vec![0]);
        assert_eq!(t.nodes()[0].rows, vec![0]);
        assert_eq!(t.nodes()[1].rows, vec![1]);
        assert_eq!(verify_tree(&b, &t), Ok(()));
    }

    #[test]
    fn four_gametes_rejected() {
        assert!(matches!(
            build_tree(&h(&["00", "01", "10", "11"]), false),
            Err(PhylogenyError::NotPerfectPhylogeny(_))
        ));
        assert!(build_tree(&h(&["01", "10", "11"]), true).is_err());
        assert!(build_tree(&h(&["01", "10", "11"]), false).is_ok());
    }

    #[test]
    fn directed_star() {
        let b = h(&["010", "100", "001"]);
        let t = build_tree(&b, true).unwrap();
        assert_eq!(t.nodes().len(), 4);
        assert!(t.nodes()[0].rows.is_empty());
        assert_eq!(t.nodes()[0].haplotype, vec![0, 0, 0]);
        let labels: Vec<_> = t.nodes()[1..]
            .iter()
            .map(|n| (n.parent, n.columns.clone(), n.rows.clone()))
            .collect();
        assert_eq!(
            labels,
            vec![
                (Some(0), vec![1], vec![0]),
                (Some(0), vec![0], vec![1]),
                (Some(0), vec![2], vec![2]),
            ]
        );
        assert_eq!(verify_tree(&b, &t), Ok(()));
    }

    #[test]
    fn moved_label_fails_condition_three() {
        let b = h(&["00", "10", "11"]);
        let mut t = build_tree(&b, false).unwrap();
        assert_eq!(verify_tree(&b, &t), Ok(()));
        // chain root -[1]- n1 -[2]- n2; swap the labels
        let (c1, c2) = (t.nodes()[1].columns.clone(), t.nodes()[2].columns.clone());
        t.nodes_mut()[1].columns = c2;
        t.nodes_mut()[2].columns = c1;
        assert!(matches!(
            verify_tree(&b, &t),
            Err(TreeViolation::Path { .. })
        ));
    }

    #[test]
    fn duplicate_rows_share_a_node() {
        let b = h(&["011", "011", "000", "010"]);
        let t = build_tree(&b, false).unwrap();
        assert_eq!(t.node_of_row(0), t.node_of_row(1));
        assert_ne!(t.node_of_row(0), t.node_of_row(3));
        assert_eq!(verify_tree(&b, &t), Ok(()));
    }

    #[test]
    fn constant_columns_hang_off_a_pendant() {
        let b = h(&["101", "100"]);
        let t = build_tree(&b, false).unwrap();
        let pendant = t.nodes().last().unwrap();
        assert!(pendant.rows.is_empty());
        assert_eq!(pendant.columns, vec![0, 1]);
        assert_eq!(pendant.parent, Some(0));
        assert_eq!(verify_tree(&b, &t), Ok(()));

        // directed: an all-0 column is constant relative to the root
        let b = h(&["10", "00"]);
        let t = build_tree(&b, true).unwrap();
        assert_eq!(verify_tree(&b, &t), Ok(()));
        assert_eq!(t.node_of_row(1), Some(0));
    }

    #[test]
    fn identical_columns_share_an_edge() {
        let b = h(&["0000", "1100", "1111"]);
        let t = build_tree(&b, true).unwrap();
        assert_eq!(t.edge_count(), 2);
        assert_eq!(t.nodes()[1].columns, vec![0, 1]);
        assert_eq!(t.nodes()[2].columns, vec![2, 3]);
    }

    #[test]
    fn structural_violations() {
        let b = h(&["0", "1"]);
        let t = build_tree(&b, false).unwrap();

        let mut broken = t.clone();
        broken.nodes_mut()[1].rows.push(0);
        assert_eq!(
            verify_tree(&b, &broken),
            Err(TreeViolation::RowLabel { row: 0, count: 2 })
        );

        let mut broken = t.clone();
        broken.nodes_mut()[1].columns.clear();
        assert_eq!(
            verify_tree(&b, &broken),
            Err(TreeViolation::UnlabeledEdge { node: 1 })
        );

        let mut broken = t.clone();
        broken.nodes_mut()[0].parent = Some(1);
        assert!(matches!(
            verify_tree(&b, &broken),
            Err(TreeViolation::Structure(_))
        ));

        let b2 = h(&["00", "11"]);
        let mut t2 = build_tree(&b2, false).unwrap();
        t2.nodes_mut()[1].columns = vec![0];
        assert_eq!(
            verify_tree(&b2, &t2),
            Err(TreeViolation::ColumnLabel {
                column: 1,
                count: 0
            })
        );
    }

    #[test]
    fn directed_tree_checks_the_implicit_root() {
        let b = h(&["1"]);
        let directed = build_tree(&b, true).unwrap();
        assert_eq!(directed.nodes().len(), 2);
        assert_eq!(verify_tree(&b, &directed), Ok(()));
        // the undirected tree has no room for the all-0 root
        let undirected = build_tree(&b, false).unwrap();
        let relabeled = PhylogenyTree::from_nodes(undirected.nodes().to_vec(), true, 1);
        assert!(verify_tree(&b, &relabeled).is_err());
    }

    #[test]
    fn dot_output() {
        let t = build_tree(&h(&["0", "1"]), false).unwrap();
        assert_eq!(
            t.to_dot(),
            "digraph phylogeny {\n  node [shape=box];\n  n0 [label=\"1\\n0\"];\n  n1 [label=\"2\\n1\"];\n  n0 -> n1 [label=\"1\"];\n}\n"
        );
    }
}
