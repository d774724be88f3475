//! Perfect phylogeny haplotyping.
//!
//! Given a genotype matrix over `{0, 1, 2}`, decide whether it can be phased
//! into haplotypes that fit a perfect phylogeny, and build such a phasing and
//! its tree when it can.
//!
//! The decision runs through one resolution graph per column: edges record
//! that two heterozygous sites must be phased equally (weight 0) or
//! unequally (weight 1), and an instance is accepted exactly when no pair of
//! columns is forced to show `{01, 10, 11}` and no graph has a cycle of odd
//! total weight. Odd cycles are found either with a parity union-find or by
//! subdividing weight-0 edges and testing bipartiteness; both routes ship.
//!
//! ```
//! use pph_core::{construct_haplotypes_dpph, decide_dpph, GenotypeMatrix};
//!
//! let a: GenotypeMatrix = "220\n202\n022\n".parse().unwrap();
//! assert!(decide_dpph(&a).admits());
//! let b = construct_haplotypes_dpph(&a).unwrap();
//! assert_eq!(b.to_string(), "010\n100\n001\n100\n001\n010\n");
//! ```

mod bits;
pub mod construct;
pub mod decide;
pub mod matrix;
pub mod oracle;
pub mod ordering;
pub mod phylogeny;
pub mod resolution;

pub use construct::{
    augment_graph, construct_haplotypes_dpph, construct_haplotypes_pph, parity_labels,
    ConstructError, Parity, ParityLabeling,
};
pub use decide::{
    decide_dpph, decide_dpph_with, decide_pph, decide_pph_with, expand_to_bipartite_instance,
    gamete_precheck, has_odd_weight_cycle, is_bipartite, OddCycle, PlainGraph, Route, Verdict,
    Witness,
};
pub use matrix::{
    append_all_zero, explains, explains_matrix, four_gamete_check, induced_set_genotypes,
    induced_set_haplotypes, pph_to_dpph, resolution_kind, three_gamete_check, unflip_haplotypes,
    FlipSet, GameteViolation, GenotypeMatrix, HaplotypeMatrix, InducedSet, MatrixError,
    ResolutionKind,
};
pub use oracle::{oracle_decide, oracle_solutions, plant_instance, OracleError};
pub use ordering::{assign_genotypes, column_greater, GenotypePartition};
pub use phylogeny::{build_tree, verify_tree, PhylogenyError, PhylogenyTree, TreeViolation};
pub use resolution::{build_all_resolution_graphs, build_resolution_graph, Edge, ResolutionGraph};
