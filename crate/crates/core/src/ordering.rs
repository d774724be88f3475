//! The dominance order on columns and the assignment of every heterozygous
//! genotype to exactly one owning column.

use crate::matrix::{column_classes, GenotypeMatrix, InducedSet, InducedTable, MatrixError};

/// Column `i` dominates column `j` when the genotypes force
/// `ind(i, j) ⊆ {00, 10, 11}` and the two column vectors differ.
pub fn column_greater(a: &GenotypeMatrix, i: usize, j: usize) -> Result<bool, MatrixError> {
    if i == j && i < a.cols() {
        return Err(MatrixError::SameColumnIndex(i));
    }
    let induced = a.induced_set(i, j)?;
    Ok(induced.is_subset(InducedSet::DOMINATING) && !a.column(i).eq(a.column(j)))
}

/// Precomputed dominance relation for one genotype matrix.
pub struct ColumnOrder {
    table: InducedTable,
    classes: Vec<usize>,
}

impl ColumnOrder {
    pub fn new(a: &GenotypeMatrix) -> Self {
        Self {
            table: InducedTable::new(a),
            classes: column_classes(a),
        }
    }

    pub fn induced(&self) -> &InducedTable {
        &self.table
    }

    /// `i ≻ j`. Never true for `i == j`.
    #[inline]
    pub fn greater(&self, i: usize, j: usize) -> bool {
        self.classes[i] != self.classes[j] && self.table.get(i, j).is_subset(InducedSet::DOMINATING)
    }

    pub fn same_column(&self, i: usize, j: usize) -> bool {
        self.classes[i] == self.classes[j]
    }
}

/// Owner column of every genotype row. Rows without a 2 have no owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenotypePartition {
    owner: Vec<Option<usize>>,
    cols: usize,
}

impl GenotypePartition {
    pub fn owner(&self, row: usize) -> Option<usize> {
        self.owner[row]
    }

    pub fn owners(&self) -> &[Option<usize>] {
        &self.owner
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Rows owned by column `col`, ascending.
    pub fn members(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter(move |(_, o)| **o == Some(col))
            .map(|(r, _)| r)
    }

    /// Row lists for every column at once.
    pub fn member_lists(&self) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.cols];
        for (r, o) in self.owner.iter().enumerate() {
            if let Some(c) = o {
                lists[*c].push(r);
            }
        }
        lists
    }
}

pub fn assign_genotypes(a: &GenotypeMatrix) -> GenotypePartition {
    assign_genotypes_with(a, &ColumnOrder::new(a))
}

/// Each row with a 2 goes to the lowest-index column among its maximal
/// heterozygous columns, i.e. those no other heterozygous column of the
/// row dominates.
pub fn assign_genotypes_with(a: &GenotypeMatrix, order: &ColumnOrder) -> GenotypePartition {
    let owner = (0..a.rows())
        .map(|r| {
            let sites: Vec<usize> = a.heterozygous_sites(r).collect();
            let first = *sites.first()?;
            let maximal = sites
                .iter()
                .copied()
                .find(|&j| !sites.iter().any(|&k| k != j && order.greater(k, j)));
            // The order is a strict partial order, so a maximal site always
            // exists; fall back to the first site rather than lose the row.
            Some(maximal.unwrap_or(first))
        })
        .collect();
    GenotypePartition {
        owner,
        cols: a.cols(),
    }
}
