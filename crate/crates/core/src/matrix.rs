//! Genotype and haplotype matrices, the explain relation, induced sets and
//! the gamete-property checks.
//!
//! Indices are 0-based throughout the API. Everything that reaches a user
//! (error messages, `Display` impls) is 1-based.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("input contains no matrix rows")]
    EmptyInput,
    #[error("line {line}: expected {expected} symbols, found {found}")]
    RaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: unexpected symbol {symbol:?}")]
    BadSymbol {
        line: usize,
        column: usize,
        symbol: char,
    },
    #[error("rows have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("haplotype matrix is {hap_rows}x{hap_cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        hap_rows: usize,
        hap_cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("site {} is not heterozygous in the haplotype pair", .0 + 1)]
    NotHeterozygous(usize),
    #[error("column {} is out of range for a matrix with {cols} columns", .index + 1)]
    BadColumnIndex { index: usize, cols: usize },
    #[error("column {} compared with itself", .0 + 1)]
    SameColumnIndex(usize),
}

fn check_column(index: usize, cols: usize) -> Result<(), MatrixError> {
    if index < cols {
        Ok(())
    } else {
        Err(MatrixError::BadColumnIndex { index, cols })
    }
}

/// Row-major grid shared by both matrix kinds.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Grid {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl Grid {
    fn from_rows<R: AsRef<[u8]>>(rows: &[R], max_symbol: u8) -> Result<Self, MatrixError> {
        let first = rows.first().ok_or(MatrixError::EmptyInput)?.as_ref();
        let cols = first.len();
        if cols == 0 {
            return Err(MatrixError::EmptyInput);
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(MatrixError::RaggedRows {
                    line: r + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v > max_symbol {
                    return Err(MatrixError::BadSymbol {
                        line: r + 1,
                        column: c + 1,
                        symbol: char::from_digit(u32::from(v), 36).unwrap_or('?'),
                    });
                }
            }
            entries.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    fn parse(text: &str, max_symbol: u8) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        let mut cols = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let mut row = Vec::with_capacity(content.len());
            for (c, ch) in content.chars().enumerate() {
                match ch.to_digit(10) {
                    Some(d) if d <= u32::from(max_symbol) => row.push(d as u8),
                    _ => {
                        return Err(MatrixError::BadSymbol {
                            line,
                            column: c + 1,
                            symbol: ch,
                        })
                    }
                }
            }
            match cols {
                None => cols = Some(row.len()),
                Some(expected) if expected != row.len() => {
                    return Err(MatrixError::RaggedRows {
                        line,
                        expected,
                        found: row.len(),
                    })
                }
                Some(_) => {}
            }
            rows.push(row);
        }
        Self::from_rows(&rows, max_symbol)
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    fn with_zero_row(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.resize(entries.len() + self.cols, 0);
        Self {
            rows: self.rows + 1,
            cols: self.cols,
            entries,
        }
    }

    fn fmt_rows(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for &v in self.row(r) {
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// An `n x m` matrix over `{0, 1, 2}`; each row is a genotype, `2` marks a
/// heterozygous site.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenotypeMatrix(Grid);

impl GenotypeMatrix {
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Grid::from_rows(rows, 2).map(Self)
    }

    /// Parses the line-per-row text format. Blank lines and `#` comments are
    /// skipped; errors carry 1-based line and column positions.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        Grid::parse(text, 2).map(Self)
    }

    pub fn rows(&self) -> usize {
        self.0.rows
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.0.get(row, col)
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[u8] {
        self.0.row(row)
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = u8> + '_ {
        (0..self.rows()).map(move |r| self.get(r, col))
    }

    /// Columns holding a 2 in `row`, ascending.
    pub fn heterozygous_sites(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(row)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 2)
            .map(|(c, _)| c)
    }

    pub fn count_twos(&self) -> usize {
        self.0.entries.iter().filter(|&&v| v == 2).count()
    }

    pub fn induced_set(&self, i: usize, j: usize) -> Result<InducedSet, MatrixError> {
        induced_set_genotypes(self, i, j)
    }
}

impl FromStr for GenotypeMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for GenotypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_rows(f)
    }
}

impl fmt::Debug for GenotypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenotypeMatrix[")?;
        for r in 0..self.rows() {
            if r > 0 {
                write!(f, ";")?;
            }
            for &v in self.row(r) {
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// A binary matrix whose rows are haplotypes. When it explains a genotype
/// matrix, rows `2i` and `2i + 1` explain genotype `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HaplotypeMatrix(Grid);

impl HaplotypeMatrix {
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Grid::from_rows(rows, 1).map(Self)
    }

    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        Grid::parse(text, 1).map(Self)
    }

    pub fn rows(&self) -> usize {
        self.0.rows
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.0.get(row, col)
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[u8] {
        self.0.row(row)
    }

    /// The matrix with an all-0 haplotype appended as its last row.
    pub fn with_zero_row(&self) -> Self {
        Self(self.0.with_zero_row())
    }

    pub fn induced_set(&self, i: usize, j: usize) -> Result<InducedSet, MatrixError> {
        induced_set_haplotypes(self, i, j)
    }

    /// Row bitsets per column: rows holding a 1 in that column.
    pub(crate) fn column_ones(&self) -> Vec<BitSet> {
        let mut ones = vec![BitSet::new(self.rows()); self.cols()];
        for r in 0..self.rows() {
            for (c, &v) in self.row(r).iter().enumerate() {
                if v == 1 {
                    ones[c].insert(r);
                }
            }
        }
        ones
    }
}

impl FromStr for HaplotypeMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for HaplotypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_rows(f)
    }
}

impl fmt::Debug for HaplotypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HaplotypeMatrix[")?;
        for r in 0..self.rows() {
            if r > 0 {
                write!(f, ";")?;
            }
            for &v in self.row(r) {
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// A subset of the four two-site gametes `{00, 01, 10, 11}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct InducedSet(u8);

impl InducedSet {
    pub const EMPTY: Self = Self(0);
    pub const ALL: Self = Self(0b1111);
    /// `{01, 10, 11}`: forbidden under a directed phylogeny rooted at all-0.
    pub const THREE_GAMETES: Self = Self(0b1110);
    /// `{01, 10}`: a shared double-2 must be resolved unequally.
    pub const OPPOSED: Self = Self(0b0110);
    /// `{00, 10, 11}`: the pattern of a column dominating another.
    pub const DOMINATING: Self = Self(0b1101);

    #[inline]
    fn bit(x: u8, y: u8) -> u8 {
        1 << ((x << 1) | y)
    }

    pub fn from_gametes(gametes: &[(u8, u8)]) -> Self {
        let mut set = Self::EMPTY;
        for &(x, y) in gametes {
            set.insert(x, y);
        }
        set
    }

    #[inline]
    pub fn insert(&mut self, x: u8, y: u8) {
        debug_assert!(x <= 1 && y <= 1);
        self.0 |= Self::bit(x, y);
    }

    #[inline]
    pub fn contains(self, x: u8, y: u8) -> bool {
        self.0 & Self::bit(x, y) != 0
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_superset(self, other: Self) -> bool {
        other.is_subset(self)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    /// The same gametes seen from the `(j, i)` side.
    pub fn transposed(self) -> Self {
        let mut out = Self::EMPTY;
        for (x, y) in self.iter() {
            out.insert(y, x);
        }
        out
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in the order `00, 01, 10, 11`.
    pub fn iter(self) -> impl Iterator<Item = (u8, u8)> {
        [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .filter(move |&(x, y)| self.contains(x, y))
    }
}

impl fmt::Display for InducedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (x, y)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}{y}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for InducedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How a haplotype pair resolves two heterozygous sites of its genotype.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResolutionKind {
    /// `h[i] = h[j]`
    Equal,
    /// `h[i] != h[j]`
    Unequal,
}

impl ResolutionKind {
    /// Edge weight in a resolution graph: 0 for equal, 1 for unequal.
    pub fn weight(self) -> u8 {
        match self {
            ResolutionKind::Equal => 0,
            ResolutionKind::Unequal => 1,
        }
    }

    pub fn from_weight(weight: u8) -> Self {
        if weight & 1 == 0 {
            ResolutionKind::Equal
        } else {
            ResolutionKind::Unequal
        }
    }
}

/// Columns complemented when reducing the undirected problem to the
/// directed one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlipSet {
    columns: Vec<usize>,
}

impl FlipSet {
    pub fn new(mut columns: Vec<usize>) -> Self {
        columns.sort_unstable();
        columns.dedup();
        Self { columns }
    }

    pub fn contains(&self, column: usize) -> bool {
        self.columns.binary_search(&column).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.columns.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    fn mask(&self, cols: usize) -> Result<Vec<bool>, MatrixError> {
        let mut mask = vec![false; cols];
        for c in self.iter() {
            check_column(c, cols)?;
            mask[c] = true;
        }
        Ok(mask)
    }
}

impl fmt::Display for FlipSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, c) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c + 1)?;
        }
        write!(f, "}}")
    }
}

/// Whether the haplotype pair `(h, h2)` explains genotype `g`.
pub fn explains(h: &[u8], h2: &[u8], g: &[u8]) -> Result<bool, MatrixError> {
    if h.len() != g.len() {
        return Err(MatrixError::LengthMismatch(h.len(), g.len()));
    }
    if h2.len() != g.len() {
        return Err(MatrixError::LengthMismatch(h2.len(), g.len()));
    }
    Ok(h.iter().zip(h2).zip(g).all(|((&a, &b), &v)| match v {
        0 | 1 => a == v && b == v,
        _ => a != b && a <= 1 && b <= 1,
    }))
}

pub fn explains_matrix(b: &HaplotypeMatrix, a: &GenotypeMatrix) -> Result<bool, MatrixError> {
    if b.rows() != 2 * a.rows() || b.cols() != a.cols() {
        return Err(MatrixError::ShapeMismatch {
            hap_rows: b.rows(),
            hap_cols: b.cols(),
            expected_rows: 2 * a.rows(),
            expected_cols: a.cols(),
        });
    }
    for r in 0..a.rows() {
        if !explains(b.row(2 * r), b.row(2 * r + 1), a.row(r))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn resolution_kind(
    h: &[u8],
    h2: &[u8],
    i: usize,
    j: usize,
) -> Result<ResolutionKind, MatrixError> {
    if h.len() != h2.len() {
        return Err(MatrixError::LengthMismatch(h.len(), h2.len()));
    }
    for site in [i, j] {
        check_column(site, h.len())?;
        if h[site] == h2[site] {
            return Err(MatrixError::NotHeterozygous(site));
        }
    }
    Ok(if h[i] == h[j] {
        ResolutionKind::Equal
    } else {
        ResolutionKind::Unequal
    })
}

pub fn induced_set_haplotypes(
    b: &HaplotypeMatrix,
    i: usize,
    j: usize,
) -> Result<InducedSet, MatrixError> {
    check_column(i, b.cols())?;
    check_column(j, b.cols())?;
    let mut set = InducedSet::EMPTY;
    for r in 0..b.rows() {
        set.insert(b.get(r, i), b.get(r, j));
        if set == InducedSet::ALL {
            break;
        }
    }
    Ok(set)
}

/// Gametes forced at columns `(i, j)` by the genotypes alone. A genotype
/// with 2s at both sites contributes nothing.
pub fn induced_set_genotypes(
    a: &GenotypeMatrix,
    i: usize,
    j: usize,
) -> Result<InducedSet, MatrixError> {
    check_column(i, a.cols())?;
    check_column(j, a.cols())?;
    if i == j {
        return Err(MatrixError::SameColumnIndex(i));
    }
    let mut set = InducedSet::EMPTY;
    for r in 0..a.rows() {
        add_genotype_gametes(&mut set, a.get(r, i), a.get(r, j));
    }
    Ok(set)
}

#[inline]
fn add_genotype_gametes(set: &mut InducedSet, x: u8, y: u8) {
    match (x, y) {
        (2, 2) => {}
        (2, y) => {
            set.insert(0, y);
            set.insert(1, y);
        }
        (x, 2) => {
            set.insert(x, 0);
            set.insert(x, 1);
        }
        (x, y) => set.insert(x, y),
    }
}

/// A column pair whose induced set breaks a gamete property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameteViolation {
    pub first: usize,
    pub second: usize,
    pub induced: InducedSet,
}

impl fmt::Display for GameteViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "columns {} and {} induce {}",
            self.first + 1,
            self.second + 1,
            self.induced
        )
    }
}

/// Induced sets of a haplotype matrix for every column pair, computed from
/// per-column row bitsets.
fn haplotype_violation(b: &HaplotypeMatrix, forbidden: InducedSet) -> Result<(), GameteViolation> {
    let ones = b.column_ones();
    let mut all = BitSet::new(b.rows());
    for r in 0..b.rows() {
        all.insert(r);
    }
    let zeros: Vec<BitSet> = ones
        .iter()
        .map(|o| {
            let mut z = all.clone();
            z.xor_with(o);
            z
        })
        .collect();
    for i in 0..b.cols() {
        for j in i + 1..b.cols() {
            let mut set = InducedSet::EMPTY;
            for (x, col_i) in [(0, &zeros[i]), (1, &ones[i])] {
                for (y, col_j) in [(0, &zeros[j]), (1, &ones[j])] {
                    if col_i.intersects(col_j) {
                        set.insert(x, y);
                    }
                }
            }
            if set.is_superset(forbidden) {
                return Err(GameteViolation {
                    first: i,
                    second: j,
                    induced: set,
                });
            }
        }
    }
    Ok(())
}

/// Fails with the lexicographically smallest column pair inducing all four
/// gametes.
pub fn four_gamete_check(b: &HaplotypeMatrix) -> Result<(), GameteViolation> {
    haplotype_violation(b, InducedSet::ALL)
}

/// Fails with the lexicographically smallest column pair inducing
/// `{01, 10, 11}`.
pub fn three_gamete_check(b: &HaplotypeMatrix) -> Result<(), GameteViolation> {
    haplotype_violation(b, InducedSet::THREE_GAMETES)
}

/// Per-column row bitsets of a genotype matrix, one per symbol.
pub(crate) struct GenotypeColumns {
    zero: Vec<BitSet>,
    one: Vec<BitSet>,
    two: Vec<BitSet>,
}

impl GenotypeColumns {
    pub(crate) fn new(a: &GenotypeMatrix) -> Self {
        let blank = vec![BitSet::new(a.rows()); a.cols()];
        let mut cols = Self {
            zero: blank.clone(),
            one: blank.clone(),
            two: blank,
        };
        for r in 0..a.rows() {
            for (c, &v) in a.row(r).iter().enumerate() {
                match v {
                    0 => cols.zero[c].insert(r),
                    1 => cols.one[c].insert(r),
                    _ => cols.two[c].insert(r),
                }
            }
        }
        cols
    }

    pub(crate) fn induced(&self, i: usize, j: usize) -> InducedSet {
        let mut set = InducedSet::EMPTY;
        for (x, xi) in [(0, &self.zero[i]), (1, &self.one[i])] {
            for (y, yj) in [(0, &self.zero[j]), (1, &self.one[j])] {
                if xi.intersects_union(yj, &self.two[j]) || self.two[i].intersects(yj) {
                    set.insert(x, y);
                }
            }
        }
        set
    }
}

/// Genotype induced sets for all column pairs. Precomputed as an `m x m`
/// table up to [`InducedTable::DENSE_LIMIT`] columns, answered from column
/// bitsets beyond that.
pub struct InducedTable {
    cols: usize,
    dense: Option<Vec<InducedSet>>,
    columns: GenotypeColumns,
}

impl InducedTable {
    pub const DENSE_LIMIT: usize = 4096;

    pub fn new(a: &GenotypeMatrix) -> Self {
        let columns = GenotypeColumns::new(a);
        let cols = a.cols();
        let dense = (cols <= Self::DENSE_LIMIT).then(|| {
            let mut table = vec![InducedSet::EMPTY; cols * cols];
            for i in 0..cols {
                for j in i + 1..cols {
                    let set = columns.induced(i, j);
                    table[i * cols + j] = set;
                    table[j * cols + i] = set.transposed();
                }
            }
            table
        });
        Self {
            cols,
            dense,
            columns,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `ind(i, j)`; empty when `i == j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> InducedSet {
        if i == j {
            return InducedSet::EMPTY;
        }
        match &self.dense {
            Some(table) => table[i * self.cols + j],
            None => self.columns.induced(i, j),
        }
    }

    /// Smallest column pair with `{01, 10, 11}` forced by the genotypes.
    pub fn three_gamete_violation(&self) -> Option<GameteViolation> {
        (0..self.cols)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.get(i, j)))
            .find(|&(_, _, set)| set.is_superset(InducedSet::THREE_GAMETES))
            .map(|(first, second, induced)| GameteViolation {
                first,
                second,
                induced,
            })
    }
}

/// Reduces the undirected instance to a directed one: every column whose
/// topmost non-2 entry is 1 gets its 0s and 1s swapped. All-2 columns are
/// left alone.
pub fn pph_to_dpph(a: &GenotypeMatrix) -> (GenotypeMatrix, FlipSet) {
    let flipped: Vec<usize> = (0..a.cols())
        .filter(|&c| a.column(c).find(|&v| v != 2) == Some(1))
        .collect();
    let flips = FlipSet::new(flipped);
    let mut out = a.clone();
    for c in flips.iter() {
        for r in 0..a.rows() {
            let cell = &mut out.0.entries[r * a.cols() + c];
            if *cell != 2 {
                *cell ^= 1;
            }
        }
    }
    (out, flips)
}

pub fn append_all_zero(a: &GenotypeMatrix) -> GenotypeMatrix {
    GenotypeMatrix(a.0.with_zero_row())
}

/// Complements the flipped columns of a haplotype matrix; undoes
/// [`pph_to_dpph`] on solver output.
pub fn unflip_haplotypes(
    b: &HaplotypeMatrix,
    flips: &FlipSet,
) -> Result<HaplotypeMatrix, MatrixError> {
    let mask = flips.mask(b.cols())?;
    let mut out = b.clone();
    for (idx, cell) in out.0.entries.iter_mut().enumerate() {
        if mask[idx % b.cols()] {
            *cell ^= 1;
        }
    }
    Ok(out)
}

/// Groups equal columns: `classes[c]` is the smallest index of a column with
/// the same entry vector as `c`.
pub(crate) fn column_classes(a: &GenotypeMatrix) -> Vec<usize> {
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::with_capacity(a.cols());
    (0..a.cols())
        .map(|c| *seen.entry(a.column(c).collect()).or_insert(c))
        .collect()
}
