//! Exhaustive ground truth for small instances and a planted-instance
//! generator for large ones.
//!
//! The search never touches the resolution graphs: it tries every phasing
//! of every genotype and applies the gamete test to the resulting
//! haplotype matrix.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matrix::{four_gamete_check, GenotypeMatrix, HaplotypeMatrix, InducedSet};

pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{twos} heterozygous entries exceed the oracle cap of {cap}")]
    TooLarge { twos: usize, cap: usize },
}

fn check_cap(a: &GenotypeMatrix, cap: usize) -> Result<(), OracleError> {
    let twos = a.count_twos();
    if twos > cap {
        Err(OracleError::TooLarge { twos, cap })
    } else {
        Ok(())
    }
}

/// Phasing choice for one genotype: bit `k - 1` fixes `h` at the `k`-th
/// heterozygous site for `k >= 1`; the first site always gets `h = 0`, and
/// `h'` is the complement at every heterozygous site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionAssignment {
    pub choices: Vec<u64>,
}

fn phase(g: &[u8], choice: u64) -> (Vec<u8>, Vec<u8>) {
    let mut h = g.to_vec();
    let mut h2 = g.to_vec();
    let mut k = 0;
    for c in 0..g.len() {
        if g[c] == 2 {
            let bit = if k == 0 {
                0
            } else {
                (choice >> (k - 1)) as u8 & 1
            };
            h[c] = bit;
            h2[c] = bit ^ 1;
            k += 1;
        }
    }
    (h, h2)
}

fn choice_count(g: &[u8]) -> u64 {
    let t = g.iter().filter(|&&v| v == 2).count();
    if t <= 1 {
        1
    } else {
        1 << (t - 1)
    }
}

impl ResolutionAssignment {
    pub fn apply(&self, a: &GenotypeMatrix) -> HaplotypeMatrix {
        let rows: Vec<Vec<u8>> = (0..a.rows())
            .flat_map(|r| {
                let (h, h2) = phase(a.row(r), self.choices[r]);
                [h, h2]
            })
            .collect();
        HaplotypeMatrix::from_rows(&rows).expect("phased rows are binary")
    }
}

/// Upper-triangle table of haplotype induced sets, grown one row at a time.
#[derive(Clone)]
struct GameteTable {
    cols: usize,
    sets: Vec<InducedSet>,
}

impl GameteTable {
    fn new(cols: usize) -> Self {
        Self {
            cols,
            sets: vec![InducedSet::EMPTY; cols * cols],
        }
    }

    /// Adds a haplotype; false once some pair holds all four gametes.
    fn add(&mut self, h: &[u8]) -> bool {
        let mut ok = true;
        for i in 0..self.cols {
            for j in i + 1..self.cols {
                let set = &mut self.sets[i * self.cols + j];
                set.insert(h[i], h[j]);
                ok &= *set != InducedSet::ALL;
            }
        }
        ok
    }
}

/// Whether some phasing of `a` satisfies the four-gamete property (the
/// three-gamete property when `directed`). Depth-first over the
/// genotypes, abandoning a branch as soon as a column pair fills up.
pub fn oracle_decide(a: &GenotypeMatrix, directed: bool, cap: usize) -> Result<bool, OracleError> {
    check_cap(a, cap)?;
    let mut table = GameteTable::new(a.cols());
    let mut ok = true;
    if directed {
        ok &= table.add(&vec![0; a.cols()]);
    }
    let mut open = Vec::new();
    for r in 0..a.rows() {
        if a.row(r).contains(&2) {
            open.push(r);
        } else {
            ok &= table.add(a.row(r));
        }
    }
    Ok(ok && search(a, &open, table))
}

fn search(a: &GenotypeMatrix, open: &[usize], table: GameteTable) -> bool {
    let Some((&r, rest)) = open.split_first() else {
        return true;
    };
    let g = a.row(r);
    (0..choice_count(g)).any(|choice| {
        let (h, h2) = phase(g, choice);
        let mut next = table.clone();
        next.add(&h) && next.add(&h2) && search(a, rest, next)
    })
}

/// Every explaining haplotype matrix that passes the gamete test, in
/// odometer order over the per-genotype choices (last genotype varies
/// fastest).
pub fn oracle_solutions(
    a: &GenotypeMatrix,
    directed: bool,
    cap: usize,
) -> Result<Solutions<'_>, OracleError> {
    check_cap(a, cap)?;
    Ok(Solutions {
        matrix: a,
        directed,
        limits: (0..a.rows()).map(|r| choice_count(a.row(r))).collect(),
        next: Some(vec![0; a.rows()]),
    })
}

pub struct Solutions<'a> {
    matrix: &'a GenotypeMatrix,
    directed: bool,
    limits: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Solutions<'_> {
    fn advance(&mut self) {
        let Some(cur) = self.next.as_mut() else {
            return;
        };
        for pos in (0..cur.len()).rev() {
            cur[pos] += 1;
            if cur[pos] < self.limits[pos] {
                return;
            }
            cur[pos] = 0;
        }
        self.next = None;
    }
}

impl Iterator for Solutions<'_> {
    type Item = HaplotypeMatrix;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let choices = self.next.clone()?;
            self.advance();
            let b = ResolutionAssignment { choices }.apply(self.matrix);
            let ok = if self.directed {
                four_gamete_check(&b.with_zero_row()).is_ok()
            } else {
                four_gamete_check(&b).is_ok()
            };
            if ok {
                return Some(b);
            }
        }
    }
}

/// A random instance with a known solution. A random recursive tree gets
/// `m` edges, each labeled by one column; node haplotypes are read off from
/// a random root haplotype, and each genotype merges two random nodes.
pub fn plant_instance(
    seed: u64,
    n_genotypes: usize,
    m_cols: usize,
) -> (GenotypeMatrix, HaplotypeMatrix) {
    assert!(
        n_genotypes >= 1 && m_cols >= 1,
        "need at least one row and column"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..m_cols).collect();
    labels.shuffle(&mut rng);

    let root: Vec<u8> = (0..m_cols).map(|_| rng.gen_range(0..=1)).collect();
    let mut haps = vec![root];
    for (k, &column) in labels.iter().enumerate() {
        let parent = rng.gen_range(0..=k);
        let mut h = haps[parent].clone();
        h[column] ^= 1;
        haps.push(h);
    }

    let mut genotypes = Vec::with_capacity(n_genotypes);
    let mut haplotypes = Vec::with_capacity(2 * n_genotypes);
    for _ in 0..n_genotypes {
        let h = &haps[rng.gen_range(0..haps.len())];
        let h2 = &haps[rng.gen_range(0..haps.len())];
        genotypes.push(
            h.iter()
                .zip(h2)
                .map(|(&x, &y)| if x == y { x } else { 2 })
                .collect::<Vec<u8>>(),
        );
        haplotypes.push(h.clone());
        haplotypes.push(h2.clone());
    }
    (
        GenotypeMatrix::from_rows(&genotypes).expect("planted genotypes are well formed"),
        HaplotypeMatrix::from_rows(&haplotypes).expect("planted haplotypes are binary"),
    )
}

/// Uniform random genotype matrix where each entry is 2 with probability
/// `p_two` and otherwise 0 or 1 with equal odds.
pub fn random_genotypes<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    p_two: f64,
) -> GenotypeMatrix {
    let data: Vec<Vec<u8>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(p_two) {
                        2
                    } else {
                        rng.gen_range(0..=1)
                    }
                })
                .collect()
        })
        .collect();
    GenotypeMatrix::from_rows(&data).expect("random rows are well formed")
}
