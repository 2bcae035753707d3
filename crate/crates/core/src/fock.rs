//! Fock space combinatorics: occupation lists, ladder operators with
//! fermionic signs, Fock unitaries induced by 1-particle basis changes and
//! the signed factorization of the basis over an orbital subset.
//!
//! Basis vector `|n>` is `a*_1^{n(1)} a*_2^{n(2)} ... |vac>`, creators in
//! increasing orbital order. Bit `i - 1` of [`OccupationList::bits`] stores
//! `n(i)` and the basis is ordered by increasing `bits`.

use crate::error::{Error, Result};
use crate::linalg::{det, real, unitarity_deviation, CMatrix, CVector, ONE, ZERO};

/// Default ceiling on the number of orbitals (Fock dimension 4096).
pub const DEFAULT_D_MAX: usize = 12;

/// Absolute ceiling regardless of overrides.
pub const HARD_D_MAX: usize = 20;

/// Tolerance for unitarity and orthonormality checks on 1-particle matrices.
pub const TOL_UNITARY: f64 = 1e-9;

/// Dense operator on a Fock space, indexed by occupation bits.
pub type FockMatrix = CMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalSpace {
    d: usize,
    labels: Option<Vec<String>>,
}

impl OrbitalSpace {
    pub fn new(d: usize) -> Result<Self> {
        Self::with_limit(d, DEFAULT_D_MAX)
    }

    /// Like [`OrbitalSpace::new`] with an explicit ceiling on `d`.
    pub fn with_limit(d: usize, d_max: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptySpace);
        }
        let max = d_max.min(HARD_D_MAX);
        if d > max {
            return Err(Error::Capacity { d, max });
        }
        Ok(Self { d, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Fock space dimension `2^d`.
    pub fn dim(&self) -> usize {
        1 << self.d
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.d {
            Err(Error::IndexOutOfRange {
                index: i,
                d: self.d,
            })
        } else {
            Ok(())
        }
    }
}

/// Occupation list of a Fock basis vector; bit `i - 1` holds `n(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationList {
    pub bits: usize,
}

impl OccupationList {
    pub const VACUUM: OccupationList = OccupationList { bits: 0 };

    pub fn new(bits: usize) -> Self {
        Self { bits }
    }

    /// Builds the list from 1-based occupied orbitals.
    pub fn from_orbitals(orbitals: &[usize]) -> Self {
        Self {
            bits: orbitals.iter().fold(0, |acc, &i| acc | 1 << (i - 1)),
        }
    }

    /// `n(i)` for a 1-based orbital index.
    pub fn is_occupied(&self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    pub fn particle_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Occupied orbitals, 1-based, increasing.
    pub fn orbitals(&self) -> Vec<usize> {
        occupied_positions(self.bits)
            .into_iter()
            .map(|p| p + 1)
            .collect()
    }

    pub fn index(&self) -> usize {
        self.bits
    }
}

/// All `2^d` occupation lists in increasing `bits` order; index 0 is the vacuum.
pub fn enumerate_basis(space: &OrbitalSpace) -> Vec<OccupationList> {
    (0..space.dim()).map(OccupationList::new).collect()
}

/// 0-based positions of the set bits, increasing.
pub(crate) fn occupied_positions(bits: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    let mut b = bits;
    while b != 0 {
        let p = b.trailing_zeros() as usize;
        out.push(p);
        b &= b - 1;
    }
    out
}

#[inline]
fn sign_below(bits: usize, pos: usize) -> f64 {
    if (bits & ((1usize << pos) - 1))
        .count_ones()
        .is_multiple_of(2)
    {
        1.0
    } else {
        -1.0
    }
}

/// `a*_{pos+1} |bits>` as `(new_bits, sign)`, or `None` when occupied.
#[inline]
pub(crate) fn create(bits: usize, pos: usize) -> Option<(usize, f64)> {
    if bits >> pos & 1 == 1 {
        None
    } else {
        Some((bits | 1 << pos, sign_below(bits, pos)))
    }
}

/// `a_{pos+1} |bits>` as `(new_bits, sign)`, or `None` when empty.
#[inline]
pub(crate) fn annihilate(bits: usize, pos: usize) -> Option<(usize, f64)> {
    if bits >> pos & 1 == 0 {
        None
    } else {
        Some((bits & !(1 << pos), sign_below(bits, pos)))
    }
}

/// A ladder operator (or product of them) stored as one signed nonzero
/// per basis column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseLadder {
    dim: usize,
    /// `(row, col, sign)` triples.
    entries: Vec<(usize, usize, f64)>,
}

impl SparseLadder {
    pub fn creator(i: usize, space: &OrbitalSpace) -> Result<Self> {
        space.check_index(i)?;
        let entries = (0..space.dim())
            .filter_map(|b| create(b, i - 1).map(|(r, s)| (r, b, s)))
            .collect();
        Ok(Self {
            dim: space.dim(),
            entries,
        })
    }

    pub fn annihilator(i: usize, space: &OrbitalSpace) -> Result<Self> {
        space.check_index(i)?;
        let entries = (0..space.dim())
            .filter_map(|b| annihilate(b, i - 1).map(|(r, s)| (r, b, s)))
            .collect();
        Ok(Self {
            dim: space.dim(),
            entries,
        })
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        let mut out = CVector::zeros(self.dim);
        for &(r, c, s) in &self.entries {
            out[r] += v[c] * s;
        }
        out
    }

    pub fn to_dense(&self) -> FockMatrix {
        let mut m = FockMatrix::zeros(self.dim, self.dim);
        for &(r, c, s) in &self.entries {
            m[(r, c)] = real(s);
        }
        m
    }
}

/// Dense creation operator `a*(h_i)`, `i` 1-based.
pub fn creator(i: usize, space: &OrbitalSpace) -> Result<FockMatrix> {
    Ok(SparseLadder::creator(i, space)?.to_dense())
}

/// Dense annihilation operator `a(h_i)`, the adjoint of [`creator`].
pub fn annihilator(i: usize, space: &OrbitalSpace) -> Result<FockMatrix> {
    Ok(SparseLadder::annihilator(i, space)?.to_dense())
}

/// Diagonal occupation observable `n_i = a*_i a_i`.
pub fn number_operator(i: usize, space: &OrbitalSpace) -> Result<FockMatrix> {
    space.check_index(i)?;
    let dim = space.dim();
    Ok(FockMatrix::from_fn(dim, dim, |r, c| {
        if r == c && r >> (i - 1) & 1 == 1 {
            ONE
        } else {
            ZERO
        }
    }))
}

/// Basis indices with exactly `k` particles, increasing.
pub(crate) fn sector_indices(d: usize, k: usize) -> Vec<usize> {
    (0..1usize << d)
        .filter(|b| b.count_ones() as usize == k)
        .collect()
}

/// Amplitudes of `a*(f_1) ... a*(f_n) |vac>` where `f_k` is column `k` of
/// `cols` (`d x n`): the coefficient at `|m>` is the minor on rows
/// `occupied(m)`.
pub(crate) fn wedge_amplitudes(cols: &CMatrix) -> CVector {
    let d = cols.nrows();
    let n = cols.ncols();
    let mut amps = CVector::zeros(1 << d);
    for m in sector_indices(d, n) {
        let rows = occupied_positions(m);
        let minor = cols.select_rows(rows.iter());
        amps[m] = det(&minor);
    }
    amps
}

/// One fixed-particle-number block of a [`FockUnitary`].
#[derive(Debug, Clone)]
struct SectorBlock {
    indices: Vec<usize>,
    block: CMatrix,
}

/// Fock unitary induced by a 1-particle unitary, stored by particle-number
/// sector.
#[derive(Debug, Clone)]
pub struct FockUnitary {
    d: usize,
    sectors: Vec<SectorBlock>,
}

/// Builds `U_hat` with `<m|U_hat|n> = det U[occupied(m), occupied(n)]`
/// within each particle-number sector, so that
/// `U_hat a*(h_i) U_hat^dagger = sum_j U_ji a*(h_j)`.
pub fn basis_change_unitary(u: &CMatrix, space: &OrbitalSpace) -> Result<FockUnitary> {
    let d = space.d();
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: u.nrows(),
        });
    }
    let dev = unitarity_deviation(u);
    if dev > TOL_UNITARY {
        return Err(Error::NotUnitary(dev));
    }
    Ok(FockUnitary::from_one_particle(u))
}

impl FockUnitary {
    pub(crate) fn from_one_particle(u: &CMatrix) -> Self {
        let d = u.nrows();
        let sectors = (0..=d)
            .map(|k| {
                let indices = sector_indices(d, k);
                let occ: Vec<Vec<usize>> = indices.iter().map(|&b| occupied_positions(b)).collect();
                let n = indices.len();
                let mut block = CMatrix::zeros(n, n);
                for (c, cols) in occ.iter().enumerate() {
                    let sub = u.select_columns(cols.iter());
                    for (r, rows) in occ.iter().enumerate() {
                        block[(r, c)] = det(&sub.select_rows(rows.iter()));
                    }
                }
                SectorBlock { indices, block }
            })
            .collect();
        Self { d, sectors }
    }

    pub fn dim(&self) -> usize {
        1 << self.d
    }

    pub fn to_dense(&self) -> FockMatrix {
        let mut m = FockMatrix::zeros(self.dim(), self.dim());
        for s in &self.sectors {
            for (c, &ci) in s.indices.iter().enumerate() {
                for (r, &ri) in s.indices.iter().enumerate() {
                    m[(ri, ci)] = s.block[(r, c)];
                }
            }
        }
        m
    }

    /// `U_hat |bits>`.
    pub fn column(&self, bits: usize) -> CVector {
        let mut v = CVector::zeros(self.dim());
        let s = &self.sectors[bits.count_ones() as usize];
        let c = s.indices.binary_search(&bits).expect("index in sector");
        for (r, &ri) in s.indices.iter().enumerate() {
            v[ri] = s.block[(r, c)];
        }
        v
    }

    /// `U_hat diag(w) U_hat^dagger`, skipping zero weights.
    pub fn conjugate_diagonal(&self, weights: &[f64]) -> FockMatrix {
        let mut out = FockMatrix::zeros(self.dim(), self.dim());
        for s in &self.sectors {
            let n = s.indices.len();
            let mut scaled = s.block.clone();
            let mut any = false;
            for (c, &ci) in s.indices.iter().enumerate() {
                let w = weights[ci];
                any |= w != 0.0;
                for r in 0..n {
                    scaled[(r, c)] *= w;
                }
            }
            if !any {
                continue;
            }
            let blk = &scaled * s.block.adjoint();
            for (c, &ci) in s.indices.iter().enumerate() {
                for (r, &ri) in s.indices.iter().enumerate() {
                    out[(ri, ci)] = blk[(r, c)];
                }
            }
        }
        out
    }

    /// `U_hat A U_hat^dagger` for a dense operator.
    pub fn conjugate(&self, a: &FockMatrix) -> FockMatrix {
        let mut out = FockMatrix::zeros(self.dim(), self.dim());
        for sk in &self.sectors {
            for sl in &self.sectors {
                let sub = CMatrix::from_fn(sk.indices.len(), sl.indices.len(), |r, c| {
                    a[(sk.indices[r], sl.indices[c])]
                });
                if sub.iter().all(|z| *z == ZERO) {
                    continue;
                }
                let blk = &sk.block * sub * sl.block.adjoint();
                for (c, &ci) in sl.indices.iter().enumerate() {
                    for (r, &ri) in sk.indices.iter().enumerate() {
                        out[(ri, ci)] = blk[(r, c)];
                    }
                }
            }
        }
        out
    }

    /// `U_hat^dagger A U_hat`.
    pub fn conjugate_inverse(&self, a: &FockMatrix) -> FockMatrix {
        let adj = FockUnitary {
            d: self.d,
            sectors: self
                .sectors
                .iter()
                .map(|s| SectorBlock {
                    indices: s.indices.clone(),
                    block: s.block.adjoint(),
                })
                .collect(),
        };
        adj.conjugate(a)
    }
}

/// Splits `n` over the sorted 1-based orbital subset `keep` and its
/// complement. The sign is the parity of reordering the creators of `n`
/// so that those in `keep` come first; both halves keep increasing order.
pub fn split_index(
    n: OccupationList,
    keep: &[usize],
    d: usize,
) -> (OccupationList, OccupationList, f64) {
    let mut n1 = 0usize;
    let mut n2 = 0usize;
    let mut kept_seen_above = 0usize;
    let mut k1 = 0usize;
    let mut k2 = 0usize;
    let mut swaps = 0usize;
    // Walk orbitals from the top down: each occupied complement orbital has
    // to be passed by every occupied kept orbital with a larger index.
    let in_keep = subset_mask(keep);
    for pos in (0..d).rev() {
        let occ = n.bits >> pos & 1 == 1;
        if in_keep >> pos & 1 == 1 {
            if occ {
                kept_seen_above += 1;
            }
        } else if occ {
            swaps += kept_seen_above;
        }
    }
    for pos in 0..d {
        let occ = n.bits >> pos & 1 == 1;
        if in_keep >> pos & 1 == 1 {
            if occ {
                n1 |= 1 << k1;
            }
            k1 += 1;
        } else {
            if occ {
                n2 |= 1 << k2;
            }
            k2 += 1;
        }
    }
    let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
    (OccupationList::new(n1), OccupationList::new(n2), sign)
}

/// Inverse of [`split_index`]: rebuilds `n` and returns the same sign.
pub fn join_index(
    n1: OccupationList,
    n2: OccupationList,
    keep: &[usize],
    d: usize,
) -> (OccupationList, f64) {
    let in_keep = subset_mask(keep);
    let mut bits = 0usize;
    let mut k1 = 0usize;
    let mut k2 = 0usize;
    for pos in 0..d {
        if in_keep >> pos & 1 == 1 {
            if n1.bits >> k1 & 1 == 1 {
                bits |= 1 << pos;
            }
            k1 += 1;
        } else {
            if n2.bits >> k2 & 1 == 1 {
                bits |= 1 << pos;
            }
            k2 += 1;
        }
    }
    let n = OccupationList::new(bits);
    let (_, _, sign) = split_index(n, keep, d);
    (n, sign)
}

fn subset_mask(keep: &[usize]) -> usize {
    keep.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

/// Parity operator `(-1)^N` as a diagonal vector.
pub fn parity_diagonal(space: &OrbitalSpace) -> Vec<f64> {
    (0..space.dim())
        .map(|b: usize| {
            if b.count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        })
        .collect()
}
