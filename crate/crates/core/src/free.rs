//! Free (gauge-invariant quasi-free) states: construction from a 1-pdm,
//! Wick-relation checks and the Slater purification on a doubled orbital
//! space.

use crate::error::{Error, Result};
use crate::fock::{annihilate, create, FockUnitary, OrbitalSpace, HARD_D_MAX, TOL_UNITARY};
use crate::linalg::{real, unitarity_deviation, CMatrix, Spectrum, C64};
use crate::pdm::{natural_spectrum, one_pdm, OnePdm};
use crate::state::{bernoulli_weights, DensityOperator};

/// Natural orbitals (columns) and occupations of a free state. The state is
/// `U_hat diag(w) U_hat^dagger` with product-Bernoulli weights `w`.
#[derive(Debug, Clone)]
pub struct FreeStateSpec {
    space: OrbitalSpace,
    occupations: Vec<f64>,
    orbitals: CMatrix,
}

impl FreeStateSpec {
    pub fn new(space: OrbitalSpace, occupations: Vec<f64>, orbitals: CMatrix) -> Result<Self> {
        let d = space.d();
        if occupations.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: occupations.len(),
            });
        }
        if orbitals.nrows() != d || orbitals.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: orbitals.nrows(),
            });
        }
        for (i, &p) in occupations.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability {
                    index: i + 1,
                    value: p,
                    range: "[0, 1]",
                });
            }
        }
        let dev = unitarity_deviation(&orbitals);
        if dev > TOL_UNITARY {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self {
            space,
            occupations,
            orbitals,
        })
    }

    pub(crate) fn from_parts(
        space: OrbitalSpace,
        occupations: Vec<f64>,
        orbitals: CMatrix,
    ) -> Self {
        Self {
            space,
            occupations,
            orbitals,
        }
    }

    /// Free state diagonal in the reference orbitals.
    pub fn diagonal(space: OrbitalSpace, occupations: Vec<f64>) -> Result<Self> {
        let d = space.d();
        Self::new(space, occupations, CMatrix::identity(d, d))
    }

    pub fn space(&self) -> &OrbitalSpace {
        &self.space
    }

    pub fn occupations(&self) -> &[f64] {
        &self.occupations
    }

    pub fn orbitals(&self) -> &CMatrix {
        &self.orbitals
    }

    /// Eigenvalues of the free density operator, indexed by occupation
    /// bits in the natural-orbital Fock basis.
    pub fn weights(&self) -> Vec<f64> {
        bernoulli_weights(&self.occupations)
    }

    pub fn fock_unitary(&self) -> FockUnitary {
        FockUnitary::from_one_particle(&self.orbitals)
    }

    /// Eigen-data of the free density operator without diagonalizing it.
    /// Weights are exact products of occupations, zero only for occupations
    /// exactly 0 or 1.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum {
            values: self.weights(),
            vectors: self.fock_unitary().to_dense(),
        }
    }

    pub fn density(&self) -> DensityOperator {
        let m = self.fock_unitary().conjugate_diagonal(&self.weights());
        DensityOperator::from_trusted(self.space.clone(), m)
    }

    /// `U diag(p) U^dagger`.
    pub fn pdm_matrix(&self) -> CMatrix {
        let d = self.space.d();
        let mut scaled = self.orbitals.clone();
        for k in 0..d {
            for i in 0..d {
                scaled[(i, k)] *= self.occupations[k];
            }
        }
        scaled * self.orbitals.adjoint()
    }
}

/// A free density operator together with its structural description.
#[derive(Debug, Clone)]
pub struct FreeState {
    pub density: DensityOperator,
    pub spec: FreeStateSpec,
}

/// The unique free state whose 1-pdm is `q`, built in the eigenbasis of `q`
/// with boundary occupations 0 and 1 handled exactly.
pub fn free_from_pdm(q: &OnePdm) -> FreeState {
    let ns = natural_spectrum(q);
    let spec = FreeStateSpec {
        space: q.space().clone(),
        occupations: ns.occupations,
        orbitals: ns.orbitals,
    };
    FreeState {
        density: spec.density(),
        spec,
    }
}

/// `Gamma_rho`: the free state with the same 1-pdm as `rho`.
pub fn gamma_of(rho: &DensityOperator) -> DensityOperator {
    free_from_pdm(&one_pdm(rho)).density
}

/// Outcome of [`wick_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct WickReport {
    pub passed: bool,
    pub worst_violation: f64,
    /// Human-readable monomial of the worst violation, e.g. `a*1 a*2 a4 a3`.
    pub worst_term: String,
}

/// One ladder factor of a normally ordered monomial.
#[derive(Debug, Clone, Copy)]
enum Ladder {
    Create(usize),
    Annihilate(usize),
}

/// `Tr(rho X)` for a monomial `X` listed left to right.
fn monomial_expectation(m: &CMatrix, dim: usize, word: &[Ladder]) -> C64 {
    let mut acc = real(0.0);
    'basis: for b in 0..dim {
        let mut bits = b;
        let mut sign = 1.0;
        for op in word.iter().rev() {
            let step = match *op {
                Ladder::Create(p) => create(bits, p),
                Ladder::Annihilate(p) => annihilate(bits, p),
            };
            match step {
                Some((nb, s)) => {
                    bits = nb;
                    sign *= s;
                }
                None => continue 'basis,
            }
        }
        acc += m[(b, bits)] * sign;
    }
    acc
}

fn describe(word: &[Ladder]) -> String {
    word.iter()
        .map(|op| match op {
            Ladder::Create(p) => format!("a*{}", p + 1),
            Ladder::Annihilate(p) => format!("a{}", p + 1),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Index tuples `f_1 < ... < f_n` over `d` orbitals (0-based).
fn increasing_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, n, &mut Vec::new(), &mut out);
    out
}

/// Checks the gauge-invariant Wick relations
/// `Tr(rho a*_{f1}..a*_{fn} a_{gm}..a_{g1}) = delta_mn det[<g_i, gamma f_j>]`
/// for reference orbitals and all `0 <= n, m <= max_order`, `n + m > 0`.
/// Orders above 2 are clamped to 2.
pub fn wick_check(rho: &DensityOperator, max_order: usize, tol: f64) -> WickReport {
    let order = max_order.clamp(1, 2);
    let d = rho.d();
    let dim = rho.dim();
    let m = rho.matrix();
    let gamma = one_pdm(rho);
    let g = gamma.matrix();
    let mut worst = 0.0f64;
    let mut worst_term = String::new();
    for n in 0..=order {
        for mm in 0..=order {
            if n + mm == 0 {
                continue;
            }
            let fs = increasing_tuples(d, n);
            let gs = increasing_tuples(d, mm);
            for f in &fs {
                for gg in &gs {
                    let mut word: Vec<Ladder> = f.iter().map(|&i| Ladder::Create(i)).collect();
                    word.extend(gg.iter().rev().map(|&i| Ladder::Annihilate(i)));
                    let lhs = monomial_expectation(m, dim, &word);
                    let rhs = if n == mm {
                        let mat = CMatrix::from_fn(n, n, |r, c| g[(gg[r], f[c])]);
                        crate::linalg::det(&mat)
                    } else {
                        real(0.0)
                    };
                    let v = (lhs - rhs).norm();
                    if v > worst {
                        worst = v;
                        worst_term = describe(&word);
                    }
                }
            }
        }
    }
    WickReport {
        passed: worst <= tol,
        worst_violation: worst,
        worst_term,
    }
}

/// Rows of the `N x 2N` Slater determinant
/// `wedge_i (sqrt(p_i) k_i + sqrt(1 - p_i) k'_i)`, where `k_i` are the
/// spec's natural orbitals on the first `N` orbitals and `k'_i` are the
/// extra reference orbitals `N + i`.
pub fn purify_free(spec: &FreeStateSpec) -> Result<(OrbitalSpace, CMatrix)> {
    let n = spec.space().d();
    let doubled = OrbitalSpace::with_limit(2 * n, HARD_D_MAX)?;
    let mut rows = CMatrix::zeros(n, 2 * n);
    for i in 0..n {
        let p = spec.occupations()[i];
        let sp = p.sqrt();
        for j in 0..n {
            rows[(i, j)] = spec.orbitals()[(j, i)] * sp;
        }
        rows[(i, n + i)] = real((1.0 - p).sqrt());
    }
    Ok((doubled, rows))
}
