//! One-particle density matrices, natural orbitals and the 1-pdm kernel
//! predicates.

use crate::error::{Error, Result};
use crate::fock::{annihilate, create, OrbitalSpace};
use crate::linalg::{eigh, fix_phase, hermitian_deviation, hermitize, real, CMatrix, CVector};
use crate::state::DensityOperator;

/// Default kernel tolerance for 1-pdm predicates.
pub const TOL_KERNEL_PDM: f64 = 1e-10;
/// Accepted excursion of 1-pdm eigenvalues outside `[0, 1]` before clamping.
pub const TOL_CONTRACTION: f64 = 1e-10;

/// `gamma[i][j] = Tr(rho a*_j a_i)`, i.e. `<h_i | gamma h_j>`.
#[derive(Debug, Clone)]
pub struct OnePdm {
    space: OrbitalSpace,
    gamma: CMatrix,
}

impl OnePdm {
    /// Validates hermiticity and that the spectrum lies in `[0, 1]`.
    pub fn new(space: OrbitalSpace, gamma: CMatrix) -> Result<Self> {
        let d = space.d();
        if gamma.nrows() != d || gamma.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: gamma.nrows().max(gamma.ncols()),
            });
        }
        let herm = hermitian_deviation(&gamma);
        if herm > 1e-10 {
            return Err(Error::NotHermitian(herm));
        }
        let gamma = hermitize(&gamma);
        for v in eigh(&gamma).values {
            if !(-TOL_CONTRACTION..=1.0 + TOL_CONTRACTION).contains(&v) {
                return Err(Error::NotContraction(v));
            }
        }
        Ok(Self { space, gamma })
    }

    /// Diagonal 1-pdm `diag(p)`.
    pub fn diagonal(space: OrbitalSpace, p: &[f64]) -> Result<Self> {
        if p.len() != space.d() {
            return Err(Error::DimensionMismatch {
                expected: space.d(),
                got: p.len(),
            });
        }
        let g =
            CMatrix::from_diagonal(&CVector::from_iterator(p.len(), p.iter().map(|&x| real(x))));
        Self::new(space, g)
    }

    pub fn space(&self) -> &OrbitalSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.gamma
    }

    pub fn trace(&self) -> f64 {
        (0..self.gamma.nrows()).map(|i| self.gamma[(i, i)].re).sum()
    }

    /// Compression to the 1-based orbital subset `keep`.
    pub fn compress(&self, keep: &[usize]) -> CMatrix {
        CMatrix::from_fn(keep.len(), keep.len(), |r, c| {
            self.gamma[(keep[r] - 1, keep[c] - 1)]
        })
    }
}

/// Natural occupations (descending) with the matching natural orbitals as
/// columns. Each orbital's first component above `1e-12` in modulus is
/// made real and positive.
#[derive(Debug, Clone)]
pub struct NaturalSpectrum {
    pub occupations: Vec<f64>,
    pub orbitals: CMatrix,
    /// Largest amount by which an eigenvalue was moved into `[0, 1]`.
    pub clamped: f64,
}

pub fn one_pdm(rho: &DensityOperator) -> OnePdm {
    let d = rho.d();
    let m = rho.matrix();
    let mut gamma = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = real(0.0);
            for b in 0..rho.dim() {
                let Some((b1, s1)) = annihilate(b, i) else {
                    continue;
                };
                let Some((b2, s2)) = create(b1, j) else {
                    continue;
                };
                acc += m[(b, b2)] * (s1 * s2);
            }
            gamma[(i, j)] = acc;
        }
    }
    OnePdm {
        space: rho.space().clone(),
        gamma: hermitize(&gamma),
    }
}

pub fn natural_spectrum(gamma: &OnePdm) -> NaturalSpectrum {
    let spec = eigh(gamma.matrix());
    let d = spec.dim();
    let mut clamped = 0.0f64;
    let mut occupations = Vec::with_capacity(d);
    let mut cols = Vec::with_capacity(d);
    for k in (0..d).rev() {
        let v = spec.values[k];
        let cl = v.clamp(0.0, 1.0);
        clamped = clamped.max((cl - v).abs());
        occupations.push(cl);
        let mut col: CVector = spec.vectors.column(k).into_owned();
        fix_phase(&mut col, 1e-12);
        cols.push(col);
    }
    NaturalSpectrum {
        occupations,
        orbitals: CMatrix::from_columns(&cols),
        clamped,
    }
}

/// `Tr(gamma_rho)`, the mean particle number.
pub fn expected_particle_number(rho: &DensityOperator) -> f64 {
    one_pdm(rho).trace()
}

/// The pair `(ker gamma_ref ⊆ ker gamma, ker(I - gamma_ref) ⊆ ker(I - gamma))`,
/// decided on the eigenvectors of `gamma_ref` within `tol` of 0 and 1.
pub fn kernel_inclusion_1pdm(gamma_ref: &OnePdm, gamma: &OnePdm, tol: f64) -> (bool, bool) {
    let spec = eigh(gamma_ref.matrix());
    let g = gamma.matrix();
    let mut zero_ok = true;
    let mut one_ok = true;
    for (k, &v) in spec.values.iter().enumerate() {
        let col = spec.vectors.column(k);
        if v < tol {
            zero_ok &= (g * col).norm() < tol;
        }
        if v > 1.0 - tol {
            one_ok &= (col - g * col).norm() < tol;
        }
    }
    (zero_ok, one_ok)
}
