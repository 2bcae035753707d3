//! Density operators on Fock space and the constructors for pure, Slater
//! determinant, Gibbs, mixed, product and Hubbard ground states.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::fock::{
    annihilate, create, occupied_positions, wedge_amplitudes, FockMatrix, OrbitalSpace, HARD_D_MAX,
    TOL_UNITARY,
};
use crate::linalg::{
    eigh, fix_phase, hermitian_deviation, hermitize, max_abs_diff, real,
    row_orthonormality_deviation, trace, CMatrix, CVector, Spectrum, C64,
};

/// Hermiticity tolerance for density operators.
pub const TOL_HERM: f64 = 1e-10;
/// Most negative eigenvalue accepted (and then clamped) in a density operator.
pub const TOL_PSD: f64 = 1e-10;
/// Allowed deviation of the trace from 1.
pub const TOL_TRACE: f64 = 1e-10;
/// Allowed deviation of a state vector norm from 1.
pub const TOL_NORM: f64 = 1e-12;

/// A validated density operator on the Fock space of an [`OrbitalSpace`].
#[derive(Debug, Clone)]
pub struct DensityOperator {
    space: OrbitalSpace,
    matrix: FockMatrix,
}

impl DensityOperator {
    /// Validates dimension, hermiticity, unit trace and positivity. No
    /// renormalization is ever applied.
    pub fn new(space: OrbitalSpace, matrix: FockMatrix) -> Result<Self> {
        let dim = space.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        let herm = hermitian_deviation(&matrix);
        if herm > TOL_HERM {
            return Err(Error::NotHermitian(herm));
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > TOL_TRACE {
            return Err(Error::TraceDeviates(tr - 1.0));
        }
        let matrix = hermitize(&matrix);
        let min = eigh(&matrix).values.first().copied().unwrap_or(0.0);
        if min < -TOL_PSD {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { space, matrix })
    }

    /// Wraps a matrix produced by one of this crate's exact constructions.
    pub(crate) fn from_trusted(space: OrbitalSpace, matrix: FockMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), space.dim());
        debug_assert!((trace(&matrix).re - 1.0).abs() < 1e-8);
        Self {
            space,
            matrix: hermitize(&matrix),
        }
    }

    pub fn space(&self) -> &OrbitalSpace {
        &self.space
    }

    pub fn d(&self) -> usize {
        self.space.d()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrix(&self) -> &FockMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> FockMatrix {
        self.matrix
    }

    /// Eigendecomposition with ascending eigenvalues.
    pub fn spectrum(&self) -> Spectrum {
        eigh(&self.matrix)
    }

    /// `Tr(rho A)`.
    pub fn expectation(&self, op: &FockMatrix) -> C64 {
        trace(&(&self.matrix * op))
    }

    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `1/2 ||self - other||_1`.
    pub fn trace_distance(&self, other: &DensityOperator) -> f64 {
        0.5 * crate::linalg::trace_norm(&(&self.matrix - &other.matrix))
    }

    /// Largest entrywise difference of the matrices.
    pub fn max_abs_diff(&self, other: &DensityOperator) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }

    pub(crate) fn same_space(&self, other: &DensityOperator) -> Result<()> {
        if self.d() != other.d() {
            return Err(Error::SpaceMismatch(format!(
                "d = {} vs d = {}",
                self.d(),
                other.d()
            )));
        }
        Ok(())
    }
}

/// Unit vector in Fock space.
#[derive(Debug, Clone)]
pub struct PureState {
    space: OrbitalSpace,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(space: OrbitalSpace, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { space, amplitudes })
    }

    /// The Fock basis vector `|bits>`.
    pub fn basis(space: OrbitalSpace, bits: usize) -> Result<Self> {
        let mut v = CVector::zeros(space.dim());
        if bits >= space.dim() {
            return Err(Error::IndexOutOfRange {
                index: bits,
                d: space.dim(),
            });
        }
        v[bits] = real(1.0);
        Ok(Self {
            space,
            amplitudes: v,
        })
    }

    pub fn space(&self) -> &OrbitalSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }
}

/// `|psi><psi|`.
pub fn pure_density(psi: &PureState) -> DensityOperator {
    let v = &psi.amplitudes;
    DensityOperator::from_trusted(psi.space.clone(), v * v.adjoint())
}

/// The Slater determinant vector `a*(f_1) ... a*(f_n) |vac>` for orthonormal
/// rows `f_k` of an `n x d` matrix. This is the image of `|1...10...0>`
/// under the Fock unitary of any basis change whose first columns are the
/// orbitals.
pub fn slater_state(orbitals: &CMatrix, space: &OrbitalSpace) -> Result<PureState> {
    let d = space.d();
    if orbitals.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: orbitals.ncols(),
        });
    }
    if orbitals.nrows() > d {
        return Err(Error::NotOrthonormal(f64::INFINITY));
    }
    if orbitals.nrows() > 0 {
        let dev = row_orthonormality_deviation(orbitals);
        if dev > TOL_UNITARY {
            return Err(Error::NotOrthonormal(dev));
        }
    }
    let amplitudes = wedge_amplitudes(&orbitals.transpose());
    Ok(PureState {
        space: space.clone(),
        amplitudes,
    })
}

pub fn slater_density(orbitals: &CMatrix, space: &OrbitalSpace) -> Result<DensityOperator> {
    Ok(pure_density(&slater_state(orbitals, space)?))
}

/// Product-Bernoulli weights `prod_i p_i^{n(i)} (1-p_i)^{1-n(i)}` indexed by bits.
pub(crate) fn bernoulli_weights(p: &[f64]) -> Vec<f64> {
    let d = p.len();
    (0..1usize << d)
        .map(|b| {
            p.iter()
                .enumerate()
                .map(|(i, &pi)| if b >> i & 1 == 1 { pi } else { 1.0 - pi })
                .product()
        })
        .collect()
}

fn diagonal_density(space: &OrbitalSpace, weights: &[f64]) -> DensityOperator {
    let dim = space.dim();
    let mut m = FockMatrix::zeros(dim, dim);
    for (k, &w) in weights.iter().enumerate() {
        m[(k, k)] = real(w);
    }
    DensityOperator::from_trusted(space.clone(), m)
}

/// Gibbs state of independent reference orbitals with occupation
/// probabilities strictly inside `(0, 1)`.
pub fn gibbs_free_density(p: &[f64], space: &OrbitalSpace) -> Result<DensityOperator> {
    if p.len() != space.d() {
        return Err(Error::DimensionMismatch {
            expected: space.d(),
            got: p.len(),
        });
    }
    for (i, &pi) in p.iter().enumerate() {
        if !(pi > 0.0 && pi < 1.0) {
            return Err(Error::InvalidProbability {
                index: i + 1,
                value: pi,
                range: "(0, 1)",
            });
        }
    }
    Ok(diagonal_density(space, &bernoulli_weights(p)))
}

/// Occupations `e^{-l}/(1+e^{-l})` of the Gibbs state `exp(-sum l_i n_i)/Z`.
pub fn occupations_from_energies(lambda: &[f64]) -> Vec<f64> {
    lambda.iter().map(|&l| 1.0 / (1.0 + l.exp())).collect()
}

/// `exp(-sum_i lambda_i n_i) / Z`, evaluated directly on the Fock basis.
pub fn gibbs_from_energies(lambda: &[f64], space: &OrbitalSpace) -> Result<DensityOperator> {
    if lambda.len() != space.d() {
        return Err(Error::DimensionMismatch {
            expected: space.d(),
            got: lambda.len(),
        });
    }
    if let Some(i) = lambda.iter().position(|l| !l.is_finite()) {
        return Err(Error::InvalidProbability {
            index: i + 1,
            value: lambda[i],
            range: "finite energies",
        });
    }
    let unnorm: Vec<f64> = (0..space.dim())
        .map(|b| {
            let e: f64 = occupied_positions(b).iter().map(|&p| lambda[p]).sum();
            (-e).exp()
        })
        .collect();
    let z: f64 = unnorm.iter().sum();
    let w: Vec<f64> = unnorm.iter().map(|x| x / z).collect();
    Ok(diagonal_density(space, &w))
}

/// Convex combination of density operators on a shared orbital space.
pub fn mixture(components: &[(f64, DensityOperator)]) -> Result<DensityOperator> {
    let (_, first) = components
        .first()
        .ok_or_else(|| Error::WeightMismatch("no components".into()))?;
    let mut total = 0.0;
    let mut acc = FockMatrix::zeros(first.dim(), first.dim());
    for (k, (w, rho)) in components.iter().enumerate() {
        if !(*w >= 0.0) {
            return Err(Error::WeightMismatch(format!("weight {k} is {w}")));
        }
        if rho.space() != first.space() {
            return Err(Error::SpaceMismatch(format!(
                "component {k} lives on a different orbital space"
            )));
        }
        total += w;
        acc += rho.matrix().scale(*w);
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::WeightMismatch(format!("weights sum to {total}")));
    }
    Ok(DensityOperator::from_trusted(first.space().clone(), acc))
}

/// Product state on the concatenated orbital space, first factor's orbitals
/// first: `|n1 n2> = |n1> (x) |n2>` with bits `n1 | n2 << d1`.
pub fn tensor_product(a: &DensityOperator, b: &DensityOperator) -> Result<DensityOperator> {
    let d1 = a.d();
    let d2 = b.d();
    let mut space = OrbitalSpace::with_limit(d1 + d2, HARD_D_MAX)?;
    if let (Some(la), Some(lb)) = (a.space().labels(), b.space().labels()) {
        if let Some(dup) = la.iter().find(|l| lb.contains(l)) {
            return Err(Error::SpaceMismatch(format!(
                "label {dup:?} appears in both factors"
            )));
        }
        space = space.with_labels(la.iter().chain(lb).cloned().collect())?;
    }
    let dim1 = a.dim();
    let m = a.matrix().kronecker(b.matrix());
    // kronecker indexes rows as i1 * dim2 + i2; bits are i1 | i2 << d1
    let dim = space.dim();
    let dim2 = b.dim();
    let to_bits = |k: usize| (k / dim2) | (k % dim2) << d1;
    let mut out = FockMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            out[(to_bits(r), to_bits(c))] = m[(r, c)];
        }
    }
    debug_assert_eq!(dim1 * dim2, dim);
    Ok(DensityOperator::from_trusted(space, out))
}

/// `w |10><10| + (1 - w) |01><01|` on two orbitals: one particle spread
/// incoherently over both orbitals. With `w = 2/3` its Rényi distances to
/// free states are not minimized at the free state with the same 1-pdm.
pub fn one_particle_mixture(weight: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::InvalidProbability {
            index: 1,
            value: weight,
            range: "[0, 1]",
        });
    }
    let space = OrbitalSpace::new(2)?;
    let mut m = FockMatrix::zeros(4, 4);
    m[(1, 1)] = real(weight);
    m[(2, 2)] = real(1.0 - weight);
    Ok(DensityOperator::from_trusted(space, m))
}

/// `(|1100> + |0011>) / sqrt 2` on four orbitals.
pub fn paired_state() -> DensityOperator {
    let mut v = CVector::zeros(16);
    let s = 0.5f64.sqrt();
    v[0b0011] = real(s);
    v[0b1100] = real(s);
    pure_density(&PureState::new(OrbitalSpace::new(4).expect("d = 4"), v).expect("normalized"))
}

/// Parameters of the open-boundary Hubbard chain. Spin-orbitals are laid
/// out as site1-up, site1-down, site2-up, ...
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HubbardParams {
    pub sites: usize,
    pub hopping: f64,
    pub interaction: f64,
    pub n_up: usize,
    pub n_down: usize,
}

pub const HUBBARD_MAX_SITES: usize = 5;

impl HubbardParams {
    pub fn new(sites: usize, hopping: f64, interaction: f64, n_up: usize, n_down: usize) -> Self {
        Self {
            sites,
            hopping,
            interaction,
            n_up,
            n_down,
        }
    }

    pub fn half_filled(sites: usize, hopping: f64, interaction: f64) -> Self {
        Self::new(sites, hopping, interaction, sites.div_ceil(2), sites / 2)
    }

    fn validate(&self) -> Result<()> {
        if self.sites == 0 || self.sites > HUBBARD_MAX_SITES {
            return Err(Error::InfeasibleParticles(format!(
                "sites = {} outside 1..={HUBBARD_MAX_SITES}",
                self.sites
            )));
        }
        if self.n_up > self.sites || self.n_down > self.sites {
            return Err(Error::InfeasibleParticles(format!(
                "n_up = {}, n_down = {} on {} sites",
                self.n_up, self.n_down, self.sites
            )));
        }
        if !self.hopping.is_finite() || !self.interaction.is_finite() {
            return Err(Error::InfeasibleParticles(
                "non-finite Hamiltonian parameters".into(),
            ));
        }
        Ok(())
    }
}

const UP_MASK: usize = 0x5555_5555;

fn sector_basis(p: &HubbardParams) -> Vec<usize> {
    let d = 2 * p.sites;
    (0..1usize << d)
        .filter(|&b| {
            (b & UP_MASK).count_ones() as usize == p.n_up
                && (b & !UP_MASK).count_ones() as usize == p.n_down
        })
        .collect()
}

/// Real Hubbard Hamiltonian restricted to the fixed-(N_up, N_down) sector,
/// with the sector's basis indices.
pub fn hubbard_sector_hamiltonian(p: &HubbardParams) -> Result<(Vec<usize>, DMatrix<f64>)> {
    p.validate()?;
    let basis = sector_basis(p);
    let n = basis.len();
    let mut h = DMatrix::<f64>::zeros(n, n);
    for (col, &b) in basis.iter().enumerate() {
        for s in 0..p.sites {
            let up = 2 * s;
            if b >> up & 1 == 1 && b >> (up + 1) & 1 == 1 {
                h[(col, col)] += p.interaction;
            }
        }
        for s in 0..p.sites.saturating_sub(1) {
            for spin in 0..2 {
                let i = 2 * s + spin;
                let j = 2 * (s + 1) + spin;
                for (from, to) in [(j, i), (i, j)] {
                    if let Some((b1, s1)) = annihilate(b, from) {
                        if let Some((b2, s2)) = create(b1, to) {
                            let row = basis.binary_search(&b2).expect("hop stays in sector");
                            h[(row, col)] -= p.hopping * s1 * s2;
                        }
                    }
                }
            }
        }
    }
    Ok((basis, h))
}

/// Ground-state density of the Hubbard chain in the requested sector.
/// Degenerate ground states resolve to the first eigenvector of a
/// deterministic ascending eigensolve.
pub fn hubbard_ground_state(p: &HubbardParams) -> Result<DensityOperator> {
    let (basis, h) = hubbard_sector_hamiltonian(p)?;
    let space = OrbitalSpace::with_limit(2 * p.sites, HARD_D_MAX)?;
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let ground = eig.eigenvectors.column(order[0]);
    let mut amps = CVector::zeros(space.dim());
    for (k, &b) in basis.iter().enumerate() {
        amps[b] = real(ground[k]);
    }
    let norm = amps.norm();
    amps /= real(norm);
    fix_phase(&mut amps, 1e-12);
    let psi = PureState::new(space, amps)?;
    Ok(pure_density(&psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::creator;
    use crate::linalg::{c, ZERO};

    fn sp(d: usize) -> OrbitalSpace {
        OrbitalSpace::new(d).unwrap()
    }

    #[test]
    fn vacuum_pure_density() {
        let rho = pure_density(&PureState::basis(sp(2), 0).unwrap());
        assert_eq!(rho.matrix()[(0, 0)], real(1.0));
        assert!((rho.purity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_vector_rejected() {
        let v = CVector::from_element(2, real(1.0));
        assert!(matches!(
            PureState::new(sp(1), v),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn standard_rows_give_lowest_pattern() {
        let d = 4;
        for n in 0..=d {
            let rows = CMatrix::identity(n, d);
            let rho = slater_density(&rows, &sp(d)).unwrap();
            let k = (1 << n) - 1;
            assert!((rho.matrix()[(k, k)] - real(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn slater_matches_creator_product() {
        let d = 3;
        let s = 0.5f64.sqrt();
        let rows =
            CMatrix::from_row_slice(2, 3, &[real(s), ZERO, c(0.0, s), ZERO, real(1.0), ZERO]);
        let psi = slater_state(&rows, &sp(d)).unwrap();
        let space = sp(d);
        let a = |i| creator(i, &space).unwrap();
        let f1 = (a(1) * real(s)) + a(3) * c(0.0, s);
        let f2 = a(2);
        let mut vac = CVector::zeros(8);
        vac[0] = real(1.0);
        let expect = f1 * (f2 * vac);
        assert!((psi.amplitudes() - expect).norm() < 1e-14);
    }

    #[test]
    fn non_orthonormal_rows_rejected() {
        let rows = CMatrix::from_element(2, 2, real(0.5));
        assert!(matches!(
            slater_density(&rows, &sp(2)),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn gibbs_weights() {
        let rho = gibbs_free_density(&[0.5], &sp(1)).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
        let rho = gibbs_free_density(&[2.0 / 3.0, 1.0 / 3.0], &sp(2)).unwrap();
        let expect = [2.0 / 9.0, 4.0 / 9.0, 1.0 / 9.0, 2.0 / 9.0];
        for (k, e) in expect.iter().enumerate() {
            assert!((rho.matrix()[(k, k)].re - e).abs() < 1e-15);
        }
        assert!(gibbs_free_density(&[1.0, 0.5], &sp(2)).is_err());
        assert!(gibbs_free_density(&[0.0, 0.5], &sp(2)).is_err());
    }

    #[test]
    fn energies_roundtrip() {
        let lambda = [0.3, -1.2, 2.5];
        let p = occupations_from_energies(&lambda);
        for (l, pi) in lambda.iter().zip(&p) {
            assert!((pi - (-l).exp() / (1.0 + (-l).exp())).abs() < 1e-15);
        }
        let a = gibbs_from_energies(&lambda, &sp(3)).unwrap();
        let b = gibbs_free_density(&p, &sp(3)).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn mixture_cases() {
        let rho = gibbs_free_density(&[0.3, 0.6], &sp(2)).unwrap();
        let same = mixture(&[(1.0, rho.clone())]).unwrap();
        assert!(same.max_abs_diff(&rho) < 1e-15);
        let half = mixture(&[(0.5, rho.clone()), (0.5, rho.clone())]).unwrap();
        assert!(half.max_abs_diff(&rho) < 1e-15);

        let up = pure_density(&PureState::basis(sp(2), 1).unwrap());
        let down = pure_density(&PureState::basis(sp(2), 2).unwrap());
        let split_particle = mixture(&[(2.0 / 3.0, up), (1.0 / 3.0, down)]).unwrap();
        let diag: Vec<f64> = (0..4).map(|k| split_particle.matrix()[(k, k)].re).collect();
        assert_eq!(diag, vec![0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0]);

        assert!(matches!(
            mixture(&[(0.4, rho.clone()), (0.4, rho.clone())]),
            Err(Error::WeightMismatch(_))
        ));
        let other = gibbs_free_density(&[0.5], &sp(1)).unwrap();
        assert!(matches!(
            mixture(&[(0.5, rho), (0.5, other)]),
            Err(Error::SpaceMismatch(_))
        ));
    }

    #[test]
    fn vacuum_product() {
        let v1 = pure_density(&PureState::basis(sp(1), 0).unwrap());
        let v2 = pure_density(&PureState::basis(sp(2), 0).unwrap());
        let v = tensor_product(&v1, &v2).unwrap();
        assert_eq!(v.d(), 3);
        assert_eq!(v.matrix()[(0, 0)], real(1.0));
    }

    #[test]
    fn product_places_first_factor_in_low_bits() {
        let a = gibbs_free_density(&[0.2], &sp(1)).unwrap();
        let b = gibbs_free_density(&[0.7], &sp(1)).unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        let direct = gibbs_free_density(&[0.2, 0.7], &sp(2)).unwrap();
        assert!(ab.max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn product_rejects_shared_labels() {
        let la = sp(1).with_labels(vec!["x".into()]).unwrap();
        let a = DensityOperator::new(
            la.clone(),
            gibbs_free_density(&[0.2], &sp(1)).unwrap().into_matrix(),
        )
        .unwrap();
        assert!(tensor_product(&a, &a).is_err());
    }

    #[test]
    fn density_validation_errors() {
        let mut m = FockMatrix::zeros(2, 2);
        m[(0, 0)] = real(0.7);
        m[(1, 1)] = real(0.4);
        assert!(matches!(
            DensityOperator::new(sp(1), m.clone()),
            Err(Error::TraceDeviates(_))
        ));
        m[(1, 1)] = real(0.3);
        m[(0, 1)] = real(0.1);
        assert!(matches!(
            DensityOperator::new(sp(1), m.clone()),
            Err(Error::NotHermitian(_))
        ));
        let mut neg = FockMatrix::zeros(2, 2);
        neg[(0, 0)] = real(1.2);
        neg[(1, 1)] = real(-0.2);
        assert!(matches!(
            DensityOperator::new(sp(1), neg),
            Err(Error::NotPositive(_))
        ));
        assert!(DensityOperator::new(sp(2), FockMatrix::identity(2, 2)).is_err());
    }

    #[test]
    fn hubbard_sector_is_valid() {
        let p = HubbardParams::new(2, 0.0, 3.0, 1, 1);
        let rho = hubbard_ground_state(&p).unwrap();
        assert!((trace(rho.matrix()).re - 1.0).abs() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!(hubbard_ground_state(&HubbardParams::new(2, 1.0, 1.0, 3, 0)).is_err());
        assert!(hubbard_ground_state(&HubbardParams::new(6, 1.0, 1.0, 1, 0)).is_err());
    }

    #[test]
    fn hubbard_two_site_energy() {
        // Two-site singlet ground energy: U/2 - sqrt(U^2/4 + 4 t^2).
        let (_, h) = hubbard_sector_hamiltonian(&HubbardParams::new(2, 1.0, 4.0, 1, 1)).unwrap();
        let e0 = SymmetricEigen::new(h).eigenvalues.min();
        assert!((e0 - (2.0 - 8.0f64.sqrt())).abs() < 1e-12);
    }
}
