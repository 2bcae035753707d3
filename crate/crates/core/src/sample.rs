//! Random instances for searches and property checks: Haar unitaries,
//! free states, Slater determinants and parity-even mixed and pure states.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::fock::OrbitalSpace;
use crate::free::{free_from_pdm, FreeState, FreeStateSpec};
use crate::linalg::{c, CMatrix, CVector};
use crate::pdm::OnePdm;
use crate::state::{pure_density, slater_density, DensityOperator, PureState};

/// Occupations are drawn from `[OCCUPATION_MARGIN, 1 - OCCUPATION_MARGIN]`.
pub const OCCUPATION_MARGIN: f64 = 1e-3;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> crate::linalg::C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im)
}

/// Complex Ginibre matrix with standard normal entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(d, d, rng).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        let z = r[(k, k)];
        let ph = if z.norm() > 0.0 {
            z / z.norm()
        } else {
            c(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, k)] *= ph;
        }
    }
    q
}

/// Occupations uniform in `[margin, 1 - margin]`.
pub fn random_occupations<R: Rng + ?Sized>(d: usize, margin: f64, rng: &mut R) -> Vec<f64> {
    (0..d)
        .map(|_| rng.random_range(margin..=1.0 - margin))
        .collect()
}

/// Free state with Haar natural orbitals and interior occupations, built
/// through [`free_from_pdm`].
pub fn random_free_state<R: Rng + ?Sized>(space: &OrbitalSpace, rng: &mut R) -> FreeState {
    let d = space.d();
    let u = haar_unitary(d, rng);
    let p = random_occupations(d, OCCUPATION_MARGIN, rng);
    let spec = FreeStateSpec::from_parts(space.clone(), p, u);
    let gamma = OnePdm::new(space.clone(), spec.pdm_matrix()).expect("valid 1-pdm");
    free_from_pdm(&gamma)
}

/// Free state spec with Haar orbitals and prescribed occupations.
pub fn random_free_spec<R: Rng + ?Sized>(
    space: &OrbitalSpace,
    occupations: Vec<f64>,
    rng: &mut R,
) -> Result<FreeStateSpec> {
    let u = haar_unitary(space.d(), rng);
    FreeStateSpec::new(space.clone(), occupations, u)
}

/// `n` orthonormal rows of length `d` taken from a Haar unitary.
pub fn random_slater_rows<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> CMatrix {
    haar_unitary(d, rng).rows(0, n).into_owned()
}

pub fn random_slater<R: Rng + ?Sized>(
    space: &OrbitalSpace,
    n: usize,
    rng: &mut R,
) -> DensityOperator {
    slater_density(&random_slater_rows(n, space.d(), rng), space).expect("orthonormal rows")
}

fn parity_indices(dim: usize, odd: bool) -> Vec<usize> {
    (0..dim)
        .filter(|b| (b.count_ones() % 2 == 1) == odd)
        .collect()
}

/// Mixed state commuting with the parity operator: an independent
/// normalized Wishart block on each parity sector, mixed with a random
/// weight. Full rank with probability one.
pub fn random_parity_even_state<R: Rng + ?Sized>(
    space: &OrbitalSpace,
    rng: &mut R,
) -> DensityOperator {
    let dim = space.dim();
    let mut m = CMatrix::zeros(dim, dim);
    let w_even: f64 = if dim == 1 {
        1.0
    } else {
        rng.random_range(0.05..0.95)
    };
    for (odd, w) in [(false, w_even), (true, 1.0 - w_even)] {
        let idx = parity_indices(dim, odd);
        if idx.is_empty() {
            continue;
        }
        let g = ginibre(idx.len(), idx.len(), rng);
        let block = &g * g.adjoint();
        let tr: f64 = (0..idx.len()).map(|k| block[(k, k)].re).sum();
        for (r, &ir) in idx.iter().enumerate() {
            for (cc, &ic) in idx.iter().enumerate() {
                m[(ir, ic)] = block[(r, cc)] * (w / tr);
            }
        }
    }
    DensityOperator::new(space.clone(), crate::linalg::hermitize(&m)).expect("valid state")
}

/// Pure state supported on one parity sector chosen at random.
pub fn random_parity_pure_state<R: Rng + ?Sized>(
    space: &OrbitalSpace,
    rng: &mut R,
) -> DensityOperator {
    let dim = space.dim();
    let odd = rng.random_bool(0.5);
    let idx = parity_indices(dim, odd);
    let mut v = CVector::zeros(dim);
    for &i in &idx {
        v[i] = gaussian(rng);
    }
    let n = v.norm();
    v /= c(n, 0.0);
    pure_density(&PureState::new(space.clone(), v).expect("normalized"))
}

/// Nonempty proper or full 1-based subset of `1..=d`, sorted.
pub fn random_subset<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<usize> {
    let k = rng.random_range(1..=d);
    let mut s: Vec<usize> = index::sample(rng, d, k)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    s.sort_unstable();
    s
}
