//! Brute-force corroboration: random and refined searches over free states,
//! the diagonal grid used to exhibit Rényi minimizers away from `Gamma_rho`,
//! and a seeded property suite over random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::correlation::{
    chain_rule_terms, correlation_renyi, correlation_sandwiched, nonfreeness, nonfreeness_with,
    restrict, ChainStatus,
};
use crate::entropy::{
    clean_spectrum, cross_entropy, relative_entropy, relative_entropy_spectral, renyi_spectral,
    sandwiched_spectral, von_neumann, DivergenceValue,
};
use crate::error::{Error, Result};
use crate::fock::{annihilator, basis_change_unitary, creator, OrbitalSpace};
use crate::free::{free_from_pdm, gamma_of, purify_free, wick_check, FreeStateSpec};
use crate::io::StateDocument;
use crate::linalg::{binary_entropy, c, max_abs_diff, real, trace_norm, CMatrix, Spectrum};
use crate::pdm::{kernel_inclusion_1pdm, one_pdm, OnePdm};
use crate::sample::{
    haar_unitary, random_free_state, random_occupations, random_parity_even_state,
    random_parity_pure_state, random_slater, random_subset, OCCUPATION_MARGIN,
};
use crate::state::{
    one_particle_mixture, paired_state, slater_density, tensor_product, DensityOperator,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Random free states drawn before refinement; at least 1.
    pub samples: usize,
    /// Sweeps of coordinate refinement.
    pub refine_steps: usize,
    pub seed: u64,
    /// Initial refinement step for occupations and rotation angles.
    pub step_scale: f64,
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            samples: 500,
            refine_steps: 200,
            seed: 42,
            step_scale: 0.1,
            tolerance: 1e-6,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Parse("samples must be at least 1".into()));
        }
        if !(self.step_scale > 0.0) || !(self.tolerance > 0.0) {
            return Err(Error::Parse(
                "step_scale and tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Which divergence a search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceFamily {
    Petz,
    Sandwiched,
}

/// A divergence `rho -> D(rho || .)` with the spectral data of `rho` cached.
struct Objective<'a> {
    rho: &'a DensityOperator,
    spectrum: Spectrum,
    family: DivergenceFamily,
    alpha: f64,
}

impl<'a> Objective<'a> {
    fn new(rho: &'a DensityOperator, family: DivergenceFamily, alpha: f64) -> Result<Self> {
        let ok = match family {
            DivergenceFamily::Petz => alpha > 0.0 && alpha <= 2.0,
            DivergenceFamily::Sandwiched => alpha >= 0.5 && alpha.is_finite(),
        };
        if !ok {
            return Err(Error::InvalidAlpha {
                alpha,
                range: match family {
                    DivergenceFamily::Petz => "(0, 2]",
                    DivergenceFamily::Sandwiched => "[1/2, inf)",
                },
            });
        }
        Ok(Self {
            rho,
            spectrum: clean_spectrum(rho.matrix()),
            family,
            alpha,
        })
    }

    fn relative_entropy(rho: &'a DensityOperator) -> Self {
        Self::new(rho, DivergenceFamily::Petz, 1.0).expect("alpha = 1 is valid")
    }

    fn eval_spectrum(&self, sb: &Spectrum) -> f64 {
        let a = self.rho.matrix();
        let v = if self.alpha == 1.0 {
            Ok(relative_entropy_spectral(&self.spectrum, a, sb))
        } else {
            match self.family {
                DivergenceFamily::Petz => renyi_spectral(self.alpha, &self.spectrum, a, sb),
                DivergenceFamily::Sandwiched => sandwiched_spectral(self.alpha, a, sb),
            }
        };
        v.map(|x| x.value()).unwrap_or(f64::INFINITY)
    }

    fn eval(&self, spec: &FreeStateSpec) -> f64 {
        self.eval_spectrum(&spec.spectrum())
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    occupations: Vec<f64>,
    orbitals: CMatrix,
}

impl Candidate {
    fn spec(&self, space: &OrbitalSpace) -> FreeStateSpec {
        FreeStateSpec::from_parts(
            space.clone(),
            self.occupations.clone(),
            self.orbitals.clone(),
        )
    }

    /// Moves one coordinate: an occupation, or a rotation of a pair of
    /// natural orbitals by a real-symmetric or imaginary-antisymmetric
    /// generator.
    fn moved(&self, coord: usize, delta: f64) -> Self {
        let d = self.occupations.len();
        let mut next = self.clone();
        if coord < d {
            let p = &mut next.occupations[coord];
            *p = (*p + delta).clamp(OCCUPATION_MARGIN, 1.0 - OCCUPATION_MARGIN);
            return next;
        }
        let r = coord - d;
        let (k, l) = pair_of(r / 2, d);
        let (s, co) = delta.sin_cos();
        let u = &mut next.orbitals;
        for i in 0..d {
            let a = self.orbitals[(i, k)];
            let b = self.orbitals[(i, l)];
            if r.is_multiple_of(2) {
                u[(i, k)] = a * co + b * c(0.0, s);
                u[(i, l)] = a * c(0.0, s) + b * co;
            } else {
                u[(i, k)] = a * co - b * s;
                u[(i, l)] = a * s + b * co;
            }
        }
        next
    }
}

fn pair_of(mut idx: usize, d: usize) -> (usize, usize) {
    for k in 0..d {
        let n = d - k - 1;
        if idx < n {
            return (k, k + 1 + idx);
        }
        idx -= n;
    }
    unreachable!("pair index out of range")
}

/// Best free state found by a search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: FreeStateSpec,
    pub value: f64,
    pub evaluations: usize,
}

fn random_search(
    space: &OrbitalSpace,
    objective: &Objective,
    cfg: &SearchConfig,
    start: Option<(Candidate, f64)>,
) -> (Candidate, f64, usize) {
    let d = space.d();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best = start;
    let mut evaluations = 0;
    for _ in 0..cfg.samples.max(1) {
        let cand = Candidate {
            orbitals: haar_unitary(d, &mut rng),
            occupations: random_occupations(d, OCCUPATION_MARGIN, &mut rng),
        };
        let v = objective.eval(&cand.spec(space));
        evaluations += 1;
        // strict comparison keeps the earliest sample on ties
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((cand, v));
        }
    }
    let (mut cur, mut cur_v) = best.expect("at least one sample");
    let coords = d * d;
    let mut step = cfg.step_scale;
    for _ in 0..cfg.refine_steps {
        let mut moved = false;
        for coord in 0..coords {
            for sign in [1.0, -1.0] {
                let cand = cur.moved(coord, sign * step);
                let v = objective.eval(&cand.spec(space));
                evaluations += 1;
                if v < cur_v {
                    cur = cand;
                    cur_v = v;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            step *= 0.5;
            if step < 1e-9 {
                break;
            }
        }
    }
    (cur, cur_v, evaluations)
}

/// Minimizes `S(rho || Gamma)` over free `Gamma` by Haar sampling followed
/// by coordinate refinement. Does not look at `Gamma_rho`.
pub fn min_relent_search(rho: &DensityOperator, cfg: &SearchConfig) -> SearchOutcome {
    let objective = Objective::relative_entropy(rho);
    let (cand, value, evaluations) = random_search(rho.space(), &objective, cfg, None);
    SearchOutcome {
        best: cand.spec(rho.space()),
        value,
        evaluations,
    }
}

/// Minimum over the diagonal free states of a regular grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridOutcome {
    pub occupations: Vec<f64>,
    pub value: f64,
    /// Spacing of the grid in each occupation.
    pub spacing: f64,
}

/// Number of grid points per occupation and their range.
pub const GRID_POINTS: usize = 200;
pub const GRID_RANGE: (f64, f64) = (0.01, 0.99);

/// Exhaustive search over diagonal free states with occupations on a
/// `GRID_POINTS`-per-axis grid in `GRID_RANGE`, for `d <= 2`. Ties keep the
/// first point in row-major order.
pub fn diagonal_grid_search(
    rho: &DensityOperator,
    family: DivergenceFamily,
    alpha: f64,
) -> Result<GridOutcome> {
    let d = rho.d();
    if d > 2 {
        return Err(Error::Capacity { d, max: 2 });
    }
    let objective = Objective::new(rho, family, alpha)?;
    let (lo, hi) = GRID_RANGE;
    let spacing = (hi - lo) / (GRID_POINTS - 1) as f64;
    let axis: Vec<f64> = (0..GRID_POINTS).map(|k| lo + spacing * k as f64).collect();
    let identity = CMatrix::identity(1 << d, 1 << d);
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut visit = |p: Vec<f64>| {
        let sb = Spectrum {
            values: crate::state::bernoulli_weights(&p),
            vectors: identity.clone(),
        };
        let v = objective.eval_spectrum(&sb);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((p, v));
        }
    };
    if d == 1 {
        for &p in &axis {
            visit(vec![p]);
        }
    } else {
        for &p1 in &axis {
            for &p2 in &axis {
                visit(vec![p1, p2]);
            }
        }
    }
    let (occupations, value) = best.expect("nonempty grid");
    Ok(GridOutcome {
        occupations,
        value,
        spacing,
    })
}

#[derive(Debug, Clone)]
pub struct RenyiSearchOutcome {
    pub best: FreeStateSpec,
    pub value: f64,
    /// Divergence at the free state with the same 1-pdm.
    pub at_own_free: DivergenceValue,
    pub improved: bool,
    /// Grid stage, run for `d <= 2`.
    pub grid: Option<GridOutcome>,
}

/// Minimizes `D_alpha(rho || Gamma)` (or the sandwiched version) over free
/// states: the diagonal grid for `d <= 2`, then sampling and refinement
/// seeded with the grid optimum. `improved` reports whether the best value
/// beats the value at `Gamma_rho` by more than `cfg.tolerance`.
pub fn renyi_min_search(
    rho: &DensityOperator,
    alpha: f64,
    family: DivergenceFamily,
    cfg: &SearchConfig,
) -> Result<RenyiSearchOutcome> {
    let objective = Objective::new(rho, family, alpha)?;
    let own = free_from_pdm(&one_pdm(rho)).spec;
    let at_own = objective.eval(&own);
    let at_own_free = if at_own.is_finite() {
        DivergenceValue::Finite(at_own)
    } else {
        DivergenceValue::Infinite
    };
    let space = rho.space();
    let d = space.d();
    let grid = if d <= 2 {
        Some(diagonal_grid_search(rho, family, alpha)?)
    } else {
        None
    };
    let start = grid.as_ref().map(|g| {
        (
            Candidate {
                occupations: g.occupations.clone(),
                orbitals: CMatrix::identity(d, d),
            },
            g.value,
        )
    });
    let (cand, value, _) = random_search(space, &objective, cfg, start);
    let improved = value < at_own - cfg.tolerance;
    Ok(RenyiSearchOutcome {
        best: cand.spec(space),
        value,
        at_own_free,
        improved,
        grid,
    })
}

/// Outcome of one checked claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub passed: bool,
    pub worst_violation: f64,
    /// Serialized offending instance; present exactly when the claim failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

struct Tally {
    claim: &'static str,
    worst: f64,
    witness: Option<String>,
}

impl Tally {
    fn new(claim: &'static str) -> Self {
        Self {
            claim,
            worst: 0.0,
            witness: None,
        }
    }

    /// Records a measured error against its tolerance.
    fn record(&mut self, error: f64, tol: f64, witness: impl FnOnce() -> serde_json::Value) {
        let bad = !(error <= tol);
        if bad || error > self.worst {
            self.worst = if error.is_nan() {
                f64::INFINITY
            } else {
                error.max(self.worst)
            };
        }
        if bad && self.witness.is_none() {
            self.witness = Some(witness().to_string());
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> serde_json::Value) {
        self.record(if ok { 0.0 } else { 1.0 }, 0.0, witness);
    }

    fn report(self) -> VerificationReport {
        VerificationReport {
            claim: self.claim.to_string(),
            passed: self.witness.is_none(),
            worst_violation: self.worst,
            witness: self.witness,
        }
    }
}

fn doc(rho: &DensityOperator) -> serde_json::Value {
    serde_json::to_value(StateDocument::from_density(rho)).expect("document serializes")
}

fn err_gap(a: Result<DivergenceValue>, b: Result<DivergenceValue>) -> f64 {
    match (a, b) {
        (Ok(x), Ok(y)) => match (x, y) {
            (DivergenceValue::Finite(x), DivergenceValue::Finite(y)) => (x - y).abs(),
            (DivergenceValue::Infinite, DivergenceValue::Infinite) => 0.0,
            _ => f64::INFINITY,
        },
        _ => f64::INFINITY,
    }
}

/// Excess of `small` over `large`, zero when `small <= large`.
fn excess(small: Result<DivergenceValue>, large: Result<DivergenceValue>) -> f64 {
    match (small, large) {
        (Ok(s), Ok(l)) => match (s, l) {
            (_, DivergenceValue::Infinite) => 0.0,
            (DivergenceValue::Infinite, _) => f64::INFINITY,
            (DivergenceValue::Finite(s), DivergenceValue::Finite(l)) => (s - l).max(0.0),
        },
        _ => f64::INFINITY,
    }
}

type Functional = fn(&DensityOperator) -> Result<DivergenceValue>;

/// Nonfreeness and the Rényi correlation functionals at `alpha` in `{1/2, 2}`.
const FUNCTIONALS: [(&str, Functional); 5] = [
    ("nonfreeness", |r| {
        nonfreeness_with(r, false).map(|x| x.nonfreeness)
    }),
    ("petz_half", |r| correlation_renyi(r, 0.5)),
    ("petz_two", |r| correlation_renyi(r, 2.0)),
    ("sandwiched_half", |r| correlation_sandwiched(r, 0.5)),
    ("sandwiched_two", |r| correlation_sandwiched(r, 2.0)),
];

fn space(d: usize) -> OrbitalSpace {
    OrbitalSpace::new(d).expect("d within limits")
}

/// Free state with some occupations pinned to 0 or 1.
fn boundary_free_spec<R: Rng>(d: usize, rng: &mut R) -> FreeStateSpec {
    let p: Vec<f64> = (0..d)
        .map(|_| match rng.random_range(0..3) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random_range(0.1..0.9),
        })
        .collect();
    FreeStateSpec::new(space(d), p, haar_unitary(d, rng)).expect("valid spec")
}

/// Random state supported inside the support of the free state `spec`.
fn state_inside_support<R: Rng>(spec: &FreeStateSpec, rng: &mut R) -> DensityOperator {
    let sp = spec.space().clone();
    let base = random_parity_even_state(&sp, rng);
    let weights = spec.weights();
    let mut m = base.matrix().clone();
    for i in 0..sp.dim() {
        for j in 0..sp.dim() {
            if weights[i] == 0.0 || weights[j] == 0.0 {
                m[(i, j)] = real(0.0);
            }
        }
    }
    let tr: f64 = (0..sp.dim()).map(|k| m[(k, k)].re).sum();
    m /= real(tr);
    let rotated = spec.fock_unitary().conjugate(&m);
    DensityOperator::new(sp, crate::linalg::hermitize(&rotated)).expect("valid state")
}

fn quadratic_log(spec: &FreeStateSpec) -> CMatrix {
    let sp = spec.space();
    let d = sp.d();
    let p = spec.occupations();
    let u = spec.orbitals();
    let constant: f64 = p.iter().map(|x| (1.0 - x).ln()).sum();
    let mut h = CMatrix::zeros(d, d);
    for k in 0..d {
        let lam = (p[k] / (1.0 - p[k])).ln();
        for i in 0..d {
            for j in 0..d {
                h[(i, j)] += u[(i, k)] * u[(j, k)].conj() * lam;
            }
        }
    }
    let mut out = CMatrix::identity(sp.dim(), sp.dim()) * real(constant);
    for i in 0..d {
        let ci = creator(i + 1, sp).expect("index");
        for j in 0..d {
            out += &ci * annihilator(j + 1, sp).expect("index") * h[(i, j)];
        }
    }
    out
}

/// Runs every randomized property check. Each claim draws from its own
/// ChaCha stream, so the reports depend only on `(seed, d_max, trials)`.
pub fn property_suite(seed: u64, d_max: usize, trials: usize) -> Vec<VerificationReport> {
    let d_max = d_max.clamp(1, 6);
    let mut reports = Vec::new();
    let mut stream = 0u64;
    let mut rng_for = || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        stream += 1;
        rng
    };

    let mut t = Tally::new("nonnegativity");
    let mut rng = rng_for();
    for _ in 0..trials {
        let rho = random_parity_even_state(&space(rng.random_range(1..=d_max)), &mut rng);
        for (_, f) in FUNCTIONALS {
            let v = f(&rho).map(|x| x.value()).unwrap_or(f64::NEG_INFINITY);
            t.record((-v).max(0.0), 1e-12, || doc(&rho));
        }
    }
    reports.push(t.report());

    let mut t = Tally::new("slater_zero");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max.min(5));
        let n = rng.random_range(0..=d);
        let rho = random_slater(&space(d), n, &mut rng);
        match nonfreeness(&rho) {
            Ok(r) => {
                t.record(r.nonfreeness.value(), 1e-8, || doc(&rho));
                t.record(r.cross_check.unwrap_or(0.0), 1e-7, || doc(&rho));
            }
            Err(_) => t.check(false, || doc(&rho)),
        }
    }
    reports.push(t.report());

    let mut t = Tally::new("entropy_difference_matches_relative_entropy");
    let mut rng = rng_for();
    for _ in 0..trials {
        let rho = random_parity_even_state(&space(rng.random_range(1..=d_max)), &mut rng);
        let direct = relative_entropy(&rho, &gamma_of(&rho));
        let diff = nonfreeness_with(&rho, false).map(|r| r.nonfreeness);
        t.record(err_gap(direct, diff), 1e-7, || doc(&rho));
    }
    reports.push(t.report());

    let mut t = Tally::new("minimum_at_own_free_state");
    let mut rng = rng_for();
    for _ in 0..trials {
        let sp = space(rng.random_range(1..=d_max));
        let rho = random_parity_even_state(&sp, &mut rng);
        let gamma = random_free_state(&sp, &mut rng).density;
        let own = nonfreeness_with(&rho, false).map(|r| r.nonfreeness);
        t.record(
            excess(own, relative_entropy(&rho, &gamma)),
            1e-9,
            || serde_json::json!({"state": doc(&rho), "free": doc(&gamma)}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("chain_rule");
    let mut rng = rng_for();
    for _ in 0..trials {
        let sp = space(rng.random_range(1..=d_max));
        let rho = random_parity_even_state(&sp, &mut rng);
        let gamma = random_free_state(&sp, &mut rng).density;
        let residual = match chain_rule_terms(&rho, &gamma).map(|c| c.status) {
            Ok(ChainStatus::Holds { residual }) | Ok(ChainStatus::Violated { residual }) => {
                residual
            }
            Ok(ChainStatus::HoldsTrivially) => 0.0,
            Err(_) => f64::INFINITY,
        };
        t.record(
            residual,
            1e-7,
            || serde_json::json!({"state": doc(&rho), "free": doc(&gamma)}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("cross_entropy_sees_only_the_pdm");
    let mut rng = rng_for();
    for _ in 0..trials {
        let sp = space(rng.random_range(1..=d_max));
        let rho = random_parity_even_state(&sp, &mut rng);
        let gamma = random_free_state(&sp, &mut rng).density;
        let gap = err_gap(
            cross_entropy(&rho, &gamma),
            cross_entropy(&gamma_of(&rho), &gamma),
        );
        t.record(
            gap,
            1e-8,
            || serde_json::json!({"state": doc(&rho), "free": doc(&gamma)}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("cross_entropy_boundary");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max);
        let sp = space(d);
        let mut p = random_occupations(d, 0.1, &mut rng);
        p[0] = 1.0;
        let spec = FreeStateSpec::new(sp.clone(), p, haar_unitary(d, &mut rng)).expect("valid");
        let gamma = spec.density();
        let rho = random_parity_even_state(&sp, &mut rng);
        let both_infinite = matches!(cross_entropy(&rho, &gamma), Ok(DivergenceValue::Infinite))
            && matches!(
                cross_entropy(&gamma_of(&rho), &gamma),
                Ok(DivergenceValue::Infinite)
            )
            && matches!(
                relative_entropy(&rho, &gamma),
                Ok(DivergenceValue::Infinite)
            );
        t.check(
            both_infinite,
            || serde_json::json!({"state": doc(&rho), "free": doc(&gamma)}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("kernel_inclusion_via_pdm");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max.min(3));
        let spec = boundary_free_spec(d, &mut rng);
        let rho = match rng.random_range(0..3) {
            0 => random_parity_even_state(spec.space(), &mut rng),
            1 => state_inside_support(&spec, &mut rng),
            _ => boundary_free_spec(d, &mut rng).density(),
        };
        let fock = crate::entropy::kernel_contained(&spec.spectrum(), rho.matrix());
        let (zero, one) = kernel_inclusion_1pdm(
            &OnePdm::new(spec.space().clone(), spec.pdm_matrix()).expect("valid"),
            &one_pdm(&rho),
            1e-8,
        );
        t.check(
            fock == (zero && one),
            || serde_json::json!({"state": doc(&rho), "free": doc(&spec.density())}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("free_entropy");
    let mut rng = rng_for();
    for _ in 0..trials {
        let f = random_free_state(&space(rng.random_range(1..=d_max)), &mut rng);
        let h: f64 = f
            .spec
            .occupations()
            .iter()
            .map(|&p| binary_entropy(p))
            .sum();
        t.record(
            (von_neumann(&f.density) - h).abs(),
            1e-9,
            || doc(&f.density),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("free_log_is_quadratic");
    let mut rng = rng_for();
    for _ in 0..trials {
        let f = random_free_state(&space(rng.random_range(1..=d_max.min(4))), &mut rng);
        let log = clean_spectrum(f.density.matrix()).apply(f64::ln);
        t.record(max_abs_diff(&log, &quadratic_log(&f.spec)), 1e-8, || {
            doc(&f.density)
        });
    }
    reports.push(t.report());

    let mut t = Tally::new("independent_occupations");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max);
        let p = random_occupations(d, OCCUPATION_MARGIN, &mut rng);
        let gamma = FreeStateSpec::diagonal(space(d), p.clone())
            .expect("valid")
            .density();
        for i in 1..=d {
            let single = restrict(&gamma, &[i]).expect("subset");
            let m = single.matrix();
            let e = (m[(0, 0)].re - (1.0 - p[i - 1])).abs()
                + (m[(1, 1)].re - p[i - 1]).abs()
                + m[(0, 1)].norm();
            t.record(e, 1e-12, || doc(&gamma));
        }
        for i in 0..d {
            for j in i + 1..d {
                let ni = crate::fock::number_operator(i + 1, gamma.space()).expect("index");
                let nj = crate::fock::number_operator(j + 1, gamma.space()).expect("index");
                let e = (gamma.expectation(&(ni * nj)).re - p[i] * p[j]).abs();
                t.record(e, 1e-12, || doc(&gamma));
            }
        }
    }
    reports.push(t.report());

    let mut t = Tally::new("sampled_free_states_satisfy_wick");
    let mut rng = rng_for();
    for _ in 0..trials {
        let f = random_free_state(&space(rng.random_range(1..=d_max)), &mut rng);
        t.record(
            wick_check(&f.density, 2, 1e-10).worst_violation,
            1e-10,
            || doc(&f.density),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("paired_state_breaks_wick");
    let pair = paired_state();
    let w = wick_check(&pair, 2, 1e-10);
    t.check(!w.passed && w.worst_violation > 0.1, || doc(&pair));
    reports.push(t.report());

    let mut t = Tally::new("free_pdm_round_trip");
    let mut rng = rng_for();
    for _ in 0..trials {
        let rho = random_parity_even_state(&space(rng.random_range(1..=d_max)), &mut rng);
        let g = one_pdm(&rho);
        let back = one_pdm(&gamma_of(&rho));
        t.record(max_abs_diff(g.matrix(), back.matrix()), 1e-10, || doc(&rho));
    }
    reports.push(t.report());

    let mut t = Tally::new("purification");
    let mut rng = rng_for();
    for _ in 0..trials {
        let n = rng.random_range(1..=d_max.min(4));
        let p = random_occupations(n, 0.0, &mut rng);
        let spec = FreeStateSpec::diagonal(space(n), p).expect("valid");
        let err = purify_free(&spec)
            .and_then(|(big, rows)| slater_density(&rows, &big))
            .and_then(|s| restrict(&s, &(1..=n).collect::<Vec<_>>()))
            .map(|sub| {
                let target =
                    free_from_pdm(&OnePdm::new(space(n), spec.pdm_matrix()).expect("valid"))
                        .density;
                trace_norm(&(sub.matrix() - target.matrix()))
            })
            .unwrap_or(f64::INFINITY);
        t.record(err, 1e-8, || doc(&spec.density()));
    }
    reports.push(t.report());

    let mut t = Tally::new("pdm_compression_under_restriction");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max);
        let rho = random_parity_even_state(&space(d), &mut rng);
        let keep = random_subset(d, &mut rng);
        let err = restrict(&rho, &keep)
            .map(|sub| max_abs_diff(one_pdm(&sub).matrix(), &one_pdm(&rho).compress(&keep)))
            .unwrap_or(f64::INFINITY);
        t.record(
            err,
            1e-12,
            || serde_json::json!({"state": doc(&rho), "keep": keep}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("pdm_covariance");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max);
        let rho = random_parity_even_state(&space(d), &mut rng);
        let u = haar_unitary(d, &mut rng);
        let uhat = basis_change_unitary(&u, rho.space()).expect("unitary");
        let moved = DensityOperator::new(rho.space().clone(), uhat.conjugate(rho.matrix()));
        let err = moved
            .map(|m| {
                let expect = &u * one_pdm(&rho).matrix() * u.adjoint();
                max_abs_diff(one_pdm(&m).matrix(), &expect)
            })
            .unwrap_or(f64::INFINITY);
        t.record(err, 1e-10, || doc(&rho));
    }
    reports.push(t.report());

    let mut t = Tally::new("fock_representation");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max.min(4));
        let sp = space(d);
        let u1 = haar_unitary(d, &mut rng);
        let u2 = haar_unitary(d, &mut rng);
        let prod = basis_change_unitary(&(&u1 * &u2), &sp)
            .expect("unitary")
            .to_dense();
        let a = basis_change_unitary(&u1, &sp).expect("unitary").to_dense();
        let b = basis_change_unitary(&u2, &sp).expect("unitary").to_dense();
        t.record(
            max_abs_diff(&prod, &(&a * &b)),
            1e-10,
            || serde_json::json!({"d": d}),
        );
        for i in 1..=d {
            let lhs = &a * creator(i, &sp).expect("index") * a.adjoint();
            let mut rhs = CMatrix::zeros(sp.dim(), sp.dim());
            for j in 1..=d {
                rhs += creator(j, &sp).expect("index") * u1[(j - 1, i - 1)];
            }
            t.record(
                max_abs_diff(&lhs, &rhs),
                1e-10,
                || serde_json::json!({"d": d}),
            );
        }
    }
    reports.push(t.report());

    let mut t = Tally::new("restriction_of_free_is_free");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max);
        let f = random_free_state(&space(d), &mut rng);
        let keep = random_subset(d, &mut rng);
        let err = restrict(&f.density, &keep)
            .and_then(|sub| {
                let compressed =
                    OnePdm::new(sub.space().clone(), one_pdm(&f.density).compress(&keep))?;
                Ok(sub.max_abs_diff(&free_from_pdm(&compressed).density))
            })
            .unwrap_or(f64::INFINITY);
        t.record(
            err,
            1e-10,
            || serde_json::json!({"state": doc(&f.density), "keep": keep}),
        );
    }
    reports.push(t.report());

    let mut t = Tally::new("monotonicity");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max.min(5));
        let rho = random_parity_pure_state(&space(d), &mut rng);
        let keep = random_subset(d, &mut rng);
        let sub = restrict(&rho, &keep).expect("subset");
        for (_, f) in FUNCTIONALS {
            t.record(
                excess(f(&sub), f(&rho)),
                1e-7,
                || serde_json::json!({"state": doc(&rho), "keep": keep}),
            );
        }
    }
    reports.push(t.report());

    let mut t = Tally::new("additivity");
    let mut rng = rng_for();
    if d_max >= 2 {
        for _ in 0..trials {
            let d1 = rng.random_range(1..d_max);
            let d2 = rng.random_range(1..=d_max - d1);
            let a = random_parity_even_state(&space(d1), &mut rng);
            let b = random_parity_even_state(&space(d2), &mut rng);
            let ab = tensor_product(&a, &b).expect("product");
            for (_, f) in FUNCTIONALS {
                let sum = match (f(&a), f(&b)) {
                    (Ok(x), Ok(y)) => Ok(DivergenceValue::Finite(x.value() + y.value())),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                };
                t.record(
                    err_gap(f(&ab), sum),
                    1e-7,
                    || serde_json::json!({"first": doc(&a), "second": doc(&b)}),
                );
            }
        }
    }
    reports.push(t.report());

    let mut t = Tally::new("basis_invariance");
    let mut rng = rng_for();
    for _ in 0..trials {
        let d = rng.random_range(1..=d_max);
        let rho = random_parity_even_state(&space(d), &mut rng);
        let u = haar_unitary(d, &mut rng);
        let uhat = basis_change_unitary(&u, rho.space()).expect("unitary");
        let moved = DensityOperator::new(
            rho.space().clone(),
            crate::linalg::hermitize(&uhat.conjugate(rho.matrix())),
        )
        .expect("valid");
        for (_, f) in FUNCTIONALS {
            t.record(err_gap(f(&moved), f(&rho)), 1e-8, || doc(&rho));
        }
    }
    reports.push(t.report());

    reports
}

/// Runs the Rényi search on `w |10><10| + (1-w) |01><01|` with `w = 2/3`
/// at sandwiched `alpha = 1/2` (expected to improve on `Gamma_rho`) and at
/// `alpha = 1` (expected not to).
pub fn counterexample_reports(cfg: &SearchConfig) -> Vec<VerificationReport> {
    let rho = one_particle_mixture(2.0 / 3.0).expect("valid weight");
    let mut out = Vec::new();
    for (claim, alpha, want) in [
        ("sandwiched_half_minimum_moves", 0.5, true),
        ("relative_entropy_minimum_stays", 1.0, false),
    ] {
        let report = match renyi_min_search(&rho, alpha, DivergenceFamily::Sandwiched, cfg) {
            Ok(r) => {
                let gap = r.at_own_free.value() - r.value;
                let passed = r.improved == want;
                VerificationReport {
                    claim: claim.to_string(),
                    passed,
                    worst_violation: if passed { 0.0 } else { gap.abs() },
                    witness: (!passed).then(|| {
                        serde_json::json!({
                            "state": doc(&rho),
                            "best_occupations": r.best.occupations(),
                            "best_value": r.value,
                            "at_own_free": r.at_own_free.value(),
                        })
                        .to_string()
                    }),
                }
            }
            Err(e) => VerificationReport {
                claim: claim.to_string(),
                passed: false,
                worst_violation: f64::INFINITY,
                witness: Some(e.to_string()),
            },
        };
        out.push(report);
    }
    out
}
