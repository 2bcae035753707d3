//! Nonfreeness, the Rényi correlation functionals, fermionic restriction to
//! an orbital subset, and the relative-entropy chain rule through
//! `Gamma_rho`.

use serde::{Deserialize, Serialize};

use crate::entropy::{
    check_petz_alpha, check_sandwiched_alpha, clean_spectrum, relative_entropy,
    relative_entropy_spectral, renyi_spectral, sandwiched_spectral, von_neumann, DivergenceValue,
};
use crate::error::{Error, Result};
use crate::fock::{split_index, FockMatrix, OccupationList, OrbitalSpace};
use crate::free::{free_from_pdm, wick_check};
use crate::linalg::{binary_entropy, Spectrum};
use crate::pdm::{natural_spectrum, one_pdm};
use crate::state::DensityOperator;

/// Allowed disagreement between the entropy-difference and double-sum routes.
pub const CROSS_CHECK_TOL: f64 = 1e-7;
/// Negative nonfreeness below this is a hard error rather than noise.
pub const NEGATIVE_HARD_LIMIT: f64 = 1e-7;
/// Wick tolerance used to certify a reference state as free.
pub const FREE_CHECK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub nonfreeness: DivergenceValue,
    /// Natural occupation numbers, descending.
    pub occupations: Vec<f64>,
    pub entropy_state: f64,
    pub entropy_free: f64,
    /// `|S(rho || Gamma_rho) - (S(Gamma_rho) - S(rho))|` when evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<f64>,
}

impl CorrelationReport {
    /// Same report with every entropy converted from nats to bits.
    pub fn in_bits(&self) -> Self {
        let k = 1.0 / std::f64::consts::LN_2;
        Self {
            nonfreeness: self.nonfreeness.scaled(k),
            occupations: self.occupations.clone(),
            entropy_state: self.entropy_state * k,
            entropy_free: self.entropy_free * k,
            cross_check: self.cross_check.map(|x| x * k),
        }
    }
}

/// Nonfreeness `S(Gamma_rho) - S(rho)`, cross-checked against the double-sum
/// relative entropy `S(rho || Gamma_rho)`.
pub fn nonfreeness(rho: &DensityOperator) -> Result<CorrelationReport> {
    nonfreeness_with(rho, true)
}

/// Like [`nonfreeness`]; `cross_check = false` skips building `Gamma_rho`.
pub fn nonfreeness_with(rho: &DensityOperator, cross_check: bool) -> Result<CorrelationReport> {
    let occupations = natural_spectrum(&one_pdm(rho)).occupations;
    let entropy_free: f64 = occupations.iter().map(|&p| binary_entropy(p)).sum();
    let entropy_state = von_neumann(rho);
    let diff = entropy_free - entropy_state;
    if diff < -NEGATIVE_HARD_LIMIT {
        return Err(Error::Inconsistency(format!(
            "S(Gamma) - S(rho) = {diff:.3e} is negative"
        )));
    }
    let value = diff.max(0.0);
    let cross = if cross_check {
        let own = own_free_spectrum(rho);
        let direct = relative_entropy_spectral(&clean_spectrum(rho.matrix()), rho.matrix(), &own);
        let gap = (direct.value() - value).abs();
        if !(gap <= CROSS_CHECK_TOL) {
            return Err(Error::Inconsistency(format!(
                "relative-entropy cross-check differs by {gap:.3e}"
            )));
        }
        Some(gap)
    } else {
        None
    };
    Ok(CorrelationReport {
        nonfreeness: DivergenceValue::Finite(value),
        occupations,
        entropy_state,
        entropy_free,
        cross_check: cross,
    })
}

/// `D_alpha(rho || Gamma_rho)`; `alpha = 1` gives the nonfreeness.
pub fn correlation_renyi(rho: &DensityOperator, alpha: f64) -> Result<DivergenceValue> {
    if alpha == 1.0 {
        return Ok(nonfreeness_with(rho, false)?.nonfreeness);
    }
    check_petz_alpha(alpha)?;
    let own = own_free_spectrum(rho);
    renyi_spectral(alpha, &clean_spectrum(rho.matrix()), rho.matrix(), &own)
}

/// Sandwiched `D~_alpha(rho || Gamma_rho)`; `alpha = 1` gives the nonfreeness.
pub fn correlation_sandwiched(rho: &DensityOperator, alpha: f64) -> Result<DivergenceValue> {
    if alpha == 1.0 {
        return Ok(nonfreeness_with(rho, false)?.nonfreeness);
    }
    check_sandwiched_alpha(alpha)?;
    sandwiched_spectral(alpha, rho.matrix(), &own_free_spectrum(rho))
}

/// Eigen-data of `Gamma_rho` from its natural orbitals, so that small
/// product weights are not lost to a dense eigensolve.
fn own_free_spectrum(rho: &DensityOperator) -> Spectrum {
    free_from_pdm(&one_pdm(rho)).spec.spectrum()
}

/// Normalizes a 1-based orbital subset: sorted, unique, within `1..=d`.
pub fn normalize_subset(keep: &[usize], d: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidSubset("empty subset".into()));
    }
    let mut s = keep.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubset(format!(
            "duplicate orbital in {keep:?}"
        )));
    }
    if s[0] == 0 || s[s.len() - 1] > d {
        return Err(Error::InvalidSubset(format!("{keep:?} not within 1..={d}")));
    }
    Ok(s)
}

/// Substate on the orbitals `keep` (1-based): the kept orbitals are moved
/// to the front by a signed permutation of the Fock basis and the remaining
/// factor is traced out.
pub fn restrict(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let d = rho.d();
    let keep = normalize_subset(keep, d)?;
    let d1 = keep.len();
    let d2 = d - d1;
    let mut space = OrbitalSpace::with_limit(d1, d)?;
    if let Some(labels) = rho.space().labels() {
        space = space.with_labels(keep.iter().map(|&i| labels[i - 1].clone()).collect())?;
    }
    let dim1 = 1usize << d1;
    let dim2 = 1usize << d2;
    // table[n2][n1] = (full index, sign)
    let mut table = vec![vec![(0usize, 0.0f64); dim1]; dim2];
    for b in 0..rho.dim() {
        let (n1, n2, s) = split_index(OccupationList::new(b), &keep, d);
        table[n2.bits][n1.bits] = (b, s);
    }
    let m = rho.matrix();
    let mut out = FockMatrix::zeros(dim1, dim1);
    for row in &table {
        for r in 0..dim1 {
            let (br, sr) = row[r];
            for c in 0..dim1 {
                let (bc, sc) = row[c];
                out[(r, c)] += m[(br, bc)] * (sr * sc);
            }
        }
    }
    Ok(DensityOperator::from_trusted(space, out))
}

/// How the chain-rule identity was settled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ChainStatus {
    /// All three terms finite; `residual = |first + second - third|`.
    Holds { residual: f64 },
    /// At least one term infinite, the identity holds in extended reals.
    HoldsTrivially,
    /// Terms finite but the residual exceeded the tolerance.
    Violated { residual: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRule {
    /// `S(rho || Gamma_rho)`
    pub to_own_free: DivergenceValue,
    /// `S(Gamma_rho || Gamma)`
    pub free_to_reference: DivergenceValue,
    /// `S(rho || Gamma)`
    pub to_reference: DivergenceValue,
    pub status: ChainStatus,
}

/// Evaluates `S(rho||Gamma_rho) + S(Gamma_rho||Gamma) = S(rho||Gamma)` for a
/// free reference `Gamma`.
pub fn chain_rule_terms(rho: &DensityOperator, reference: &DensityOperator) -> Result<ChainRule> {
    rho.same_space(reference)?;
    let wick = wick_check(reference, 2, FREE_CHECK_TOL);
    if !wick.passed {
        return Err(Error::NotFree(wick.worst_violation));
    }
    let own = free_from_pdm(&one_pdm(rho)).density;
    let a = relative_entropy(rho, &own)?;
    let b = relative_entropy(&own, reference)?;
    let c = relative_entropy(rho, reference)?;
    let status = match (a, b, c) {
        (DivergenceValue::Finite(x), DivergenceValue::Finite(y), DivergenceValue::Finite(z)) => {
            let residual = (x + y - z).abs();
            if residual <= CROSS_CHECK_TOL {
                ChainStatus::Holds { residual }
            } else {
                ChainStatus::Violated { residual }
            }
        }
        _ => ChainStatus::HoldsTrivially,
    };
    Ok(ChainRule {
        to_own_free: a,
        free_to_reference: b,
        to_reference: c,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::FreeStateSpec;
    use crate::linalg::{max_abs_diff, real, CVector};
    use crate::state::{
        gibbs_free_density, mixture, pure_density, slater_density, tensor_product, PureState,
    };
    use std::f64::consts::LN_2;

    fn sp(d: usize) -> OrbitalSpace {
        OrbitalSpace::new(d).unwrap()
    }

    fn basis(d: usize, bits: usize) -> DensityOperator {
        pure_density(&PureState::basis(sp(d), bits).unwrap())
    }

    fn split_particle() -> DensityOperator {
        mixture(&[(2.0 / 3.0, basis(2, 1)), (1.0 / 3.0, basis(2, 2))]).unwrap()
    }

    fn pair() -> DensityOperator {
        let mut v = CVector::zeros(16);
        let s = 0.5f64.sqrt();
        v[0b0011] = real(s);
        v[0b1100] = real(s);
        pure_density(&PureState::new(sp(4), v).unwrap())
    }

    #[test]
    fn slater_has_zero_nonfreeness() {
        let s = 0.5f64.sqrt();
        let rows = crate::linalg::CMatrix::from_row_slice(1, 3, &[real(s), real(0.0), real(s)]);
        let r = nonfreeness(&slater_density(&rows, &sp(3)).unwrap()).unwrap();
        assert!(r.nonfreeness.value() < 1e-10);
    }

    #[test]
    fn split_particle_and_pair_values() {
        let r = nonfreeness(&split_particle()).unwrap();
        let h = binary_entropy(2.0 / 3.0);
        assert!((r.nonfreeness.value() - h).abs() < 1e-12);
        assert!((r.entropy_free - 2.0 * h).abs() < 1e-12);
        assert!(r.cross_check.unwrap() < 1e-10);

        let r = nonfreeness(&pair()).unwrap();
        assert!((r.nonfreeness.value() - 4.0 * LN_2).abs() < 1e-10);
        assert!((r.in_bits().nonfreeness.value() - 4.0).abs() < 1e-10);
    }

    #[test]
    fn pair_restriction() {
        let sub = restrict(&pair(), &[1, 2]).unwrap();
        let mut expect = FockMatrix::zeros(4, 4);
        expect[(0, 0)] = real(0.5);
        expect[(3, 3)] = real(0.5);
        assert!(max_abs_diff(sub.matrix(), &expect) < 1e-15);
        let v = nonfreeness(&sub).unwrap().nonfreeness.value();
        assert!((v - LN_2).abs() < 1e-10);
    }

    #[test]
    fn restriction_of_product_is_marginal() {
        let a = split_particle();
        let b = gibbs_free_density(&[0.3], &sp(1)).unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        assert!(restrict(&ab, &[1, 2]).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(restrict(&ab, &[3]).unwrap().max_abs_diff(&b) < 1e-15);
        assert!(restrict(&ab, &[1, 2, 3]).unwrap().max_abs_diff(&ab) < 1e-15);
    }

    #[test]
    fn restriction_sign_on_non_prefix_subset() {
        // (|10> + |01>)/sqrt 2 on two orbitals; keeping orbital 2 moves it
        // past orbital 1, which only matters for doubly occupied terms.
        let mut v = CVector::zeros(8);
        let s = 0.5f64.sqrt();
        v[0b011] = real(s);
        v[0b110] = real(s);
        let rho = pure_density(&PureState::new(sp(3), v).unwrap());
        let sub = restrict(&rho, &[1, 3]).unwrap();
        // coherence between |10> (orbital 1) and |01> (orbital 3), orbital 2
        // occupied in both: moving orbital 3 past 2 costs a sign, 1 does not.
        assert!((sub.matrix()[(1, 2)].re + 0.5).abs() < 1e-15);
        let g = one_pdm(&rho);
        let gs = one_pdm(&sub);
        let comp = g.compress(&[1, 3]);
        assert!(max_abs_diff(gs.matrix(), &comp) < 1e-15);
    }

    #[test]
    fn restrict_rejects_bad_subsets() {
        assert!(restrict(&split_particle(), &[]).is_err());
        assert!(restrict(&split_particle(), &[3]).is_err());
        assert!(restrict(&split_particle(), &[1, 1]).is_err());
        assert!(restrict(&split_particle(), &[0]).is_err());
    }

    #[test]
    fn renyi_functionals() {
        let free = gibbs_free_density(&[0.2, 0.6], &sp(2)).unwrap();
        for alpha in [0.5, 2.0] {
            assert!(correlation_renyi(&free, alpha).unwrap().value() < 1e-10);
            assert!(correlation_sandwiched(&free, alpha).unwrap().value() < 1e-10);
        }
        let n = nonfreeness(&split_particle()).unwrap().nonfreeness.value();
        assert!((correlation_renyi(&split_particle(), 1.0).unwrap().value() - n).abs() < 1e-12);
        assert!(
            (correlation_sandwiched(&split_particle(), 1.0)
                .unwrap()
                .value()
                - n)
                .abs()
                < 1e-12
        );
        let half = correlation_sandwiched(&split_particle(), 0.5).unwrap();
        assert!(half.is_finite() && half.value() > 0.0);
    }

    #[test]
    fn chain_rule_cases() {
        let rho = split_particle();
        let own = crate::free::gamma_of(&rho);
        let c = chain_rule_terms(&rho, &own).unwrap();
        assert!(c.free_to_reference.value() < 1e-12);

        let reference = gibbs_free_density(&[0.5, 0.5], &sp(2)).unwrap();
        let c = chain_rule_terms(&rho, &reference).unwrap();
        assert!(matches!(c.status, ChainStatus::Holds { .. }), "{c:?}");
        assert!(c.to_own_free.value() <= c.to_reference.value());

        let boundary = FreeStateSpec::diagonal(sp(2), vec![1.0, 0.5])
            .unwrap()
            .density();
        let c = chain_rule_terms(&rho, &boundary).unwrap();
        assert_eq!(c.to_reference, DivergenceValue::Infinite);
        assert_eq!(c.status, ChainStatus::HoldsTrivially);

        assert!(matches!(
            chain_rule_terms(&rho, &pair_on(2)),
            Err(Error::NotFree(_))
        ));
    }

    fn pair_on(d: usize) -> DensityOperator {
        let mut v = CVector::zeros(1 << d);
        let s = 0.5f64.sqrt();
        v[0] = real(s);
        v[(1 << d) - 1] = real(s);
        pure_density(&PureState::new(sp(d), v).unwrap())
    }
}
