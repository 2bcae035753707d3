//! Spectral entropy functionals in nats: von Neumann entropy, relative
//! entropy with kernel conventions, Petz Rényi and sandwiched Rényi
//! divergences.
//!
//! Eigenvalues below [`KERNEL_TOL`] are treated as exact zeros. A kernel of
//! `B` counts as contained in the kernel of `A` when `A` puts less than
//! [`OVERLAP_TOL`] weight on it.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix, Spectrum};
use crate::state::DensityOperator;

pub const KERNEL_TOL: f64 = 1e-12;
pub const OVERLAP_TOL: f64 = 1e-10;
/// Negative values down to this magnitude are float noise and clamp to 0.
pub const NEG_CLAMP: f64 = 1e-9;

/// A divergence in nats: a nonnegative float or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceValue {
    Finite(f64),
    Infinite,
}

impl DivergenceValue {
    /// Clamps float noise in `[-NEG_CLAMP, 0)` to zero; more negative
    /// values are reported as an inconsistency.
    pub fn from_raw(x: f64) -> Result<Self> {
        if x.is_nan() {
            return Err(Error::Inconsistency("divergence evaluated to NaN".into()));
        }
        if x == f64::INFINITY {
            return Ok(Self::Infinite);
        }
        if x < -NEG_CLAMP {
            return Err(Error::Inconsistency(format!(
                "divergence evaluated to {x:.3e} < 0"
            )));
        }
        Ok(Self::Finite(x.max(0.0)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// The value as `f64`, with `+inf` for [`DivergenceValue::Infinite`].
    pub fn value(&self) -> f64 {
        match *self {
            Self::Finite(x) => x,
            Self::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Self::Finite(x) => Some(x),
            Self::Infinite => None,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            Self::Finite(x) => Self::Finite(x * factor),
            Self::Infinite => Self::Infinite,
        }
    }

    pub fn to_bits_unit(&self) -> Self {
        self.scaled(1.0 / std::f64::consts::LN_2)
    }
}

impl fmt::Display for DivergenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{x}"),
            Self::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for DivergenceValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(x) => s.serialize_f64(*x),
            Self::Infinite => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for DivergenceValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Self::Finite(x)),
            Raw::Str(s) if s == "+inf" => Ok(Self::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"+inf\", got {s:?}"
            ))),
        }
    }
}

/// Spectrum with eigenvalues below [`KERNEL_TOL`] set to exactly zero.
pub fn clean_spectrum(m: &CMatrix) -> Spectrum {
    let mut s = eigh(m);
    for v in s.values.iter_mut() {
        if *v < KERNEL_TOL {
            *v = 0.0;
        }
    }
    s
}

fn entropy_of(s: &Spectrum) -> f64 {
    s.values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.ln())
        .sum::<f64>()
        .max(0.0)
}

/// `S(rho) = -Tr(rho ln rho)`.
pub fn von_neumann(rho: &DensityOperator) -> f64 {
    entropy_of(&clean_spectrum(rho.matrix()))
}

/// `|<phi_i, psi_j>|^2` for the eigenbases of two spectra.
fn overlap_weights(a: &Spectrum, b: &Spectrum) -> CMatrix {
    a.vectors.adjoint() * &b.vectors
}

/// Whether `ker B ⊆ ker A`, tested as `Tr(A P_{ker B}) < OVERLAP_TOL`.
pub fn kernel_contained(b: &Spectrum, a: &CMatrix) -> bool {
    let mut weight = 0.0;
    for (j, &q) in b.values.iter().enumerate() {
        if q == 0.0 {
            let v = b.vectors.column(j);
            weight += (v.adjoint() * a * v)[(0, 0)].re;
        }
    }
    weight < OVERLAP_TOL
}

/// Relative entropy from precomputed clean spectra, by the double sum
/// `sum_ij |<phi_i,psi_j>|^2 (p_i ln p_i - p_i ln q_j + q_j - p_i)`.
/// Returns `+inf` iff `ker B` is not inside `ker A`.
pub fn relative_entropy_spectral(
    a: &Spectrum,
    a_matrix: &CMatrix,
    b: &Spectrum,
) -> DivergenceValue {
    if !kernel_contained(b, a_matrix) {
        return DivergenceValue::Infinite;
    }
    let ov = overlap_weights(a, b);
    let mut total = 0.0;
    for (i, &p) in a.values.iter().enumerate() {
        for (j, &q) in b.values.iter().enumerate() {
            let w = ov[(i, j)].norm_sqr();
            let term = if p == 0.0 {
                q
            } else if q == 0.0 {
                // vanishing overlap once the kernel inclusion holds
                continue;
            } else {
                p * p.ln() - p * q.ln() + q - p
            };
            total += w * term;
        }
    }
    DivergenceValue::Finite(total.max(0.0))
}

/// `S(A || B)` by the double-sum definition.
pub fn relative_entropy(a: &DensityOperator, b: &DensityOperator) -> Result<DivergenceValue> {
    a.same_space(b)?;
    let sa = clean_spectrum(a.matrix());
    let sb = clean_spectrum(b.matrix());
    Ok(relative_entropy_spectral(&sa, a.matrix(), &sb))
}

/// `-Tr(A ln B)`, `+inf` when `ker B` is not inside `ker A`.
pub fn cross_entropy(a: &DensityOperator, b: &DensityOperator) -> Result<DivergenceValue> {
    a.same_space(b)?;
    let sb = clean_spectrum(b.matrix());
    Ok(cross_entropy_spectral(a.matrix(), &sb))
}

pub(crate) fn cross_entropy_spectral(a: &CMatrix, b: &Spectrum) -> DivergenceValue {
    if !kernel_contained(b, a) {
        return DivergenceValue::Infinite;
    }
    let mut total = 0.0;
    for (j, &q) in b.values.iter().enumerate() {
        if q > 0.0 {
            let v = b.vectors.column(j);
            let w = (v.adjoint() * a * v)[(0, 0)].re;
            total -= w * q.ln();
        }
    }
    DivergenceValue::Finite(total)
}

/// `-Tr(A ln B) - S(A)`; agrees with [`relative_entropy`] at finite dimension.
pub fn relative_entropy_fast(a: &DensityOperator, b: &DensityOperator) -> Result<DivergenceValue> {
    match cross_entropy(a, b)? {
        DivergenceValue::Infinite => Ok(DivergenceValue::Infinite),
        DivergenceValue::Finite(x) => DivergenceValue::from_raw(x - von_neumann(a)),
    }
}

pub(crate) fn check_petz_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 && alpha != 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha {
            alpha,
            range: "(0, 1) ∪ (1, 2]",
        })
    }
}

/// Below this, `Tr rho^a sigma^(1-a)` counts as zero (orthogonal supports).
const ZERO_QUASI: f64 = 1e-15;

/// `D_a(rho||sigma) = ln Tr(rho^a sigma^(1-a)) / (a - 1)` for `a` in
/// `(0, 1) ∪ (1, 2]`. For `a > 1` the negative power acts on the support of
/// `sigma` and the value is `+inf` unless `ker sigma ⊆ ker rho`; for `a < 1`
/// it is `+inf` exactly when the supports are orthogonal.
pub fn renyi_divergence(
    alpha: f64,
    rho: &DensityOperator,
    sigma: &DensityOperator,
) -> Result<DivergenceValue> {
    check_petz_alpha(alpha)?;
    rho.same_space(sigma)?;
    let sa = clean_spectrum(rho.matrix());
    let sb = clean_spectrum(sigma.matrix());
    renyi_spectral(alpha, &sa, rho.matrix(), &sb)
}

pub(crate) fn renyi_spectral(
    alpha: f64,
    sa: &Spectrum,
    a: &CMatrix,
    sb: &Spectrum,
) -> Result<DivergenceValue> {
    if alpha > 1.0 && !kernel_contained(sb, a) {
        return Ok(DivergenceValue::Infinite);
    }
    let ov = overlap_weights(sa, sb);
    let mut quasi = 0.0;
    for (i, &p) in sa.values.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let pa = p.powf(alpha);
        for (j, &q) in sb.values.iter().enumerate() {
            if q == 0.0 {
                continue;
            }
            quasi += ov[(i, j)].norm_sqr() * pa * q.powf(1.0 - alpha);
        }
    }
    if quasi <= ZERO_QUASI {
        return Ok(DivergenceValue::Infinite);
    }
    DivergenceValue::from_raw(quasi.ln() / (alpha - 1.0))
}

pub(crate) fn check_sandwiched_alpha(alpha: f64) -> Result<()> {
    if alpha >= 0.5 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidAlpha {
            alpha,
            range: "[1/2, inf)",
        })
    }
}

/// Sandwiched divergence
/// `ln Tr((sigma^s rho sigma^s)^a) / (a - 1)`, `s = (1-a)/(2a)`, for `a >= 1/2`.
/// `a = 1` is the relative entropy.
pub fn sandwiched_renyi(
    alpha: f64,
    rho: &DensityOperator,
    sigma: &DensityOperator,
) -> Result<DivergenceValue> {
    check_sandwiched_alpha(alpha)?;
    rho.same_space(sigma)?;
    if alpha == 1.0 {
        return relative_entropy(rho, sigma);
    }
    let sb = clean_spectrum(sigma.matrix());
    sandwiched_spectral(alpha, rho.matrix(), &sb)
}

pub(crate) fn sandwiched_spectral(
    alpha: f64,
    rho: &CMatrix,
    sb: &Spectrum,
) -> Result<DivergenceValue> {
    if alpha > 1.0 && !kernel_contained(sb, rho) {
        return Ok(DivergenceValue::Infinite);
    }
    let s = (1.0 - alpha) / (2.0 * alpha);
    let pow = sb.apply(|q| if q > 0.0 { q.powf(s) } else { 0.0 });
    let inner = &pow * rho * &pow;
    let quasi: f64 = eigh(&inner)
        .values
        .iter()
        .filter(|&&v| v >= KERNEL_TOL)
        .map(|v| v.powf(alpha))
        .sum();
    if quasi <= ZERO_QUASI {
        return Ok(DivergenceValue::Infinite);
    }
    DivergenceValue::from_raw(quasi.ln() / (alpha - 1.0))
}
