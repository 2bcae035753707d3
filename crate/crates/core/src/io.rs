//! JSON documents for states, 1-pdms, free-state specs and results.
//! Complex numbers are `[re, im]` pairs and matrices are row-major.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::OrbitalSpace;
use crate::free::FreeStateSpec;
use crate::linalg::{c, CMatrix, CVector};
use crate::pdm::OnePdm;
use crate::state::{
    gibbs_free_density, hubbard_ground_state, mixture, pure_density, slater_density,
    DensityOperator, HubbardParams, PureState,
};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL: &str = concat!("fermifree ", env!("CARGO_PKG_VERSION"));

pub type Complex = [f64; 2];
pub type ComplexRows = Vec<Vec<Complex>>;

fn to_pairs(v: &CVector) -> Vec<Complex> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn to_rows(m: &CMatrix) -> ComplexRows {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|k| [m[(r, k)].re, m[(r, k)].im])
                .collect()
        })
        .collect()
}

fn from_pairs(v: &[Complex]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(|p| c(p[0], p[1])))
}

fn from_rows(rows: &ComplexRows, nrows: usize, ncols: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse(format!(
            "{what} must be a {nrows} x {ncols} matrix"
        )));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |r, k| {
        c(rows[r][k][0], rows[r][k][1])
    }))
}

fn check_version(v: u32) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Parse(format!("unsupported document version {v}")))
    }
}

fn space_for(d: usize, labels: &Option<Vec<String>>, d_max: usize) -> Result<OrbitalSpace> {
    let space = OrbitalSpace::with_limit(d, d_max)?;
    match labels {
        Some(l) => space.with_labels(l.clone()),
        None => Ok(space),
    }
}

fn labels_of(space: &OrbitalSpace) -> Option<Vec<String>> {
    space.labels().map(<[String]>::to_vec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub version: u32,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(flatten)]
    pub payload: StatePayload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatePayload {
    /// Fock-space amplitudes indexed by occupation bits.
    Pure {
        amplitudes: Vec<Complex>,
    },
    Mixture {
        components: Vec<MixtureComponent>,
    },
    /// Diagonal free state with the given occupations.
    Gibbs {
        occupations: Vec<f64>,
    },
    /// Orthonormal orbitals as rows, `n x d`.
    Slater {
        orbitals: ComplexRows,
    },
    Density {
        matrix: ComplexRows,
    },
    Hubbard {
        sites: usize,
        t: f64,
        u: f64,
        n_up: usize,
        n_down: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    pub state: StateDocument,
}

impl StateDocument {
    pub fn new(d: usize, payload: StatePayload) -> Self {
        Self {
            version: FORMAT_VERSION,
            d,
            labels: None,
            payload,
        }
    }

    /// Dense `density` document for any state.
    pub fn from_density(rho: &DensityOperator) -> Self {
        Self {
            version: FORMAT_VERSION,
            d: rho.d(),
            labels: labels_of(rho.space()),
            payload: StatePayload::Density {
                matrix: to_rows(rho.matrix()),
            },
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            version: FORMAT_VERSION,
            d: psi.space().d(),
            labels: labels_of(psi.space()),
            payload: StatePayload::Pure {
                amplitudes: to_pairs(psi.amplitudes()),
            },
        }
    }

    /// Builds and validates the density operator, allowing up to `d_max`
    /// orbitals.
    pub fn to_density(&self, d_max: usize) -> Result<DensityOperator> {
        check_version(self.version)?;
        let space = space_for(self.d, &self.labels, d_max)?;
        let dim = space.dim();
        match &self.payload {
            StatePayload::Pure { amplitudes } => {
                if amplitudes.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: amplitudes.len(),
                    });
                }
                Ok(pure_density(&PureState::new(
                    space,
                    from_pairs(amplitudes),
                )?))
            }
            StatePayload::Mixture { components } => {
                let parts = components
                    .iter()
                    .map(|m| {
                        if m.state.d != self.d {
                            return Err(Error::DimensionMismatch {
                                expected: self.d,
                                got: m.state.d,
                            });
                        }
                        let mut doc = m.state.clone();
                        if doc.labels.is_none() {
                            doc.labels = self.labels.clone();
                        }
                        Ok((m.weight, doc.to_density(d_max)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                mixture(&parts)
            }
            StatePayload::Gibbs { occupations } => gibbs_free_density(occupations, &space),
            StatePayload::Slater { orbitals } => {
                let n = orbitals.len();
                slater_density(&from_rows(orbitals, n, self.d, "slater orbitals")?, &space)
            }
            StatePayload::Density { matrix } => {
                DensityOperator::new(space, from_rows(matrix, dim, dim, "density matrix")?)
            }
            StatePayload::Hubbard {
                sites,
                t,
                u,
                n_up,
                n_down,
            } => {
                if 2 * sites != self.d {
                    return Err(Error::DimensionMismatch {
                        expected: 2 * sites,
                        got: self.d,
                    });
                }
                let rho =
                    hubbard_ground_state(&HubbardParams::new(*sites, *t, *u, *n_up, *n_down))?;
                match &self.labels {
                    Some(_) => DensityOperator::new(space, rho.into_matrix()),
                    None => Ok(rho),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdmDocument {
    pub version: u32,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub gamma: ComplexRows,
}

impl PdmDocument {
    pub fn from_pdm(g: &OnePdm) -> Self {
        Self {
            version: FORMAT_VERSION,
            d: g.space().d(),
            labels: labels_of(g.space()),
            gamma: to_rows(g.matrix()),
        }
    }

    pub fn to_pdm(&self, d_max: usize) -> Result<OnePdm> {
        check_version(self.version)?;
        let space = space_for(self.d, &self.labels, d_max)?;
        OnePdm::new(space, from_rows(&self.gamma, self.d, self.d, "gamma")?)
    }
}

/// Free state by occupations and natural orbitals; `orbitals` is the
/// row-major `d x d` unitary whose columns are the natural orbitals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeSpecDocument {
    pub version: u32,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub occupations: Vec<f64>,
    pub orbitals: ComplexRows,
}

impl FreeSpecDocument {
    pub fn from_spec(spec: &FreeStateSpec) -> Self {
        Self {
            version: FORMAT_VERSION,
            d: spec.space().d(),
            labels: labels_of(spec.space()),
            occupations: spec.occupations().to_vec(),
            orbitals: to_rows(spec.orbitals()),
        }
    }

    pub fn to_spec(&self, d_max: usize) -> Result<FreeStateSpec> {
        check_version(self.version)?;
        let space = space_for(self.d, &self.labels, d_max)?;
        let u = from_rows(&self.orbitals, self.d, self.d, "orbitals")?;
        FreeStateSpec::new(space, self.occupations.clone(), u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Nats,
    Bits,
}

/// Output of every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub version: u32,
    pub tool: String,
    pub quantity: String,
    /// Echo of the inputs (file names, parameters).
    pub input: serde_json::Value,
    /// A number, `"+inf"`, or a structured report.
    pub value: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Units>,
    /// Tolerances, seeds and limits in effect.
    pub config: serde_json::Value,
}

impl ResultDocument {
    pub fn new(quantity: &str, input: serde_json::Value, value: serde_json::Value) -> Self {
        Self {
            version: FORMAT_VERSION,
            tool: TOOL.to_string(),
            quantity: quantity.to_string(),
            input,
            value,
            units: None,
            config: serde_json::Value::Object(Default::default()),
        }
    }

    pub fn with_units(mut self, units: Units) -> Self {
        self.units = Some(units);
        self
    }

    pub fn with_config(mut self, config: serde_json::Value) -> Self {
        self.config = config;
        self
    }
}

/// Reads a file, or standard input when `path` is `-`.
pub fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Io(format!("{path}: {e}")))
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

pub fn load_state(path: &str, d_max: usize) -> Result<DensityOperator> {
    parse::<StateDocument>(&read_text(path)?)?.to_density(d_max)
}

pub fn load_pdm(path: &str, d_max: usize) -> Result<OnePdm> {
    parse::<PdmDocument>(&read_text(path)?)?.to_pdm(d_max)
}

pub fn load_free_spec(path: &str, d_max: usize) -> Result<FreeStateSpec> {
    parse::<FreeSpecDocument>(&read_text(path)?)?.to_spec(d_max)
}

pub fn save<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
