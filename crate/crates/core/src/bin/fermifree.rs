use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fermifree::correlation::{
    correlation_renyi, correlation_sandwiched, nonfreeness_with, restrict, CROSS_CHECK_TOL,
};
use fermifree::error::{Error, Result};
use fermifree::fock::{DEFAULT_D_MAX, HARD_D_MAX};
use fermifree::free::{free_from_pdm, purify_free};
use fermifree::io::{
    load_free_spec, load_pdm, load_state, to_json, FreeSpecDocument, PdmDocument, ResultDocument,
    StateDocument, StatePayload, Units,
};
use fermifree::pdm::{natural_spectrum, one_pdm};
use fermifree::state::{hubbard_ground_state, HubbardParams};
use fermifree::verify::{counterexample_reports, property_suite, SearchConfig};

const DMAX_VAR: &str = "FERMIFREE_DMAX";

#[derive(Parser)]
#[command(
    name = "fermifree",
    version,
    about = "Nonfreeness of many-fermion states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nonfreeness S(rho || Gamma_rho) of a state file ("-" reads stdin).
    Nonfreeness {
        file: String,
        #[arg(long)]
        bits: bool,
        /// Also evaluate the relative entropy directly and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Rényi distance to the free state with the same 1-pdm.
    Renyi {
        file: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        sandwiched: bool,
        #[arg(long)]
        bits: bool,
    },
    /// One-particle density matrix and natural occupations.
    Pdm { file: String },
    /// Substate on a subset of orbitals, e.g. --keep 1,3,4.
    Restrict {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
    },
    /// Free state with a given 1-pdm.
    FreeFromPdm { file: String },
    /// Slater determinant on twice as many orbitals restricting to a free state.
    Purify { file: String },
    /// Randomized property suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Also run the Rényi minimizer search on the built-in mixture state.
        #[arg(long)]
        counterexample: bool,
    },
    /// Nonfreeness of Hubbard chain ground states.
    DemoHubbard {
        #[arg(long, default_value_t = 2)]
        sites: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Interaction strengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        u: Vec<f64>,
        #[arg(long)]
        nup: Option<usize>,
        #[arg(long)]
        ndown: Option<usize>,
        /// Use the grid 0,1,2,4,8 when no --u is given.
        #[arg(long)]
        sweep: bool,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Verification(e.to_string())
        }
    }
}

fn d_max() -> Result<usize> {
    match std::env::var(DMAX_VAR) {
        Err(_) => Ok(DEFAULT_D_MAX),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(v) if (1..=HARD_D_MAX).contains(&v) => Ok(v),
            _ => Err(Error::Parse(format!(
                "{DMAX_VAR}={s:?} is not an integer in 1..={HARD_D_MAX}"
            ))),
        },
    }
}

fn units(bits: bool) -> Units {
    if bits {
        Units::Bits
    } else {
        Units::Nats
    }
}

fn run(cli: Cli) -> std::result::Result<(ResultDocument, bool), Failure> {
    let dm = d_max()?;
    let base = json!({ "d_max": dm });
    let doc = match cli.command {
        Command::Nonfreeness {
            file,
            bits,
            cross_check,
        } => {
            let rho = load_state(&file, dm)?;
            let report = nonfreeness_with(&rho, cross_check)?;
            let report = if bits { report.in_bits() } else { report };
            ResultDocument::new("nonfreeness", json!({ "file": file }), json!(report))
                .with_units(units(bits))
                .with_config(json!({ "d_max": dm, "cross_check": cross_check, "cross_check_tol": CROSS_CHECK_TOL }))
        }
        Command::Renyi {
            file,
            alpha,
            sandwiched,
            bits,
        } => {
            let rho = load_state(&file, dm)?;
            let v = if sandwiched {
                correlation_sandwiched(&rho, alpha)?
            } else {
                correlation_renyi(&rho, alpha)?
            };
            let v = if bits { v.to_bits_unit() } else { v };
            let quantity = if sandwiched {
                "sandwiched_renyi_correlation"
            } else {
                "renyi_correlation"
            };
            ResultDocument::new(quantity, json!({ "file": file, "alpha": alpha }), json!(v))
                .with_units(units(bits))
                .with_config(base)
        }
        Command::Pdm { file } => {
            let g = one_pdm(&load_state(&file, dm)?);
            let ns = natural_spectrum(&g);
            let value =
                json!({ "pdm": PdmDocument::from_pdm(&g), "natural_occupations": ns.occupations });
            ResultDocument::new("one_pdm", json!({ "file": file }), value).with_config(base)
        }
        Command::Restrict { file, keep } => {
            let sub = restrict(&load_state(&file, dm)?, &keep)?;
            ResultDocument::new(
                "restriction",
                json!({ "file": file, "keep": keep }),
                json!(StateDocument::from_density(&sub)),
            )
            .with_config(base)
        }
        Command::FreeFromPdm { file } => {
            let f = free_from_pdm(&load_pdm(&file, dm)?);
            let value = json!({
                "free_spec": FreeSpecDocument::from_spec(&f.spec),
                "state": StateDocument::from_density(&f.density),
            });
            ResultDocument::new("free_state", json!({ "file": file }), value).with_config(base)
        }
        Command::Purify { file } => {
            let spec = load_free_spec(&file, dm)?;
            let (space, rows) = purify_free(&spec)?;
            let orbitals = (0..rows.nrows())
                .map(|r| {
                    (0..rows.ncols())
                        .map(|k| [rows[(r, k)].re, rows[(r, k)].im])
                        .collect()
                })
                .collect();
            let value = StateDocument::new(space.d(), StatePayload::Slater { orbitals });
            ResultDocument::new("purification", json!({ "file": file }), json!(value))
                .with_config(base)
        }
        Command::Verify {
            seed,
            dmax,
            trials,
            counterexample,
        } => {
            let mut reports = property_suite(seed, dmax, trials);
            let cfg = SearchConfig {
                seed,
                ..SearchConfig::default()
            };
            if counterexample {
                reports.extend(counterexample_reports(&cfg));
            }
            let ok = reports.iter().all(|r| r.passed);
            let doc = ResultDocument::new(
                "verification",
                json!({ "seed": seed, "dmax": dmax, "trials": trials, "counterexample": counterexample }),
                json!(reports),
            )
            .with_config(json!({ "d_max": dm, "search": cfg }));
            return Ok((doc, ok));
        }
        Command::DemoHubbard {
            sites,
            t,
            u,
            nup,
            ndown,
            sweep,
        } => {
            let grid = if !u.is_empty() {
                u
            } else if sweep {
                vec![0.0, 1.0, 2.0, 4.0, 8.0]
            } else {
                vec![4.0]
            };
            let half = HubbardParams::half_filled(sites, t, 0.0);
            let n_up = nup.unwrap_or(half.n_up);
            let n_down = ndown.unwrap_or(half.n_down);
            if 2 * sites > dm {
                return Err(Error::Capacity {
                    d: 2 * sites,
                    max: dm,
                }
                .into());
            }
            let mut rows = Vec::new();
            for &ui in &grid {
                let rho = hubbard_ground_state(&HubbardParams::new(sites, t, ui, n_up, n_down))?;
                let n = nonfreeness_with(&rho, false)?.nonfreeness;
                rows.push(json!({ "u": ui, "nonfreeness": n }));
            }
            ResultDocument::new(
                "hubbard_nonfreeness",
                json!({ "sites": sites, "t": t, "u": grid, "n_up": n_up, "n_down": n_down }),
                Value::Array(rows),
            )
            .with_units(Units::Nats)
            .with_config(base)
        }
    };
    Ok((doc, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, ok)) => {
            let _ = writeln!(std::io::stdout(), "{}", to_json(&doc));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
