//! `peircelab`: decompositions, witnesses, approximations and suite runs on
//! finite-dimensional JB*-triples. Results are JSON on stdout (or `--out`);
//! diagnostics go to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use peircelab::approx::{projection_approximation, regular_approximation};
use peircelab::harness::{default_suite, parse_config, run_suite, DEFAULT_SEED};
use peircelab::ideals::orthogonal_annihilator;
use peircelab::peirce::{peirce_decompose, tripotent_residual, PeirceIndex};
use peircelab::rickart::{
    finite_reversed_witness, pedersen_witness, weakly_rickart_witness, wor_witness, PedersenCase,
    PedersenInput,
};
use peircelab::spectral::{
    generalized_inverse, generalized_inverse_residuals, polar_decomposition, range_tripotent,
    triple_spectrum,
};
use peircelab::{ComplexMatrix, Error, Subspace, TripleModel, Tripotent};

#[derive(Parser)]
#[command(name = "peircelab", version, about)]
struct Cli {
    /// Numerical tolerance; for `verify` it overrides every property tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampled checks and suite runs.
    #[arg(long, global = true, env = "PEIRCELAB_SEED")]
    seed: Option<u64>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ElementArgs {
    /// Model descriptor: a JSON file or inline JSON. Inferred from the element when absent.
    #[arg(long)]
    model: Option<String>,
    /// Matrix JSON file.
    #[arg(long)]
    element: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Peirce projections, subspace bases and residuals of a tripotent.
    Peirce {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        tripotent: PathBuf,
    },
    /// Triple spectrum (singular values).
    Spectrum(ElementArgs),
    /// Polar decomposition `x = e|x|` (C*-algebra model).
    Polar(ElementArgs),
    /// Range tripotent `r(x)`.
    RangeTripotent(ElementArgs),
    /// Generalized inverse and its defining residuals.
    Ginv(ElementArgs),
    /// Orthogonal annihilator of a set of elements.
    Annihilator {
        #[arg(long)]
        model: Option<String>,
        #[arg(long, num_args = 1.., required = true)]
        elements: Vec<PathBuf>,
    },
    /// Rickart-type witnesses.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        element: Option<PathBuf>,
        /// Subspace JSON for `J`; defaults to the annihilator of the inputs.
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long, num_args = 1..)]
        family: Vec<PathBuf>,
        /// Pedersen case; inferred from the input forms when absent.
        #[arg(long)]
        case: Option<PedersenCase>,
    },
    /// Approximation by combinations of projections or by regular elements.
    Approx {
        #[arg(long, value_enum)]
        kind: ApproxKind,
        #[command(flatten)]
        input: ElementArgs,
        #[arg(long)]
        eps: f64,
    },
    /// Run the randomized verification suite.
    Verify {
        /// JSON list of property specs; the default suite when absent.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Wr,
    Wor,
    Reversed,
    Pedersen,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproxKind {
    Projections,
    Regular,
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConvergenceFailure { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

const DEFAULT_TOL: f64 = 1e-9;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, code)) => match emit(&value, cli.out.as_deref()) {
            Ok(()) => ExitCode::from(code),
            Err(f) => fail(f),
        },
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("error: {}", f.message);
    ExitCode::from(f.code)
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialise");
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{text}") {
                // a closed pipe (e.g. `| head`) is the reader's choice
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    Err(input_error(format!("cannot write stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialise")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_subspace(path: &Path, tol: f64) -> Result<Subspace, Failure> {
    Ok(peircelab::linalg::subspace::subspace_from_json(
        &read(path)?,
        tol.max(DEFAULT_TOL),
    )?)
}

/// A descriptor given inline (`{...}`) or as a file.
fn parse_model(desc: &str) -> Result<TripleModel, Failure> {
    let text = if desc.trim_start().starts_with('{') {
        desc.to_owned()
    } else {
        read(Path::new(desc))?
    };
    serde_json::from_str(&text).map_err(|e| input_error(format!("model descriptor: {e}")))
}

/// The given model, or the natural one for `x`: `preferred` when square,
/// rectangular otherwise.
fn model_for(
    desc: Option<&str>,
    x: &ComplexMatrix,
    preferred: fn(usize) -> TripleModel,
) -> Result<TripleModel, Failure> {
    let model = match desc {
        Some(d) => parse_model(d)?,
        None if x.is_square() => preferred(x.rows()),
        None => TripleModel::Rect {
            m: x.rows(),
            n: x.cols(),
        },
    };
    model.check(x)?;
    Ok(model)
}

fn cstar(n: usize) -> TripleModel {
    TripleModel::CStar { n }
}

fn jbstar(n: usize) -> TripleModel {
    TripleModel::JBStar { n }
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if tol.is_nan() || tol < 0.0 {
        return Err(input_error("--tol must be non-negative"));
    }
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let value = match &cli.command {
        Command::Peirce { model, tripotent } => {
            let e = read_matrix(tripotent)?;
            let model = model_for(model.as_deref(), &e, cstar)?;
            let t = Tripotent::certify(&model, e, tol)?;
            let pd = peirce_decompose(&model, &t)?;
            let space = |k| to_value(pd.subspace(k));
            json!({
                "model": model,
                "tripotent": t,
                "subspaces": {
                    "0": space(PeirceIndex::Zero),
                    "1": space(PeirceIndex::One),
                    "2": space(PeirceIndex::Two),
                },
                "dims": PeirceIndex::ALL.map(|k| pd.subspace(k).dim()),
                "residuals": {
                    "tripotent": tripotent_residual(&model, t.element())?,
                    "projections": pd.projection_residual()?,
                },
            })
        }
        Command::Spectrum(args) => {
            let (model, x) = load(args, cstar)?;
            to_value(&triple_spectrum(&model, &x, tol)?)
        }
        Command::Polar(args) => {
            let (model, x) = load(args, cstar)?;
            to_value(&polar_decomposition(&model, &x, tol)?)
        }
        Command::RangeTripotent(args) => {
            let (model, x) = load(args, cstar)?;
            to_value(&range_tripotent(&model, &x, tol)?)
        }
        Command::Ginv(args) => {
            let (model, x) = load(args, cstar)?;
            let d = generalized_inverse(&model, &x, tol)?;
            let residuals = generalized_inverse_residuals(&model, &x, &d, tol)?;
            json!({ "inverse": d, "residuals": residuals })
        }
        Command::Annihilator { model, elements } => {
            let xs = elements
                .iter()
                .map(|p| read_matrix(p))
                .collect::<Result<Vec<_>, _>>()?;
            let model = model_for(model.as_deref(), &xs[0], cstar)?;
            to_value(&orthogonal_annihilator(&model, &xs, tol.max(1e-8))?)
        }
        Command::Witness {
            kind,
            model,
            element,
            ideal,
            family,
            case,
        } => witness(
            *kind,
            model.as_deref(),
            element.as_deref(),
            ideal.as_deref(),
            family,
            *case,
            tol,
            seed,
        )?,
        Command::Approx { kind, input, eps } => match kind {
            ApproxKind::Projections => {
                let (model, x) = load(input, jbstar)?;
                to_value(&projection_approximation(&model, &x, *eps)?)
            }
            ApproxKind::Regular => {
                let (model, x) = load(input, cstar)?;
                to_value(&regular_approximation(&model, &x, *eps, tol.max(1e-8))?)
            }
        },
        Command::Verify { config } => {
            let mut specs = match config {
                Some(path) => parse_config(&read(path)?)?,
                None => default_suite(seed),
            };
            if let Some(s) = cli.seed.filter(|_| config.is_some()) {
                for spec in &mut specs {
                    spec.seed = s;
                }
            }
            if let Some(t) = cli.tol {
                for spec in &mut specs {
                    spec.tol = t;
                }
            }
            let report = run_suite(&specs)?;
            let code = if report.pass { 0 } else { 1 };
            return Ok((to_value(&report), code));
        }
    };
    Ok((value, 0))
}

fn load(
    args: &ElementArgs,
    preferred: fn(usize) -> TripleModel,
) -> Result<(TripleModel, ComplexMatrix), Failure> {
    let x = read_matrix(&args.element)?;
    let model = model_for(args.model.as_deref(), &x, preferred)?;
    Ok((model, x))
}

#[allow(clippy::too_many_arguments)]
fn witness(
    kind: WitnessKind,
    model: Option<&str>,
    element: Option<&Path>,
    ideal: Option<&Path>,
    family: &[PathBuf],
    case: Option<PedersenCase>,
    tol: f64,
    seed: u64,
) -> Result<Value, Failure> {
    let element = element.map(read_matrix).transpose()?;
    let family = family
        .iter()
        .map(|p| read_matrix(p))
        .collect::<Result<Vec<_>, _>>()?;
    let first = element
        .as_ref()
        .or(family.first())
        .ok_or_else(|| input_error("witness needs --element or --family"))?;
    let preferred = if matches!(kind, WitnessKind::Pedersen) {
        jbstar
    } else {
        cstar
    };
    let model = model_for(model, first, preferred)?;
    let inner = tol.max(1e-8);
    let ideal_or = |set: &[ComplexMatrix]| -> Result<Subspace, Failure> {
        match ideal {
            Some(p) => read_subspace(p, inner),
            None => Ok(orthogonal_annihilator(&model, set, inner)?),
        }
    };
    let report = match kind {
        WitnessKind::Wr | WitnessKind::Wor => {
            let x = element.ok_or_else(|| input_error("--element is required"))?;
            let j = ideal_or(std::slice::from_ref(&x))?;
            if matches!(kind, WitnessKind::Wr) {
                weakly_rickart_witness(&model, &x, &j, inner)?
            } else {
                wor_witness(&model, &x, &j, inner)?
            }
        }
        WitnessKind::Reversed => {
            let mut xs = family;
            if let Some(x) = element {
                xs.insert(0, x);
            }
            let j = ideal_or(&xs)?;
            finite_reversed_witness(&model, &xs, &j, inner)?
        }
        WitnessKind::Pedersen => {
            let b = PedersenInput::Generator(
                element.ok_or_else(|| input_error("--element (the generator of B) is required"))?,
            );
            let c = match (ideal, family.first()) {
                (Some(p), _) => PedersenInput::Subspace(read_subspace(p, inner)?),
                (None, Some(g)) => PedersenInput::Generator(g.clone()),
                (None, None) => PedersenInput::Subspace(Subspace::zero(model.shape())),
            };
            let case = case.unwrap_or(match c {
                PedersenInput::Generator(_) => PedersenCase::Sajbw,
                PedersenInput::Subspace(_) => PedersenCase::WeaklyRickart,
            });
            pedersen_witness(&model, case, &b, &c, inner, seed)?.1
        }
    };
    Ok(to_value(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_kind() {
        let f = Failure::from(Error::ConvergenceFailure {
            algorithm: "one-sided Jacobi SVD",
            sweeps: 80,
        });
        assert_eq!(f.code, 3);
        assert_eq!(Failure::from(Error::NonPositiveEps(0.0)).code, 2);
        assert_eq!(Failure::from(Error::UnknownProperty("x".into())).code, 2);
    }

    #[test]
    fn inline_and_inferred_models() {
        let m = parse_model(r#"{"kind":"jbstar","m":3,"n":3}"#)
            .ok()
            .unwrap();
        assert_eq!(m, TripleModel::JBStar { n: 3 });
        let x = ComplexMatrix::zeros(2, 3);
        let inferred = model_for(None, &x, cstar).ok().unwrap();
        assert_eq!(inferred, TripleModel::Rect { m: 2, n: 3 });
    }
}
