use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use leibniz::algebra::LeibnizAlgebra;
use leibniz::format;
use leibniz::linalg::{parse_rational, Rational, Subspace};
use leibniz::module::{adjoint_module, restrict, LeibnizModule};
use leibniz::report::{self, Report, EXIT_MATH, EXIT_OK, EXIT_USAGE};
use leibniz::sl2::{self, Variant};
use leibniz::{Error, Result};

/// Exact computations with finite-dimensional Leibniz algebras.
///
/// Every command prints a JSON report. Exit codes: 0 success, 1 usage or
/// input error, 2 failed mathematical verification, 3 undecidable or not
/// split over the rationals.
#[derive(Parser)]
#[command(name = "leibniz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity on all basis triples.
    Verify { file: PathBuf },
    /// Annihilator, Lie factor, series and simplicity certificate.
    Info { file: PathBuf },
    /// Cartan subalgebra and root space decomposition.
    Roots {
        file: PathBuf,
        /// Comma-separated labels spanning the Cartan subalgebra.
        #[arg(long)]
        cartan: Option<String>,
        /// Seed for the Cartan search.
        #[arg(long, env = "LEIBNIZ_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Write one of the built-in algebras.
    Construct(ConstructArgs),
    /// Bring a simple algebra with Lie factor sl2 to template or standard form.
    Classify { file: PathBuf },
    /// Module computations on the adjoint module.
    Module(ModuleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Sl22,
    Sl2n,
    Standard,
}

#[derive(Args)]
struct ConstructArgs {
    family: Family,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    /// Output file; without it the algebra is embedded in the report.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["weights", "flag", "extended_lie", "three_irreducible"])))]
struct ModuleArgs {
    file: PathBuf,
    /// Use the adjoint module (the only module source).
    #[arg(long, required = true)]
    adjoint: bool,
    /// Comma-separated labels spanning a subalgebra to restrict to.
    #[arg(long)]
    restrict: Option<String>,
    #[arg(long)]
    weights: bool,
    #[arg(long)]
    flag: bool,
    #[arg(long)]
    extended_lie: bool,
    #[arg(long)]
    three_irreducible: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let report = Report {
                command: "usage".into(),
                input_digest: None,
                exit_code: EXIT_USAGE,
                result: json!({ "error": "usage_error", "message": e.to_string() }),
            };
            emit(&report.to_pretty());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let report = run(cli.command);
    emit(&report.to_pretty());
    ExitCode::from(report.exit_code as u8)
}

/// Prints the report; a closed stdout (e.g. piped into `head`) is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn read_input(path: &Path) -> Result<(LeibnizAlgebra, String)> {
    let bytes = std::fs::read(path)?;
    let digest = report::digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Validation("input is not UTF-8".into()))?;
    Ok((format::from_json(&text)?, digest))
}

fn span_of(l: &LeibnizAlgebra, labels: &str) -> Result<Subspace> {
    let names: Vec<&str> = labels.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    l.span_of_labels(&names)
}

/// Runs a command on a loaded file; `body` returns the payload and exit code.
fn with_file(name: &str, file: &Path, body: impl FnOnce(&LeibnizAlgebra) -> Result<(Value, i32)>) -> Report {
    let (l, digest) = match read_input(file) {
        Ok(x) => x,
        Err(e) => return Report::error(name, None, &e),
    };
    match body(&l) {
        Ok((result, exit_code)) => Report {
            command: name.into(),
            input_digest: Some(digest),
            exit_code,
            result,
        },
        Err(e) => Report::error(name, Some(digest), &e),
    }
}

fn require_leibniz(l: &LeibnizAlgebra) -> Result<()> {
    match l.leibniz_counterexample() {
        None => Ok(()),
        Some((i, j, k)) => Err(Error::IdentityViolation(format!(
            "Leibniz identity fails on ({}, {}, {})",
            l.labels()[i],
            l.labels()[j],
            l.labels()[k]
        ))),
    }
}

fn run(command: Command) -> Report {
    match command {
        Command::Verify { file } => with_file("verify", &file, |l| {
            let (value, ok) = report::verify(l);
            Ok((value, if ok { EXIT_OK } else { EXIT_MATH }))
        }),
        Command::Info { file } => with_file("info", &file, |l| Ok((report::info(l)?, EXIT_OK))),
        Command::Roots { file, cartan, seed } => with_file("roots", &file, |l| {
            require_leibniz(l)?;
            let h = cartan.as_deref().map(|c| span_of(l, c)).transpose()?;
            Ok((report::roots(l, h, seed)?, EXIT_OK))
        }),
        Command::Classify { file } => with_file("classify", &file, |l| {
            require_leibniz(l)?;
            let r = sl2::classify(l)?;
            let code = if r.variant == Variant::NotApplicable { EXIT_MATH } else { EXIT_OK };
            Ok((report::classification(l, &r), code))
        }),
        Command::Construct(args) => construct(args),
        Command::Module(args) => module(args),
    }
}

fn construct(args: ConstructArgs) -> Report {
    let family = match args.family {
        Family::Sl22 => "sl22",
        Family::Sl2n => "sl2n",
        Family::Standard => "standard",
    };
    let canonical = format!("{family} n={:?} alpha={} beta={}", args.n, args.alpha, args.beta);
    let digest = Some(report::digest(canonical.as_bytes()));
    let build = || -> Result<LeibnizAlgebra> {
        let alpha: Rational = parse_rational(&args.alpha)?;
        let beta: Rational = parse_rational(&args.beta)?;
        let need_n = || args.n.ok_or_else(|| Error::Validation(format!("{family} needs --n")));
        match args.family {
            Family::Sl22 => Ok(sl2::construct_sl22(&alpha, &beta)),
            Family::Sl2n => sl2::construct_sl2n(need_n()?, &alpha, &beta),
            Family::Standard => {
                let n = need_n()?;
                if n < 1 {
                    return Err(Error::BadRange(format!("n must be at least 1, got {n}")));
                }
                sl2::construct_standard(n as usize)
            }
        }
    };
    let l = match build() {
        Ok(l) => l,
        Err(e) => return Report::error("construct", digest, &e),
    };
    let mut result = json!({ "family": family, "dim": l.dim() });
    match &args.output {
        Some(path) => {
            if let Err(e) = format::save(&l, path) {
                return Report::error("construct", digest, &e);
            }
            result["output"] = path.display().to_string().into();
        }
        None => result["algebra"] = format::to_value(&l),
    }
    Report::ok("construct", digest, result)
}

fn module(args: ModuleArgs) -> Report {
    with_file("module", &args.file, |l| {
        let full = adjoint_module(l)?;
        let m: LeibnizModule = match &args.restrict {
            Some(labels) => restrict(&full, &span_of(l, labels)?)?,
            None => full,
        };
        let v_labels = l.labels();
        let value = if args.weights {
            report::module_weights(&m, v_labels, false)?
        } else if args.flag {
            report::module_weights(&m, v_labels, true)?
        } else if args.extended_lie {
            report::module_extended_lie(&m, v_labels)?
        } else {
            report::module_three_irreducible(&m)?
        };
        Ok((value, EXIT_OK))
    })
}
