//! `kbl`: admissibility reports and numerical checks for blow-up data.
//!
//! Exit codes: 0 when every requested condition holds, 2 when a condition
//! fails (the report carries the certificate), 1 on input errors.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kbl_core::biharmonic::{exterior_extension, interior_extension, matching_matrices, write_determinants_csv, ModeInput};
use kbl_core::classes::{class_from_json, class_to_json, corollary_families, cremona};
use kbl_core::geometry::json::PolytopeJson;
use kbl_core::geometry::{
    chopped_projective_simplex, corner_chop_with, futaki_report, ChopConvention, ChopSpec, Polytope, Validity,
};
use kbl_core::radial::{burns_simanca_with, write_csv, ProfileCache, ShootingOptions};
use kbl_core::report::{analyze, futaki_summary, verify_suite, Scenario};
use kbl_core::scalar::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "kbl", version, about = "Extremal metrics on blow-ups: exact admissibility checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable check on a scenario file.
    Analyze {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Corner chops and the Futaki functional.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Cohomology classes on blow-ups of the projective plane.
    #[command(subcommand)]
    Classes(ClassesCmd),
    /// Scalar-flat profile on the blow-up of complex m-space.
    Bsmetric(BsArgs),
    /// Biharmonic extensions and matching determinants.
    #[command(subcommand)]
    Biharmonic(BiharmonicCmd),
    /// Run a built-in verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Inward,
    Literal,
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Chop one vertex of a polytope file and print the result.
    Chop {
        polytope: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value = "inward")]
        convention: Convention,
    },
    /// Futaki functional of a polytope file, or of the chopped reference simplex.
    Futaki {
        polytope: Option<PathBuf>,
        /// Use the reference simplex of this dimension instead of a file.
        #[arg(long)]
        simplex: Option<usize>,
        /// Comma-separated vertex indices to chop (with --simplex).
        #[arg(long, value_delimiter = ',')]
        chop: Vec<usize>,
        /// Comma-separated chop sizes (with --simplex).
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ClassesCmd {
    /// Cremona image of a class given as JSON text or a file.
    Cremona { class: String },
    /// Composed and closed-form class families for one configuration.
    Family {
        #[arg(long)]
        case: u8,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
}

#[derive(Args)]
struct BsArgs {
    #[arg(long)]
    m: usize,
    #[arg(long = "T", default_value_t = 1e4)]
    t_max: f64,
    #[arg(long, default_value_t = 1e-4)]
    t_min: f64,
    #[arg(long, default_value_t = 10_000)]
    points: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Directory for solved profiles.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BiharmonicCmd {
    /// Matching matrices per degree, or extensions of the data in --input.
    Match {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 50)]
        lmax: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn rationals(items: &[String]) -> Result<Vec<Rational>> {
    items
        .iter()
        .map(|s| parse_rational(s).map_err(Into::into))
        .collect()
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn load_polytope(path: &Path) -> Result<Polytope<Rational>> {
    let raw: PolytopeJson = serde_json::from_str(&read(path)?)?;
    raw.clone()
        .into_polytope(Validity::Delzant)
        .or_else(|_| raw.into_polytope(Validity::RationalSimple))
        .map_err(Into::into)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { scenario, out } => {
            let s = Scenario::from_json(&read(&scenario)?)?;
            let report = analyze(&s)?;
            let text = report.to_json();
            match out {
                Some(p) => fs::write(&p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
                None => emit(&(text + "\n"))?,
            }
            Ok(if report.all_conditions_hold { 0 } else { 2 })
        }
        Command::Polytope(PolytopeCmd::Chop {
            polytope,
            vertex,
            weight,
            convention,
        }) => {
            let p = load_polytope(&polytope)?;
            let spec = ChopSpec {
                vertex_index: vertex,
                weight: parse_rational(&weight)?,
            };
            let conv = match convention {
                Convention::Inward => ChopConvention::Inward,
                Convention::Literal => ChopConvention::Literal,
            };
            let q = corner_chop_with(&p, &spec, conv)?;
            print_json(&PolytopeJson::from(&q))?;
            Ok(0)
        }
        Command::Polytope(PolytopeCmd::Futaki {
            polytope,
            simplex,
            chop,
            weights,
        }) => {
            let summary = match (polytope, simplex) {
                (Some(path), None) => {
                    let p = load_polytope(&path)?;
                    futaki_summary(Vec::new(), &p, &futaki_report(&p))
                }
                (None, Some(m)) => {
                    let w = rationals(&weights)?;
                    let (p, f) = chopped_projective_simplex(m, &chop, &w)?;
                    futaki_summary(chop.into_iter().zip(w).collect(), &p, &f)
                }
                _ => bail!("give either a polytope file or --simplex"),
            };
            let vanishes = summary.vanishes;
            print_json(&summary)?;
            Ok(if vanishes { 0 } else { 2 })
        }
        Command::Classes(ClassesCmd::Cremona { class }) => {
            let text = if Path::new(&class).exists() { read(Path::new(&class))? } else { class };
            let c = class_from_json(&text)?;
            print_json(&class_to_json(&cremona(&c)?))?;
            Ok(0)
        }
        Command::Classes(ClassesCmd::Family { case, params }) => {
            let fams = corollary_families(case, &rationals(&params)?)?;
            print_json(&fams)?;
            Ok(if fams.iter().all(|f| f.constraints.iter().all(|c| c.holds)) { 0 } else { 2 })
        }
        Command::Bsmetric(a) => {
            let opts = ShootingOptions {
                t_max: a.t_max,
                t_min: a.t_min,
                points: a.points,
                ..ShootingOptions::default()
            };
            let p = match &a.cache {
                Some(dir) => ProfileCache::new(dir).load_or_compute(a.m, &opts)?,
                None => burns_simanca_with(a.m, &opts)?,
            };
            if let Some(path) = &a.csv {
                let f = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
                write_csv(&p, std::io::BufWriter::new(f))?;
            }
            print_json(&serde_json::json!({
                "m": p.m,
                "points": p.len(),
                "psi_zero": p.psi_zero,
                "max_abs_curvature": p.max_abs_curvature(),
                "decay_exponent": p.decay_exponent(a.t_max / 100.0, a.t_max),
                "shooting": p.shooting,
            }))?;
            Ok(0)
        }
        Command::Biharmonic(BiharmonicCmd::Match { m, lmax, csv, input }) => {
            if let Some(path) = input {
                let data = ModeInput::from_json(&read(&path)?)?;
                let (h, k) = data.data()?;
                print_json(&serde_json::json!({
                    "interior": interior_extension(&h, &k).map_err(|e| e.to_string()),
                    "exterior": exterior_extension(&h, &k).map_err(|e| e.to_string()),
                }))?;
                return Ok(0);
            }
            let t = matching_matrices(m, lmax)?;
            if let Some(path) = csv {
                let f = fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
                write_determinants_csv(&t, std::io::BufWriter::new(f))?;
            }
            print_json(&t)?;
            Ok(if t.singular_extended.is_empty() { 0 } else { 2 })
        }
        Command::Verify { suite, json } => {
            let r = verify_suite(&suite)?;
            if json {
                print_json(&r)?;
            } else {
                emit(&r.table())?;
            }
            Ok(if r.passed { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
