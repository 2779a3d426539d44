//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 I/O, 2 invalid presentation, 3 limits exceeded,
//! 4 method inapplicable, 5 internal inconsistency.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::artrans::{ar_quiver, ARQuiver, EnumerationLimits};
use crate::error::Error;
use crate::quiver::{parse_presentation, BoundAlgebra, DEFAULT_PATH_CAP};
use crate::radical::{nilpotency_index, Method, RadicalFiltration, Strategy};
use crate::theorems::{run_checks, Check};

#[derive(Debug, Parser)]
#[command(name = "nilindex", version, about = "Nilpotency index of the radical of mod A for bound quiver algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a presentation and certify that its ideal is admissible.
    Validate(Common),
    /// Enumerate indecomposables and build the Auslander-Reiten quiver.
    Ar {
        #[command(flatten)]
        common: Common,
        /// Shorthand for `--format dot`.
        #[arg(long, conflicts_with_all = ["json", "format"])]
        dot: bool,
        /// Shorthand for `--format json`.
        #[arg(long, conflicts_with = "format")]
        json: bool,
    },
    /// Compute the nilpotency index r_A.
    Index {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Skip the cross-check of reductions against the direct computation.
        #[arg(long)]
        no_verify: bool,
        /// Build radical powers from all indecomposables instead of almost split maps.
        #[arg(long)]
        definitional: bool,
    },
    /// Run hypothesis checkers for the comparison and reduction results.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        theorem: Check,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Presentation file; `-` reads standard input.
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = EnumerationLimits::default().max_modules)]
    pub max_modules: usize,
    #[arg(long, default_value_t = EnumerationLimits::default().max_total_dimension)]
    pub max_total_dimension: usize,
    /// Cap on path lengths explored while certifying admissibility.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    pub path_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Resolved settings of one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub command: &'static str,
    pub method: Option<Method>,
    pub theorem: Option<Check>,
    pub verify: bool,
    pub strategy: Strategy,
    pub limits: EnumerationLimits,
    pub path_cap: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Failure {
    Io(String),
    Core(Error),
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Core(e) => exit_code(e),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(m) | Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::UnknownVertex { .. }
        | Error::UnknownArrow { .. }
        | Error::InvalidQuiver(_)
        | Error::InvalidPath(_)
        | Error::InvalidRelation(_)
        | Error::NonParallel(_)
        | Error::NotAdmissible(_)
        | Error::InvalidRepresentation(_)
        | Error::SplitFieldNeeded(_) => 2,
        Error::CapExceeded { .. } | Error::LimitsExceeded(_) => 3,
        Error::MethodInapplicable(_) => 4,
        Error::Serialization(_) => 1,
        _ => 5,
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let (command, common, method, theorem, verify, strategy, fmt) = match &cli.command {
            Command::Validate(c) => ("validate", c, None, None, true, Strategy::AlmostSplit, c.format),
            Command::Ar { common, dot, json } => {
                let f = if *dot {
                    Some(Format::Dot)
                } else if *json {
                    Some(Format::Json)
                } else {
                    common.format
                };
                ("ar", common, None, None, true, Strategy::AlmostSplit, f)
            }
            Command::Index { common, method, no_verify, definitional } => {
                let s = if *definitional { Strategy::Definitional } else { Strategy::AlmostSplit };
                ("index", common, Some(*method), None, !no_verify, s, common.format)
            }
            Command::Check { common, theorem } => ("check", common, None, Some(*theorem), true, Strategy::AlmostSplit, common.format),
        };
        let format = fmt.unwrap_or(Format::Text);
        if format == Format::Dot && command != "ar" {
            return Err(Failure::Usage(format!("--format dot is only available for `ar`, not `{command}`")));
        }
        let limits = EnumerationLimits::new(common.max_modules, common.max_total_dimension)
            .ok_or_else(|| Failure::Usage("limits must be positive".into()))?;
        Ok(RunConfig {
            input: common.input.clone(),
            command,
            method,
            theorem,
            verify,
            strategy,
            limits,
            path_cap: common.path_cap,
            format,
            output: common.output.clone(),
        })
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(cfg: &RunConfig) -> Result<BoundAlgebra, Failure> {
    let text = read_input(&cfg.input)?;
    let pres = parse_presentation(&text)?;
    Ok(BoundAlgebra::with_cap(pres, cfg.path_cap)?)
}

fn ar_text(ar: &ARQuiver) -> String {
    let mut out = format!("{} indecomposables, {} irreducible arrows\n", ar.len(), ar.arrows().len());
    for (i, n) in ar.nodes().iter().enumerate() {
        let dims: Vec<String> = n.module.dim_vector().iter().map(usize::to_string).collect();
        let tau = ar.tau(i).map_or("-".to_string(), |t| ar.node(t).label.clone());
        out.push_str(&format!("{:>4}  {:<14} [{}]  tau: {}\n", i, n.label, dims.join(","), tau));
    }
    out
}

/// Runs one invocation and returns the rendered output.
pub fn execute(cfg: &RunConfig) -> Result<String, Failure> {
    let alg = load(cfg)?;
    match cfg.command {
        "validate" => {
            let rep = alg.admissibility();
            Ok(match cfg.format {
                Format::Json => serde_json::to_string_pretty(&rep).map_err(|e| Failure::Io(e.to_string()))? + "\n",
                _ => format!(
                    "admissible: dimension {}, longest surviving path {}, arrow ideal nilpotent of degree {}\n",
                    rep.dimension, rep.longest_surviving_path, rep.nilpotency_degree
                ),
            })
        }
        "ar" => {
            let ar = ar_quiver(&alg, cfg.limits)?;
            Ok(match cfg.format {
                Format::Dot => ar.to_dot(),
                Format::Json => serde_json::to_string_pretty(&ar.to_json()).map_err(|e| Failure::Io(e.to_string()))? + "\n",
                Format::Text => ar_text(&ar),
            })
        }
        "index" => {
            let ar = Arc::new(ar_quiver(&alg, cfg.limits)?);
            let filt = RadicalFiltration::with_strategy(ar, cfg.strategy)?;
            let report = nilpotency_index(&filt, cfg.method.unwrap_or(Method::Auto), cfg.verify)?;
            Ok(match cfg.format {
                Format::Json => report.to_json() + "\n",
                _ => report.to_text(),
            })
        }
        "check" => {
            let ar = Arc::new(ar_quiver(&alg, cfg.limits)?);
            let filt = RadicalFiltration::with_strategy(ar, cfg.strategy)?;
            let report = run_checks(&filt, cfg.theorem.unwrap_or(Check::All))?;
            Ok(match cfg.format {
                Format::Json => report.to_json() + "\n",
                _ => report.to_text(),
            })
        }
        other => Err(Failure::Usage(format!("unknown command {other}"))),
    }
}

/// Parses arguments, runs, writes output and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|cfg| {
        let out = execute(&cfg)?;
        match &cfg.output {
            Some(p) => std::fs::write(p, &out).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
            None => std::io::stdout().write_all(out.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
        }
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
