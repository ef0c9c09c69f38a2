//! Command-line front end. The `clusterflag` binary is a thin wrapper around
//! [`run_cli`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::flag_seeds::{flag_initial_seed, grassmannian_initial_seed, phi_star_seed, FlagType};
use crate::mutation_programs::{general_flag_program, mt_program, sh_program, verify_program, MutationProgram, Report};
use crate::plucker_algebra::{translate, Bracket, Kinematics, DEFAULT_PRIME};
use crate::quiver_seeds::{OracleConfig, Seed};

pub const SEED_ENV: &str = "CLUSTERFLAG_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Write(#[from] std::io::Error),
    #[error(transparent)]
    Flag(#[from] crate::flag_seeds::FlagError),
    #[error(transparent)]
    Seed(#[from] crate::quiver_seeds::SeedError),
    #[error(transparent)]
    Program(#[from] crate::mutation_programs::ProgramError),
    #[error(transparent)]
    Plucker(#[from] crate::plucker_algebra::PluckerError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "clusterflag", version, about = "Cluster seeds of Grassmannians and partial flag varieties")]
pub struct Cli {
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Prime for the evaluation oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    /// Number of random evaluation points.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Master seed; overridden by CLUSTERFLAG_SEED.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Mt,
    Sh,
}

#[derive(Debug, Clone, Args)]
pub struct SeedSource {
    /// Flag type as n,d1,...,dk.
    #[arg(long, value_parser = parse_flag, conflicts_with = "gr")]
    pub flag: Option<FlagType>,
    /// Grassmannian rectangle seed Gr(k, n) as k,n.
    #[arg(long, value_parser = parse_pair)]
    pub gr: Option<(u32, u32)>,
    /// Apply the pullback to the ambient Grassmannian (with --flag).
    #[arg(long, requires = "flag")]
    pub phi: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ProgramChoice {
    /// Named program.
    #[arg(long, value_enum, requires = "n", conflicts_with = "flag")]
    pub preset: Option<Preset>,
    /// n for the preset.
    #[arg(long)]
    pub n: Option<u32>,
    /// Flag type as n,d1,...,dk.
    #[arg(long, value_parser = parse_flag)]
    pub flag: Option<FlagType>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an initial seed.
    Seed {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Mutate a seed read from JSON at the given vertex labels, in order.
    Mutate {
        #[arg(long)]
        input: PathBuf,
        /// Vertex labels such as (11) or {2,4,5}; bare numbers mean (n).
        #[arg(long = "at", required = true, num_args = 1..)]
        at: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a mutation program on the rectangle seed and emit the endpoint.
    Run {
        #[command(flatten)]
        program: ProgramChoice,
        #[arg(long, value_enum)]
        export: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that the program carries the rectangle seed to the flag seed.
    Verify {
        #[command(flatten)]
        program: ProgramChoice,
        /// Write the JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rewrite spinor-helicity or momentum-twistor brackets as Plücker polynomials.
    Translate {
        #[arg(long, conflicts_with = "mt", required_unless_present = "mt")]
        sh: Option<u32>,
        #[arg(long)]
        mt: Option<u32>,
        #[arg(required = true)]
        brackets: Vec<String>,
    },
    /// Convert a JSON seed to another format.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_flag(s: &str) -> Result<FlagType, String> {
    s.parse().map_err(|e: crate::flag_seeds::FlagError| e.to_string())
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected k,n, got {s:?}"))?;
    let k = a.trim().parse::<u32>().map_err(|e| e.to_string())?;
    let n = b.trim().parse::<u32>().map_err(|e| e.to_string())?;
    if k == 0 || k >= n {
        return Err(format!("need 0 < k < n, got {k},{n}"));
    }
    Ok((k, n))
}

impl OracleArgs {
    /// The oracle settings, with `CLUSTERFLAG_SEED` taking precedence.
    pub fn config(&self) -> Result<OracleConfig, CliError> {
        let seed = match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?,
            Err(_) => self.seed,
        };
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be positive".into()));
        }
        Ok(OracleConfig {
            prime: self.prime,
            trials: self.trials,
            seed,
        })
    }
}

impl ProgramChoice {
    pub fn program(&self) -> Result<MutationProgram, CliError> {
        match (self.preset, self.n, &self.flag) {
            (Some(Preset::Mt), Some(n), None) => Ok(mt_program(n)?),
            (Some(Preset::Sh), Some(n), None) => Ok(sh_program(n)?),
            (None, None, Some(f)) => Ok(general_flag_program(f)),
            _ => Err(CliError::Usage("give either --preset mt|sh --n N or --flag n,d1,...".into())),
        }
    }
}

fn read_seed(path: &Path) -> Result<Seed, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    Ok(Seed::from_json(&value)?)
}

fn render(seed: &Seed, format: Format, name: &str) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&seed.to_json(usize::MAX))? + "\n",
        Format::Dot => seed.to_dot(name),
    })
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn find_vertex(seed: &Seed, label: &str) -> Result<usize, CliError> {
    seed.quiver
        .find_label(label)
        .or_else(|| seed.quiver.find_label(&format!("({label})")))
        .ok_or_else(|| CliError::Usage(format!("no vertex labelled {label}")))
}

fn summary(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{} in {}", report.flag, report.grassmannian)?;
    writeln!(
        out,
        "mutations {}  freezes {}  deletions {}",
        report.mutations, report.freezes, report.deletions
    )?;
    if !report.sequence.is_empty() {
        writeln!(out, "sequence  {}", report.sequence.join(","))?;
    }
    if !report.frozen.is_empty() {
        writeln!(out, "frozen    {}", report.frozen.join(","))?;
    }
    if !report.deleted.is_empty() {
        writeln!(out, "deleted   {}", report.deleted.join(","))?;
    }
    for c in &report.checks {
        writeln!(out, "[{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail)?;
    }
    for f in &report.findings {
        writeln!(out, "note: {f}")?;
    }
    Ok(())
}

/// Executes a parsed command. Returns the process exit code: 0 on success,
/// 1 when a verification fails.
pub fn execute(cli: &Cli, out: &mut dyn Write, log: &mut dyn Write) -> Result<i32, CliError> {
    let config = cli.oracle.config()?;
    match &cli.command {
        Command::Seed { source, format, output } => {
            let (seed, name) = match (&source.flag, source.gr) {
                (Some(f), None) => {
                    let s = flag_initial_seed(f)?;
                    if source.phi {
                        (phi_star_seed(&s, f)?, format!("phi {f}"))
                    } else {
                        (s, f.to_string())
                    }
                }
                (None, Some((k, n))) => (grassmannian_initial_seed(k, n)?, format!("Gr_{{{k};{n}}}")),
                _ => return Err(CliError::Usage("give --flag n,d1,... or --gr k,n".into())),
            };
            emit(&render(&seed, *format, &name)?, output.as_deref(), out)?;
        }
        Command::Mutate { input, at, format, output } => {
            let mut seed = read_seed(input)?;
            for label in at {
                let v = find_vertex(&seed, label)?;
                seed = seed.mutate(v)?;
            }
            emit(&render(&seed, *format, "mutated")?, output.as_deref(), out)?;
        }
        Command::Run { program, export, output } => {
            let prog = program.program()?;
            let v = verify_program(&prog, config)?;
            let text = match export {
                Some(f) => Some(render(&v.outcome.endpoint, *f, &format!("endpoint {}", prog.flag))?),
                None => None,
            };
            // With the seed on stdout the summary goes to the log stream.
            match (&text, output) {
                (Some(t), None) => {
                    out.write_all(t.as_bytes())?;
                    summary(&v.report, log)?;
                }
                (Some(t), Some(p)) => {
                    emit(t, Some(p), out)?;
                    summary(&v.report, out)?;
                }
                (None, _) => summary(&v.report, out)?,
            }
            return Ok(if v.report.passed() { 0 } else { 1 });
        }
        Command::Verify { program, output } => {
            let prog = program.program()?;
            let v = verify_program(&prog, config)?;
            summary(&v.report, out)?;
            if let Some(p) = output {
                emit(&(serde_json::to_string_pretty(&v.report)? + "\n"), Some(p), out)?;
            }
            let ok = v.report.passed();
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Translate { sh, mt, brackets } => {
            let (kind, n) = match (sh, mt) {
                (Some(n), None) => (Kinematics::Sh, *n),
                (None, Some(n)) => (Kinematics::Mt, *n),
                _ => return Err(CliError::Usage("give exactly one of --sh N, --mt N".into())),
            };
            for b in brackets {
                let br: Bracket = b.parse()?;
                writeln!(out, "{}", translate(kind, n, &br)?.to_signed_string())?;
            }
        }
        Command::Export { input, format, output } => {
            let seed = read_seed(input)?;
            let name = input.file_stem().and_then(|s| s.to_str()).unwrap_or("seed").to_string();
            emit(&render(&seed, *format, &name)?, output.as_deref(), out)?;
        }
    }
    Ok(0)
}

/// Parses `args` (program name first) and runs the command, printing errors
/// to stderr. Usage and input errors give exit code 2.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match execute(&cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
