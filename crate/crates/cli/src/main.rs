//! Command-line front end: classify fans, build polytopes, solve balancing,
//! evaluate tuning coefficients, and emit feasibility reports.
//!
//! Exit codes: 0 on success, 1 on input errors (including any per-file
//! failure in a batch), 2 on internal inconsistencies (independent
//! criteria disagreeing).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kcsc_core::error::Error;
use kcsc_core::rat::rat_from_str;
use kcsc_core::report::{
    batch, dtn_table, harmonics_table, render_json, render_text, run_report, ReportOptions,
};
use kcsc_core::Rat;

#[derive(Parser)]
#[command(name = "kcsc", about = "Feasibility and gluing data for toric Kcsc desingularizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct PipelineFlags {
    /// Anticanonical multiple; defaults to the fan file's value or the
    /// smallest one making all vertices integral.
    #[arg(long)]
    k: Option<u32>,
    /// Scalar curvature as an exact rational `p/q`; symbolic when absent.
    #[arg(long, allow_hyphen_values = true)]
    scalar_curvature: Option<String>,
    /// Gluing parameter as an exact rational in (0, 1); enables tuning.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// Analysis weight; defaults to the midpoint of the gluing window.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Decay constant of the local model metric (required for tuning).
    #[arg(long, allow_hyphen_values = true)]
    c_gamma: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit aligned text (the default).
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every maximal cone's quotient singularity.
    Classify {
        fan: PathBuf,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Compute the anticanonical polytope, correspondences, and barycenter.
    Polytope {
        fan: PathBuf,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Solve the balancing conditions over the admissible cones.
    Balance {
        fan: PathBuf,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Per-point tuning coefficients (requires --epsilon and --c-gamma).
    Tune {
        fan: PathBuf,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Full feasibility report.
    Report {
        fan: PathBuf,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Reports for every fan file in a directory, failures isolated.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Mode-indexed boundary-map matrices as CSV.
    DtnTable {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        max_gamma: i64,
    },
    /// Sphere eigenvalue and harmonic-dimension table as CSV.
    Harmonics {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        max_gamma: i64,
        /// Cyclic action `n:a1,a2,...` to add the invariant dimension column.
        #[arg(long)]
        cyclic: Option<String>,
    },
}

fn parse_rat_flag(name: &str, value: &Option<String>) -> Result<Option<Rat>, Error> {
    match value {
        None => Ok(None),
        Some(s) => rat_from_str(s).map(Some).map_err(|e| Error::Parse {
            location: format!("--{name}"),
            message: e.to_string(),
        }),
    }
}

fn options_from(flags: &PipelineFlags) -> Result<ReportOptions, Error> {
    Ok(ReportOptions {
        k: flags.k,
        scalar_curvature: parse_rat_flag("scalar-curvature", &flags.scalar_curvature)?,
        epsilon: parse_rat_flag("epsilon", &flags.epsilon)?,
        delta: parse_rat_flag("delta", &flags.delta)?,
        c_gamma: parse_rat_flag("c-gamma", &flags.c_gamma)?,
    })
}

fn parse_cyclic(spec: &str) -> Result<(u64, Vec<i64>), Error> {
    let bad = |msg: &str| Error::Parse {
        location: "--cyclic".into(),
        message: msg.into(),
    };
    let (order, weights) = spec.split_once(':').ok_or_else(|| bad("expected n:a1,a2,..."))?;
    let n: u64 = order.parse().map_err(|_| bad("order must be an integer"))?;
    let nums = weights
        .split(',')
        .map(|w| w.trim().parse::<i64>().map_err(|_| bad("weights must be integers")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, nums))
}

struct RunOutput {
    text: String,
    code: u8,
}

impl RunOutput {
    fn ok(text: String) -> Self {
        RunOutput { text, code: 0 }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<RunOutput, Error> {
    let mut out = String::new();
    match cli.command {
        Command::Classify { fan, flags } => {
            let report = run_report(&fan, &options_from(&flags)?)?;
            if flags.json {
                return Ok(RunOutput::ok(pretty(&report.cones)));
            }
            for cone in &report.cones {
                let functional = cone
                    .gorenstein_functional
                    .as_ref()
                    .map(|u| format!(" u=({})", u.join(", ")))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{:<4} order {:<3} smooth={} isolated={} su={}{}",
                    cone.label, cone.order, cone.is_smooth, cone.is_isolated, cone.is_su, functional
                );
            }
        }
        Command::Polytope { fan, flags } => {
            let report = run_report(&fan, &options_from(&flags)?)?;
            if flags.json {
                return Ok(RunOutput::ok(pretty(&report.polytope)));
            }
            let _ = writeln!(
                out,
                "anticanonical multiple {} with {} vertices",
                report.polytope.multiple, report.polytope.vertex_count
            );
            for entry in &report.polytope.cone_vertices {
                let _ = writeln!(out, "  {:<4} <-> ({})", entry.cone, entry.vertex.join(", "));
            }
            let _ = writeln!(out, "barycenter: ({})", report.polytope.barycenter.join(", "));
        }
        Command::Balance { fan, flags } => {
            let report = run_report(&fan, &options_from(&flags)?)?;
            match (&report.balancing, flags.json) {
                (Some(b), true) => return Ok(RunOutput::ok(pretty(b))),
                (Some(b), false) => {
                    let _ = writeln!(
                        out,
                        "admissible cones: {{{}}}",
                        report.su_isolated_cones.join(", ")
                    );
                    let _ = writeln!(out, "rank {} (full: {})", b.rank, b.full_rank);
                    match &b.witness {
                        Some(w) => {
                            let _ = writeln!(out, "b = ({})", w.b.join(", "));
                            let _ = writeln!(out, "c = ({})", w.c.join(", "));
                        }
                        None => {
                            let _ = writeln!(out, "no strictly positive balanced weights exist");
                        }
                    }
                }
                (None, _) => {
                    let _ = writeln!(out, "no admissible singular cones");
                }
            }
        }
        Command::Tune { fan, flags } => {
            let options = options_from(&flags)?;
            if options.epsilon.is_none() || options.c_gamma.is_none() {
                return Err(Error::MissingData(
                    "tuning requires --epsilon and --c-gamma".into(),
                ));
            }
            let report = run_report(&fan, &options)?;
            let Some(tuning) = &report.tuning else {
                return Err(Error::MissingData(
                    "no balanced admissible cones to tune".into(),
                ));
            };
            if flags.json {
                return Ok(RunOutput::ok(pretty(tuning)));
            }
            out.push_str(&render_text(&report));
        }
        Command::Report { fan, flags } => {
            let report = run_report(&fan, &options_from(&flags)?)?;
            if flags.json {
                out.push_str(&render_json(&report));
                out.push('\n');
            } else {
                out.push_str(&render_text(&report));
            }
        }
        Command::Batch { dir, flags } => {
            let outcome = batch(&dir, &options_from(&flags)?)?;
            if flags.json {
                out.push_str(&pretty(&outcome));
            } else {
                for entry in &outcome.entries {
                    match (&entry.report, &entry.error) {
                        (Some(r), _) => {
                            let _ = writeln!(out, "{:<24} {}", entry.file, r.verdict.as_str());
                        }
                        (None, Some(e)) => {
                            let _ = writeln!(out, "{:<24} FAILED: {e}", entry.file);
                        }
                        (None, None) => unreachable!("entry carries a report or an error"),
                    }
                }
                let _ = writeln!(
                    out,
                    "{} file(s), {} failure(s)",
                    outcome.entries.len(),
                    outcome.failures
                );
            }
            return Ok(RunOutput {
                text: out,
                code: if outcome.failures > 0 { 1 } else { 0 },
            });
        }
        Command::DtnTable { m, max_gamma } => {
            out.push_str(&dtn_table(m, max_gamma)?);
        }
        Command::Harmonics { m, max_gamma, cyclic } => {
            let parsed = cyclic.as_deref().map(parse_cyclic).transpose()?;
            out.push_str(&harmonics_table(m, max_gamma, parsed)?);
        }
    }
    Ok(RunOutput::ok(out))
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) -> bool {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(text.as_bytes()).and_then(|_| lock.flush()).is_ok()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            if !emit(&output.text) {
                return ExitCode::SUCCESS;
            }
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CriteriaMismatch { .. } | Error::SingularBoundaryMap { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
