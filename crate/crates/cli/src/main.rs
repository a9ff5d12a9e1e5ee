mod commands;
mod error;
mod record;
mod spec;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use copex::copula::Monotone;
use copex::measures::MeasureKind;
use copex::quad::QuadratureConfig;
use copex::tables::TableId;

use commands::{MeasureRequest, Outcome, SampleSource, SurfaceView};
use error::CliError;

const TOL_ENV: &str = "COPEX_QUAD_TOL";

#[derive(Parser)]
#[command(
    name = "copex",
    version,
    about = "Copula extropy measures, dependence checks and estimators"
)]
struct Cli {
    /// Emit JSON lines
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit long-format CSV
    #[arg(long, global = true)]
    csv: bool,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EngineArgs {
    /// Absolute tolerance (overrides COPEX_QUAD_TOL)
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Maximum bisections per axis
    #[arg(long, global = true)]
    max_depth: Option<u32>,
    /// Gauss-Legendre points per axis
    #[arg(long, global = true)]
    rule_order: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute extropy measures of a copula family member
    Measure(MeasureArgs),
    /// Resubstitution estimates and sample statistics from bivariate data
    Estimate(EstimateArgs),
    /// Recompute published tables
    VerifyTables(VerifyArgs),
    /// Evaluate the inequality suite
    Check(CheckArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// family[:p1[,p2]]
    spec: String,
    /// Sweep the first parameter over lo:hi:step
    #[arg(long, allow_hyphen_values = true)]
    sweep: Option<String>,
    #[arg(long)]
    cex: bool,
    #[arg(long)]
    ccex: bool,
    #[arg(long)]
    scex: bool,
    /// Extropy of the dual u+v-C
    #[arg(long)]
    dual: bool,
    /// Extropy of the co-copula 1-C(1-u,1-v)
    #[arg(long)]
    cocopula: bool,
    /// Horizontal section extropy at level a
    #[arg(long, value_name = "A")]
    horizontal: Option<f64>,
    /// Vertical section extropy at level a
    #[arg(long, value_name = "A")]
    vertical: Option<f64>,
    #[arg(long)]
    diagonal: bool,
    /// Weighted CCEx 1/4 int u C^2
    #[arg(long)]
    weighted: bool,
    /// int (u+v) C
    #[arg(long)]
    r: bool,
    /// int (u+v) Cbar
    #[arg(long)]
    r_star: bool,
    #[arg(long)]
    entropy: bool,
    #[arg(long)]
    survival_entropy: bool,
    /// Every measure the surface supports
    #[arg(long)]
    all: bool,
    /// Which surface built from the copula to measure
    #[arg(long, value_enum, default_value = "base")]
    surface: ViewArg,
    /// Monotone transforms of the margins, e.g. dec,inc
    #[arg(long)]
    transform: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Base,
    Survival,
    Dual,
    Cocopula,
}

#[derive(Args)]
struct EstimateArgs {
    /// Two-column CSV file
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    path: Option<PathBuf>,
    /// Embedded data set
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Surgery,
}

#[derive(Args)]
struct VerifyArgs {
    /// Table ids; all tables when omitted
    tables: Vec<String>,
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// family[:p1[,p2]]
    spec: String,
    #[arg(long, allow_hyphen_values = true)]
    sweep: Option<String>,
    /// Only the weighted-gap bound against Blest's eta
    #[arg(long)]
    blest: bool,
}

fn engine_config(args: &EngineArgs) -> Result<QuadratureConfig, CliError> {
    let mut cfg = QuadratureConfig::default();
    if let Ok(text) = std::env::var(TOL_ENV) {
        cfg.abs_tol = text
            .trim()
            .parse()
            .map_err(|_| CliError::parse(&text, format!("{TOL_ENV} must be a number")))?;
    }
    if let Some(t) = args.abs_tol {
        cfg.abs_tol = t;
    }
    if let Some(t) = args.rel_tol {
        cfg.rel_tol = t;
    }
    if let Some(d) = args.max_depth {
        cfg.max_depth = d;
    }
    if let Some(n) = args.rule_order {
        cfg.rule_order = n;
    }
    cfg.validate().map_err(|e| CliError::parse("engine", e))?;
    Ok(cfg)
}

fn parse_monotone(tok: &str) -> Result<Monotone, CliError> {
    match tok.trim() {
        "inc" | "increasing" => Ok(Monotone::Increasing),
        "dec" | "decreasing" => Ok(Monotone::Decreasing),
        other => Err(CliError::parse(other, "expected inc or dec")),
    }
}

fn measure_request<'a>(command: &'a str, a: &MeasureArgs) -> Result<MeasureRequest<'a>, CliError> {
    let specs = spec::expand(&a.spec, a.sweep.as_deref())?;
    let mut kinds = Vec::new();
    let flags = [
        (a.cex, MeasureKind::CEx),
        (a.ccex, MeasureKind::CCEx),
        (a.scex, MeasureKind::SCEx),
        (a.dual, MeasureKind::DualEx),
        (a.cocopula, MeasureKind::CoCopEx),
        (a.diagonal, MeasureKind::DiagonalEx),
        (a.weighted, MeasureKind::WeightedCCEx),
        (a.r, MeasureKind::RFunctional),
        (a.r_star, MeasureKind::RStarFunctional),
        (a.entropy, MeasureKind::CopulaEntropy),
        (a.survival_entropy, MeasureKind::SurvivalCopulaEntropy),
    ];
    kinds.extend(flags.iter().filter(|(on, _)| *on).map(|(_, k)| *k));
    for (level, make) in [
        (
            a.horizontal,
            MeasureKind::HorizontalEx as fn(f64) -> MeasureKind,
        ),
        (a.vertical, MeasureKind::VerticalEx),
    ] {
        if let Some(x) = level {
            if !(0.0..=1.0).contains(&x) {
                return Err(CliError::parse(
                    &x.to_string(),
                    "section level must lie in [0, 1]",
                ));
            }
            kinds.push(make(x));
        }
    }
    if kinds.is_empty() && !a.all {
        kinds.push(MeasureKind::CCEx);
    }
    let transform = match &a.transform {
        None => None,
        Some(t) => {
            let (x, y) = t
                .split_once(',')
                .ok_or_else(|| CliError::parse(t, "expected x,y such as dec,inc"))?;
            Some((parse_monotone(x)?, parse_monotone(y)?))
        }
    };
    let view = match a.surface {
        ViewArg::Base => SurfaceView::Base,
        ViewArg::Survival => SurfaceView::Survival,
        ViewArg::Dual => SurfaceView::Dual,
        ViewArg::Cocopula => SurfaceView::CoCopula,
    };
    Ok(MeasureRequest {
        command,
        specs,
        kinds,
        all: a.all,
        view,
        transform,
    })
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Measure(_) => "measure",
            Command::Estimate(_) => "estimate",
            Command::VerifyTables(_) => "verify-tables",
            Command::Check(_) => "check",
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = engine_config(&cli.engine)?;
    let command = cli.command.name();
    Ok(match &cli.command {
        Command::Measure(a) => commands::cmd_measure(&measure_request(command, a)?, &cfg),
        Command::Estimate(a) => {
            let source = match (&a.path, a.builtin) {
                (Some(p), _) => SampleSource::Path(p),
                (None, _) => SampleSource::Surgery,
            };
            commands::cmd_estimate(command, source, &cfg)
        }
        Command::VerifyTables(a) => {
            let tables = if a.all || a.tables.is_empty() {
                TableId::ALL.to_vec()
            } else {
                a.tables
                    .iter()
                    .map(|t| {
                        TableId::from_name(t).ok_or_else(|| CliError::parse(t, "unknown table id"))
                    })
                    .collect::<Result<_, _>>()?
            };
            commands::cmd_verify_tables(command, &tables, &cfg)
        }
        Command::Check(a) => {
            let specs = spec::expand(&a.spec, a.sweep.as_deref())?;
            commands::cmd_check(command, &specs, a.blest, &cfg)
        }
    })
}

fn emit(cli: &Cli, records: &[record::OutputRecord]) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    if cli.json {
        record::write_json_lines(records, &mut out)?;
    } else if cli.csv {
        record::write_csv(records, &mut out)?;
    } else {
        record::write_human(records, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

fn quiet_broken_pipe(e: CliError) -> Result<(), CliError> {
    match e {
        CliError::Io(io) if io.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Err(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = run(&cli).and_then(|outcome| {
        emit(&cli, &outcome.records).or_else(quiet_broken_pipe)?;
        outcome.status
    });
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("copex: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
