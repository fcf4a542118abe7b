use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use lamres::arithmetic::{CheckRegistry, CheckSettings, SampleBounds};
use lamres::drivers::DriverRegistry;
use lamres::format::{ConfigFile, TraceFile};
use lamres::model::{max_order, support, Configuration};
use lamres::resolution::ResolutionTrace;
use lamres::transform::render_set;
use lamres::{Error, ErrorClass};

const REPORT_HEADER: &str = "# lamres report v1";

#[derive(Parser)]
#[command(
    name = "lamres",
    version,
    about = "Blow-up sequences for marked monomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest order along P and the order at each chart's distinguished point.
    Order { config: PathBuf },
    /// Minimal strata of the support.
    Support { config: PathBuf },
    /// One blow-up at a comma-separated list of components.
    Blowup {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        center: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order reduction until the support is empty.
    Reduce {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blow-ups until every total transform is a single monomial.
    Principalize {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Principalization with the stage at which the strict transform separates.
    Resolve {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized Frobenius-lift and oracle checks.
    CheckLambda {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long, env = "LAMRES_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SampleBounds::default().samples)]
        samples: usize,
        /// Run only the named checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Re-applies a trace to its recorded input and prints the final state.
    Replay {
        #[arg(long)]
        trace: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            print!("{REPORT_HEADER}\n{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let class = e.downcast_ref::<Error>().map(Error::class);
            let (code, kind) = match class {
                Some(ErrorClass::Contract) => (2, "contract violation"),
                _ => (1, "validation error"),
            };
            eprintln!("lamres: {kind}: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn load(path: &Path) -> anyhow::Result<Configuration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg = ConfigFile::parse(&text)
        .and_then(|f| f.to_config())
        .map_err(|e| anyhow!(e).context(format!("in {}", path.display())))?;
    Ok(cfg)
}

fn run(command: Command) -> anyhow::Result<String> {
    let mut out = String::new();
    match command {
        Command::Order { config } => {
            let cfg = load(&config)?;
            writeln!(out, "max_order: {}", max_order(&cfg))?;
            for chart in cfg.charts() {
                writeln!(out, "chart {}: {}", chart.name, chart.full_order())?;
            }
        }
        Command::Support { config } => {
            let cfg = load(&config)?;
            let strata = support(&cfg);
            writeln!(out, "strata: {}", strata.len())?;
            for s in &strata {
                let chart = &cfg.charts()[s.chart].name;
                writeln!(out, "chart {chart}: {}", render_set(&cfg, &s.vanishing))?;
            }
        }
        Command::Blowup {
            config,
            center,
            out: path,
        } => {
            let cfg = load(&config)?;
            let refs: Vec<&str> = center.iter().map(String::as_str).collect();
            let center = cfg.ids(&refs)?;
            let trace = ResolutionTrace::single(&cfg, &center)?;
            emit("blowup", &trace, path.as_deref(), &mut out)?;
        }
        Command::Reduce { config, out: path } => drive("reduce", &config, path, &mut out)?,
        Command::Principalize { config, out: path } => {
            drive("principalize", &config, path, &mut out)?
        }
        Command::Resolve { config, out: path } => drive("resolve", &config, path, &mut out)?,
        Command::CheckLambda {
            primes,
            seed,
            samples,
            only,
        } => check_lambda(primes, seed, samples, &only, &mut out)?,
        Command::Replay { trace } => {
            let text = fs::read_to_string(&trace)
                .with_context(|| format!("reading {}", trace.display()))?;
            let file = TraceFile::parse(&text)?;
            let state = file.replay()?;
            if state != file.final_state {
                return Err(Error::InconsistentTrace(
                    "replayed final state differs from the recorded one".into(),
                )
                .into());
            }
            writeln!(out, "replayed: {} records", file.records.len())?;
            writeln!(out, "{}", state.to_json())?;
        }
    }
    Ok(out)
}

fn drive(name: &str, config: &Path, path: Option<PathBuf>, out: &mut String) -> anyhow::Result<()> {
    let cfg = load(config)?;
    let drivers = DriverRegistry::standard();
    let driver = drivers
        .get(name)
        .ok_or_else(|| anyhow!("no driver named {name}"))?;
    let trace = driver.run(&cfg)?;
    emit(name, &trace, path.as_deref(), out)
}

fn emit(
    command: &str,
    trace: &ResolutionTrace,
    path: Option<&Path>,
    out: &mut String,
) -> anyhow::Result<()> {
    let file = TraceFile::from_trace(command, trace);
    writeln!(out, "command: {command}")?;
    writeln!(out, "input_digest: {}", file.input_digest)?;
    for r in &file.records {
        writeln!(
            out,
            "stage {} centre {{{}}} -> {}",
            r.stage,
            r.center.join(","),
            r.exceptional
        )?;
        for outcome in &r.replaced {
            for child in &outcome.children {
                writeln!(out, "  {}: {}", child.name, child.local)?;
            }
        }
    }
    writeln!(out, "steps: {}", file.summary.steps)?;
    writeln!(out, "final_max_order: {}", file.summary.final_max_order)?;
    writeln!(out, "principal: {}", file.summary.principal)?;
    if let Some(weak) = &file.weak_resolution {
        writeln!(out, "separation_stage: {}", weak.separation_stage)?;
        for (chart, comps) in &weak.strict_transform {
            writeln!(out, "strict_transform {chart}: {{{}}}", comps.join(","))?;
        }
    }
    if let Some(path) = path {
        fs::write(path, file.to_json()).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "trace: {}", path.display())?;
    }
    Ok(())
}

fn check_lambda(
    primes: Vec<u64>,
    seed: u64,
    samples: usize,
    only: &[String],
    out: &mut String,
) -> anyhow::Result<()> {
    let registry = CheckRegistry::standard();
    for name in only {
        if registry.get(name).is_none() {
            return Err(Error::Validation(format!(
                "unknown check '{name}', expected one of {}",
                registry.names().join(", ")
            ))
            .into());
        }
    }
    let settings = CheckSettings {
        primes,
        seed,
        bounds: SampleBounds {
            samples,
            ..SampleBounds::default()
        },
    };
    writeln!(out, "seed: {seed}")?;
    let mut failed = Vec::new();
    for check in registry.iter() {
        if !only.is_empty() && !only.iter().any(|n| n == check.name()) {
            continue;
        }
        let report = registry.run_one(check, &settings)?;
        let verdict = if report.passed() { "pass" } else { "FAIL" };
        writeln!(
            out,
            "{verdict} {}: {} cases, {} failures",
            report.name, report.cases, report.failures
        )?;
        if let Some(first) = &report.first_failure {
            writeln!(out, "  first failure: {first}")?;
        }
        if !report.passed() {
            failed.push(report.name);
        }
    }
    if !failed.is_empty() {
        print!("{REPORT_HEADER}\n{out}");
        out.clear();
        return Err(Error::Internal(format!("checks failed: {}", failed.join(", "))).into());
    }
    Ok(())
}
