use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use waldkit::cli::{run_suite, FormulationFlag, Suite, SuiteConfig};
use waldkit::Error;

#[derive(Parser)]
#[command(name = "waldkit", version, about = "Run the waldkit verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite and write `<suite>.json` and `<suite>.txt`.
    Run(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    Sdot,
    Additivity,
    QcatCompare,
    K0,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    Modern,
    Classical,
    Both,
}

#[derive(clap::Args)]
struct RunArgs {
    suite: SuiteArg,
    /// Flat TOML config; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `pointed_sets` or `vect_f2`, optionally `name:size`; repeatable.
    #[arg(long)]
    instance: Vec<String>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, value_enum)]
    formulation: Option<FormulationArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(args: &RunArgs) -> Result<SuiteConfig, Error> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            SuiteConfig::from_toml(&text).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("{}: {}", p.display(), m)),
                e => e,
            })?
        }
        None => SuiteConfig::default(),
    };
    if !args.instance.is_empty() {
        cfg.instances = args.instance.clone();
    }
    if let Some(s) = args.size {
        cfg.size = s;
        // a bare --size resizes descriptors without an explicit size
        cfg.instances = cfg.instances.iter().map(|d| if args.instance.is_empty() { d.split(':').next().unwrap().to_string() } else { d.clone() }).collect();
    }
    cfg.n_max = args.n_max.unwrap_or(cfg.n_max);
    cfg.m_max = args.m_max.unwrap_or(cfg.m_max);
    cfg.trunc = args.trunc.unwrap_or(cfg.trunc);
    if let Some(f) = args.formulation {
        cfg.formulation = match f {
            FormulationArg::Modern => FormulationFlag::Modern,
            FormulationArg::Classical => FormulationFlag::Classical,
            FormulationArg::Both => FormulationFlag::Both,
        };
    }
    if let Some(o) = &args.out {
        cfg.out = o.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn threads() -> Result<(), Error> {
    if let Ok(v) = std::env::var("WALDKIT_THREADS") {
        let n: usize = v.parse().map_err(|_| Error::Config(format!("WALDKIT_THREADS: not a number: {:?}", v)))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Config(format!("WALDKIT_THREADS: {}", e)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;
    let cfg = match threads().and_then(|_| config(&args)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let suite = match args.suite {
        SuiteArg::Axioms => Suite::Axioms,
        SuiteArg::Sdot => Suite::Sdot,
        SuiteArg::Additivity => Suite::Additivity,
        SuiteArg::QcatCompare => Suite::QcatCompare,
        SuiteArg::K0 => Suite::K0,
        SuiteArg::All => Suite::All,
    };
    let report = match run_suite(&cfg, suite) {
        Ok(r) => r,
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    if let Err(e) = report.write() {
        eprintln!("error: writing reports: {}", e);
        return ExitCode::from(1);
    }
    print!("{}", report.summary());
    ExitCode::from(report.status.exit_code() as u8)
}
