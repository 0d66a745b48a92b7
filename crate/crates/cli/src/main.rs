use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcr_core::catalog::{self, Bell};
use qcr_core::io::{load_config, save_state};
use qcr_core::sweep::{self, Family, SweepSpec, SURFACE_STEPS};
use qcr_core::{verify, Error, QuantumState, RoofConfig};

/// Entanglement sweeps, verification and state files for the catalog families.
#[derive(Parser)]
#[command(name = "qcr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate measures over a parameter grid and write CSV.
    Sweep(SweepArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Write a catalog state to a CSV file.
    State(StateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// ghz_w, smolin or wn_mix.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long, default_value_t = 0.0)]
    from: f64,
    #[arg(long, default_value_t = 1.0)]
    to: f64,
    /// Grid points; per axis for fig2.
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated measure columns.
    #[arg(long, value_delimiter = ',')]
    measures: Vec<String>,
    /// Register size for wn_mix.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// JSON roof configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the report as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct StateArgs {
    /// ghz, w, bell, rho_ghz_w, psi4, phi_abd, rho_abd, rho_abd_family,
    /// smolin, psi6, rho_wn_mix, psi_n1.
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long)]
    n: Option<usize>,
    /// Bell state index 0..3: Phi+, Phi-, Psi+, Psi-.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Checks,
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Csv(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => run_verify(args),
        Command::State(args) => run_state(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn roof_config(path: Option<&Path>, seed: Option<u64>) -> Result<RoofConfig, Failure> {
    let mut config = match path {
        Some(p) => load_config(p)?,
        None => RoofConfig::default(),
    };
    if let Some(s) = seed {
        config.seed = s;
    }
    Ok(config)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run_sweep(args: SweepArgs) -> Result<(), Failure> {
    let roof_config = roof_config(args.config.as_deref(), args.seed)?;
    let family = match (args.preset, args.family.as_deref()) {
        (Some(Preset::Fig2), None) => {
            let steps = args.steps.unwrap_or(SURFACE_STEPS);
            let rows = sweep::tau3_surface(steps, steps)?;
            sweep::write_surface(&rows, output(args.out.as_deref())?)?;
            return Ok(());
        }
        (Some(Preset::Fig1), None) => Family::GhzW,
        (Some(Preset::Fig3), None) => Family::Smolin,
        (None, Some("wn_mix")) => Family::WnMix(args.n),
        (None, Some(name)) => name.parse()?,
        (Some(_), Some(_)) => return Err(Failure::Usage("--preset and --family are exclusive".into())),
        (None, None) => return Err(Failure::Usage("need --preset or --family".into())),
    };
    let mut spec = SweepSpec::preset(family);
    spec.start = args.from;
    spec.stop = args.to;
    spec.roof_config = roof_config;
    if let Some(steps) = args.steps {
        spec.steps = steps;
    }
    if !args.measures.is_empty() {
        spec.measures = args.measures;
    }
    spec.validate()?;
    let records = sweep::run_sweep(&spec)?;
    sweep::write_sweep(&spec, &records, output(args.out.as_deref())?)?;
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let config = roof_config(args.config.as_deref(), args.seed)?;
    let report = verify::run(&config);
    println!("{report}");
    if let Some(path) = &args.out {
        std::fs::write(path, report.to_json()?)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run_state(args: StateArgs) -> Result<(), Failure> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("{} needs --{flag}", args.family)))
    };
    let need_n = || {
        args.n
            .ok_or_else(|| Failure::Usage(format!("{} needs --n", args.family)))
    };
    let state = match args.family.as_str() {
        "ghz" => QuantumState::Pure(catalog::ghz(need_n()?)?),
        "w" => QuantumState::Pure(catalog::w(need_n()?)?),
        "bell" => {
            let i = args.index.ok_or_else(|| Failure::Usage("bell needs --index".into()))?;
            QuantumState::Pure(catalog::bell(Bell::from_index(i)?))
        }
        "rho_ghz_w" => QuantumState::Mixed(catalog::rho_ghz_w(need(args.p, "p")?)?),
        "psi4" => QuantumState::Pure(catalog::psi4(need(args.p, "p")?)?),
        "phi_abd" => QuantumState::Pure(catalog::phi_abd(
            need(args.alpha, "alpha")?,
            need(args.p, "p")?,
            args.phi,
        )?),
        "rho_abd" => QuantumState::Mixed(catalog::rho_abd(need(args.p, "p")?)?),
        "rho_abd_family" => QuantumState::Mixed(catalog::rho_abd_family(
            need(args.alpha, "alpha")?,
            need(args.p, "p")?,
        )?),
        "smolin" => QuantumState::Mixed(catalog::smolin(need(args.p, "p")?)?),
        "psi6" => QuantumState::Pure(catalog::psi6(need(args.p, "p")?)?),
        "rho_wn_mix" => QuantumState::Mixed(catalog::rho_wn_mix(need_n()?, need(args.alpha, "alpha")?)?),
        "psi_n1" => QuantumState::Pure(catalog::psi_n1(need_n()?, need(args.alpha, "alpha")?)?),
        other => return Err(Failure::Usage(format!("unknown state family {other:?}"))),
    };
    save_state(&args.out, &state)?;
    Ok(())
}
