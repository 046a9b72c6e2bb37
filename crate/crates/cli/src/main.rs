//! `fstm <experiment> --config run.json [options]`
//!
//! Exit status: 0 on success, 1 for configuration or usage errors, 2 when the
//! experiment itself fails.

use anyhow::Context;
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use fstm_core::channel::Scheme;
use fstm_core::experiments::{run, ExperimentName, ExperimentSpec};
use fstm_core::{Error, RunConfig, SystemConfig};

#[derive(Parser, Debug)]
#[command(name = "fstm", version, about = "Fresnel space-time modulation experiments")]
struct Cli {
    /// corr_sweep, abs_gain, spec_eff, nf_spread, btsm_quant, capacity, dfnt-bench, detect or beam_map
    experiment: String,
    /// JSON file overriding the defaults; keys not given keep their preset value.
    #[arg(long)]
    config: PathBuf,
    /// Start from the full-scale preset (N = n_t = 4096, 64 trials) instead of the desk one.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination; the metadata goes next to it with a .json extension.
    /// Without it the CSV is written to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated subset of fsm, btsm, ttd, otfs, ldma.
    #[arg(long, value_delimiter = ',')]
    schemes: Vec<String>,

    /// dfnt-bench: transform sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// dfnt-bench: timing repetitions per size.
    #[arg(long)]
    reps: Option<usize>,
    /// dfnt-bench: modelled compute rate in FLOP/s.
    #[arg(long)]
    flops_rate: Option<f64>,
    /// dfnt-bench: users in the complexity model.
    #[arg(long)]
    users: Option<usize>,

    /// detect: SNR points in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    snr: Vec<f64>,
    /// detect: symbols per SNR point.
    #[arg(long)]
    symbols: Option<usize>,
    /// detect: angle count.
    #[arg(long)]
    angles: Option<usize>,
    /// detect: depth count.
    #[arg(long)]
    depths: Option<usize>,
    /// detect: velocity count.
    #[arg(long)]
    velocities: Option<usize>,
    /// detect: QAM order.
    #[arg(long)]
    qam: Option<usize>,
}

enum Failure {
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

fn build_spec(cli: &Cli) -> anyhow::Result<ExperimentSpec> {
    let name: ExperimentName = cli.experiment.parse()?;
    let base = if cli.full {
        RunConfig {
            system: SystemConfig { n: 4096, n_t: 4096, n_mc: 64, ..SystemConfig::default() },
            ..RunConfig::default()
        }
    } else {
        RunConfig::desk()
    };
    let text = std::fs::read_to_string(&cli.config).with_context(|| format!("reading {}", cli.config.display()))?;
    let mut config =
        RunConfig::from_json_str(&base, &text).with_context(|| format!("in {}", cli.config.display()))?;
    if let Some(seed) = cli.seed {
        config.system.seed = seed;
    }
    let g = &mut config.grid;
    g.a = cli.angles.unwrap_or(g.a);
    g.b = cli.depths.unwrap_or(g.b);
    g.c = cli.velocities.unwrap_or(g.c);
    g.qam_order = cli.qam.unwrap_or(g.qam_order);

    let mut spec = ExperimentSpec::new(name, config);
    if !cli.schemes.is_empty() {
        spec.schemes = cli
            .schemes
            .iter()
            .map(|s| Scheme::parse_with(s.trim(), &spec.config.schemes))
            .collect::<Result<_, Error>>()?;
    }
    let e = &mut spec.extra;
    if !cli.sizes.is_empty() {
        e.bench_sizes = cli.sizes.clone();
    }
    e.bench_reps = cli.reps.unwrap_or(e.bench_reps);
    e.flops_rate = cli.flops_rate.unwrap_or(e.flops_rate);
    e.users_k = cli.users.unwrap_or(e.users_k);
    if !cli.snr.is_empty() {
        e.snr_sweep_db = cli.snr.clone();
    }
    e.n_symbols = cli.symbols.unwrap_or(e.n_symbols);
    spec.output_path = cli.out.clone();
    Ok(spec)
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let spec = build_spec(cli).map_err(Failure::Config)?;
    let result = run(&spec).map_err(|e| match e {
        Error::InvalidConfig(_) | Error::Unknown { .. } => Failure::Config(e.into()),
        other => Failure::Runtime(other.into()),
    })?;
    match &spec.output_path {
        Some(path) => {
            let meta = result.write(path).map_err(|e| Failure::Runtime(e.into()))?;
            eprintln!("wrote {} and {}", path.display(), meta.display());
        }
        None => print!("{}", result.to_csv()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
