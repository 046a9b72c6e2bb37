//! Scenario runners wiring the modules into reproducible experiments, each
//! producing one CSV table plus a JSON metadata sidecar.

mod result;
mod sweeps;
mod tables;

pub use result::{ExperimentResult, Metadata, Series};
pub use sweeps::{
    abs_gain_from, run_abs_gain, run_btsm_quant, run_corr_sweep, run_spec_eff, spec_eff_from, sweep_velocities, velocity_sweep,
    CorrSweep, SWEEP_POINTS,
};
pub use tables::{run_beam_map, run_capacity, run_detect, run_dfnt_bench, run_nf_spread};

use serde::Serialize;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::channel::Scheme;
use crate::config::RunConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentName {
    CorrSweep,
    AbsGain,
    SpecEff,
    NfSpread,
    BtsmQuant,
    Capacity,
    DfntBench,
    Detect,
    BeamMap,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 9] = [
        Self::CorrSweep,
        Self::AbsGain,
        Self::SpecEff,
        Self::NfSpread,
        Self::BtsmQuant,
        Self::Capacity,
        Self::DfntBench,
        Self::Detect,
        Self::BeamMap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::CorrSweep => "corr_sweep",
            Self::AbsGain => "abs_gain",
            Self::SpecEff => "spec_eff",
            Self::NfSpread => "nf_spread",
            Self::BtsmQuant => "btsm_quant",
            Self::Capacity => "capacity",
            Self::DfntBench => "dfnt_bench",
            Self::Detect => "detect",
            Self::BeamMap => "beam_map",
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == key)
            .ok_or_else(|| Error::Unknown { kind: "experiment", name: s.to_string() })
    }
}

/// Options that only some experiments read.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtraOptions {
    /// Transform sizes for the scaling benchmark.
    pub bench_sizes: Vec<usize>,
    pub bench_reps: usize,
    /// Modelled compute rate [FLOP/s].
    pub flops_rate: f64,
    /// Users served in the complexity table.
    pub users_k: usize,
    pub snr_sweep_db: Vec<f64>,
    pub n_symbols: usize,
    /// Steering angle and the two velocities compared in the beam map.
    pub beam_theta: f64,
    pub beam_velocities: (f64, f64),
    pub beam_points: usize,
}

impl Default for ExtraOptions {
    fn default() -> Self {
        Self {
            bench_sizes: (8..=14).map(|p| 1usize << p).collect(),
            bench_reps: 3,
            flops_rate: 10e12,
            users_k: 10,
            snr_sweep_db: vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0],
            n_symbols: 10_000,
            beam_theta: 0.0,
            beam_velocities: (50.0, 100.0),
            beam_points: 101,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub name: ExperimentName,
    pub config: RunConfig,
    pub schemes: Vec<Scheme>,
    pub output_path: Option<PathBuf>,
    pub extra: ExtraOptions,
}

impl ExperimentSpec {
    /// All five schemes, default options.
    pub fn new(name: ExperimentName, config: RunConfig) -> Self {
        let schemes = Scheme::all(&config.schemes).to_vec();
        Self { name, config, schemes, output_path: None, extra: ExtraOptions::default() }
    }
}

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    match spec.name {
        ExperimentName::CorrSweep => run_corr_sweep(spec),
        ExperimentName::AbsGain => run_abs_gain(spec),
        ExperimentName::SpecEff => run_spec_eff(spec),
        ExperimentName::NfSpread => run_nf_spread(spec),
        ExperimentName::BtsmQuant => run_btsm_quant(spec),
        ExperimentName::Capacity => run_capacity(spec),
        ExperimentName::DfntBench => run_dfnt_bench(spec),
        ExperimentName::Detect => run_detect(spec),
        ExperimentName::BeamMap => run_beam_map(spec),
    }
}
