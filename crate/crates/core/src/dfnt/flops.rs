use serde::Serialize;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrecodingMethod {
    Svd,
    MmseZf,
    Mf,
    Omp,
    Somp,
    Dfnt,
}

impl PrecodingMethod {
    pub const ALL: [PrecodingMethod; 6] = [Self::Svd, Self::MmseZf, Self::Mf, Self::Omp, Self::Somp, Self::Dfnt];

    pub fn name(self) -> &'static str {
        match self {
            Self::Svd => "svd",
            Self::MmseZf => "mmse_zf",
            Self::Mf => "mf",
            Self::Omp => "omp",
            Self::Somp => "somp",
            Self::Dfnt => "dfnt",
        }
    }
}

impl FromStr for PrecodingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown { kind: "precoding method", name: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlopEstimate {
    pub flops: f64,
    pub seconds: f64,
    /// Latency in units of the channel coherence time.
    pub ratio_vs_tc: f64,
}

/// Closed-form operation counts per precoder update.
pub fn flop_estimate(method: PrecodingMethod, n: usize, k: usize, flops_rate: f64, t_c: f64) -> Result<FlopEstimate> {
    if n < 2 {
        return Err(Error::Domain { value: n as f64, domain: "N >= 2" });
    }
    let nf = n as f64;
    let kf = k as f64;
    if matches!(method, PrecodingMethod::Omp | PrecodingMethod::Somp) && k < 1 {
        return Err(Error::Domain { value: kf, domain: "K >= 1" });
    }
    let flops = match method {
        PrecodingMethod::Svd | PrecodingMethod::MmseZf => 4.0 / 3.0 * nf.powi(3),
        PrecodingMethod::Mf => nf * nf,
        PrecodingMethod::Omp => kf * nf * nf,
        PrecodingMethod::Somp => kf * kf * nf * nf,
        PrecodingMethod::Dfnt => 5.0 * nf * nf.log2() + 2.0 * nf,
    };
    let seconds = flops / flops_rate;
    Ok(FlopEstimate { flops, seconds, ratio_vs_tc: seconds / t_c })
}
