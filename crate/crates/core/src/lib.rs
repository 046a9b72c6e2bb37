//! Simulation library for near-field Fresnel space-time modulation over
//! extremely large arrays: symbols live on an (angle, depth, synthetic
//! velocity, QAM) manifold and are precoded with a chirp–FFT–chirp transform.

pub mod channel;
pub mod config;
pub mod detector;
pub mod dfnt;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod manifold;
pub mod metrics;
pub mod physics;
pub mod rng;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use experiments::{ExperimentName, ExperimentResult, ExperimentSpec};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use physics::{derive_geometry, DerivedGeometry, SystemConfig};
