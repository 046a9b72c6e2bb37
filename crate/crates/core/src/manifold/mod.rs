//! The discrete (θ, z, v, d) symbol manifold and its factorised channel vectors.

mod gray;
mod grid;
mod metric;
pub mod null_surface;
mod qam;
mod steering;
mod stm;

pub use gray::{gray_decode, gray_encode};
pub use grid::{build_grid, decode_symbol, encode_bits, word_to_bits, GridIndex, GridMode, GridParams, ManifoldGrid};
pub use metric::{orthogonality_metric, OrthWeights};
pub use null_surface::{kappa, null_surface_velocity};
pub use qam::Constellation;
pub use steering::{channel_vector, manifold_correlation, steering_vectors, Symbol4D};
pub use stm::{gradient_for_velocity, stm_ramp_phase, StmRamp};
