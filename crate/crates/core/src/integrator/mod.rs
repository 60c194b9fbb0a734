//! Monte Carlo estimates of the induced cochains and the epsilon sweep.
//!
//! Samples are drawn in fixed-size batches, batch `k` from stream `k` of a
//! ChaCha8 generator keyed by the seed, and merged in batch order, so a
//! report depends only on the seed and not on the worker count.

mod estimate;
mod lambda;
mod sampling;
mod sweep;

pub use estimate::{
    mc_gamma_hat, type_volume, EstimateOptions, EstimateReport, TypeBreakdown, BATCH, MIN_SAMPLES,
};
pub use lambda::{lambda_at, lambda_constant, LambdaConstant};
pub use sampling::{sample_configuration, sample_point};
pub use sweep::{epsilon_sweep, SweepPoint, SweepReport};
