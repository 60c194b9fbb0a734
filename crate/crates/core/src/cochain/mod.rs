//! Homogeneous cochains, coboundaries, Brooks quasimorphisms and
//! homogenization.

mod brooks;
#[allow(clippy::module_inception)]
mod cochain;
mod quasimorphism;
mod sampler;
mod spec;

pub use brooks::brooks_qm;
pub use cochain::{coboundary, CochainFn, CochainHandle};
pub use quasimorphism::{homogenize, qm_to_cochain, QmEval, QmHandle, DEFAULT_DEPTH};
pub use sampler::{sup_norm_estimate, WordSampler};
pub use spec::{ClassSpec, QmSpec, QmTerm};
