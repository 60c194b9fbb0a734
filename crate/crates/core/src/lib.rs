//! Braid extraction from area-preserving isotopies of the disc, sphere and
//! torus, the model homomorphisms `rho_eps` with their symbolic case tables,
//! and Monte Carlo estimates of the cochains they induce.

pub mod braid;
pub mod cli;
pub mod cochain;
pub mod conventions;
pub mod error;
pub mod integrator;
pub mod rho;
pub mod trajectory;

pub use error::{Error, Result};
