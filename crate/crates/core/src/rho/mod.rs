//! Region layouts, the model flows realizing `rho_eps`, configuration types
//! and the symbolic case tables.

mod classify;
mod flows;
pub mod geometry;
mod layout;

pub use classify::{classify_type, nearest_type, predicted_gamma, Prediction, TypeSignature};
pub use flows::{
    p_group, rho_flow, ModelFlow, RhoModel, SphereRotation, StarRotation, TorusAxis, TorusShear,
};
pub use layout::{
    build_regions, min_feasible_epsilon, sphere_chart, sphere_chart_inv, strip_area, BandLayout,
    Geometry, Profile, RegionSpec, SphereLayout, TorusLayout, MAX_EPSILON,
};
