//! Points, configurations and isotopies on the model surfaces, and braid
//! extraction from tethered loops.

mod dump;
mod extract;
mod isotopy;
mod surface;

pub use dump::{extract_braid, tethered_loop, Trajectory};
pub use extract::{flow_word, gamma, perturb, Extractor};
pub use isotopy::{Flow, Isotopy, Piece, Reparam, RigidRotation};
pub use surface::{Configuration, Surface, SurfacePoint};
