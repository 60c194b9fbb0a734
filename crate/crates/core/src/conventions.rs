//! Fixed generator conventions shared by every module.
//!
//! The braid generator `s_i` swaps the strands at x-ranks `i` and `i+1`.
//! A crossing is positive when the strand moving right (towards larger x)
//! has the smaller y-coordinate at the swap, so two points exchanging
//! counterclockwise produce `s1` and a full counterclockwise turn of an
//! enclosing disc produces the full twist. The mirror convention is obtained
//! by setting `crossing_sign = -1`.

use crate::braid::Letter;

/// Runtime copy of the orientation convention, so tests can flip it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    pub crossing_sign: i8,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            crossing_sign: CROSSING_SIGN,
        }
    }
}

pub const CROSSING_SIGN: i8 = 1;

/// Generator indices in `Z/2 * Z/3`: `x` has order 2, `y` has order 3.
pub const PSL_X: u8 = 0;
pub const PSL_Y: u8 = 1;

const X: Letter = Letter::pos(PSL_X);
const Y: Letter = Letter::pos(PSL_Y);

/// Images of `s1, s2, s1^-1, s2^-1` in `B3/Z = PSL(2,Z) = <x> * <y>`, chosen so
/// that `s1 s2 s1 -> x` and `s1 s2 -> y`.
pub const PSL_S1: &[Letter] = &[Y, Y, X];
pub const PSL_S2: &[Letter] = &[X, Y, Y];
pub const PSL_S1_INV: &[Letter] = &[X, Y];
pub const PSL_S2_INV: &[Letter] = &[Y, X];

/// Integer matrices of `s1, s2` in `SL(2,Z)`; `(s1 s2 s1)^2 = -I`.
pub const SL2_S1: [[i64; 2]; 2] = [[1, 1], [0, 1]];
pub const SL2_S2: [[i64; 2]; 2] = [[1, 0], [-1, 1]];

/// Default separation below which two strands count as colliding.
pub const DEFAULT_DELTA_SEP: f64 = 1e-9;
