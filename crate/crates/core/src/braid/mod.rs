//! Word algebra for the braid groups and their quotients.

mod b3;
mod free_product;
mod group;
mod p3;
mod perm;
mod word;

pub use b3::{b3_equal, exponent_sum, full_twist, half_twist, project_b3_mod_center};
pub use group::{GroupId, B3};
pub use p3::{embed_p3, p3_free_part, pure_to_p3, s_vector, SVector};
pub use perm::{is_pure, permutation_of, Permutation};
pub use word::{free_reduce, BraidWord, Letter};

use crate::error::{Error, Result};
use group::Kind;

/// Conjugacy decision. Complete for `B3`, `P3` and the free-product
/// quotients; `B_m` for `m != 3` and `B4S2` are unsupported.
pub fn conjugate_in_group(w1: &BraidWord, w2: &BraidWord, group: &GroupId) -> Result<bool> {
    for w in [w1, w2] {
        if w.group() != group {
            return Err(Error::GroupMismatch {
                expected: group.to_string(),
                found: w.group().to_string(),
            });
        }
    }
    match group.kind() {
        Kind::FreeProduct => Ok(free_product::conjugate(
            w1.letters(),
            w2.letters(),
            &group.orders(),
        )),
        Kind::P3 => {
            let z = |w: &BraidWord| w.generator_count(2);
            Ok(z(w1) == z(w2)
                && free_product::conjugate(
                    p3_free_part(w1).letters(),
                    p3_free_part(w2).letters(),
                    &[0, 0],
                ))
        }
        Kind::Relators if *group == B3 => b3::b3_conjugate(w1, w2),
        Kind::Relators => Err(Error::UnsupportedGroup {
            op: "conjugate_in_group",
            group: group.to_string(),
        }),
    }
}

/// Cyclic reduction in a free-product group: the shortest conjugate in
/// normal form, up to rotation.
pub fn cyclically_reduce(w: &BraidWord) -> Result<BraidWord> {
    if w.group().kind() != Kind::FreeProduct {
        return Err(Error::UnsupportedGroup {
            op: "cyclically_reduce",
            group: w.group().to_string(),
        });
    }
    let syl = free_product::cyclic_syllables(w.letters(), &w.group().orders());
    Ok(BraidWord::from_letters_unchecked(
        w.group().clone(),
        word::expand(&syl),
    ))
}

/// True for free groups and free products of cyclic groups.
pub fn is_free_product(g: &GroupId) -> bool {
    g.kind() == Kind::FreeProduct
}
