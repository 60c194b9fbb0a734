use super::free_product;
use super::group::{GroupId, B3};
use super::word::{free_reduce, BraidWord, Letter};
use crate::conventions::{PSL_S1, PSL_S1_INV, PSL_S2, PSL_S2_INV};
use crate::error::{Error, Result};

fn require_b3(w: &BraidWord, op: &'static str) -> Result<()> {
    if *w.group() != B3 {
        return Err(Error::UnsupportedGroup {
            op,
            group: w.group().to_string(),
        });
    }
    Ok(())
}

/// Sum of exponents; a homomorphism `B_m -> Z`.
pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.exponent_sum()
}

/// Image in `B3 / <Delta^2> = Z/2 * Z/3` in normal form.
pub fn project_b3_mod_center(w: &BraidWord) -> Result<BraidWord> {
    require_b3(w, "project_b3_mod_center")?;
    let mut letters = Vec::with_capacity(3 * w.len());
    for l in w.letters() {
        letters.extend_from_slice(match (l.gen, l.inv) {
            (0, false) => PSL_S1,
            (0, true) => PSL_S1_INV,
            (1, false) => PSL_S2,
            _ => PSL_S2_INV,
        });
    }
    Ok(free_reduce(&BraidWord::from_letters_unchecked(
        GroupId::psl(),
        letters,
    )))
}

/// Word problem in `B3`: the map to `PSL(2,Z) x Z` (projection, exponent sum)
/// is injective because the kernel of the projection is `<Delta^2>`.
pub fn b3_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    Ok(
        exponent_sum(u) == exponent_sum(v)
            && project_b3_mod_center(u)? == project_b3_mod_center(v)?,
    )
}

pub(crate) fn b3_conjugate(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if exponent_sum(u) != exponent_sum(v) {
        return Ok(false);
    }
    let pu = project_b3_mod_center(u)?;
    let pv = project_b3_mod_center(v)?;
    Ok(free_product::conjugate(pu.letters(), pv.letters(), &[2, 3]))
}

/// `(s1 s2 ... s(m-1))^m` in `B_m`.
pub fn full_twist(m: usize) -> Result<BraidWord> {
    if !(2..=255).contains(&m) {
        return Err(Error::InvalidArity(m));
    }
    let row: Vec<Letter> = (0..m - 1).map(|i| Letter::pos(i as u8)).collect();
    Ok(BraidWord::new(GroupId::Braid(m as u8), row)?.pow(m as i64))
}

/// `Delta = s1 s2 s1`.
pub fn half_twist() -> BraidWord {
    BraidWord::from_letters_unchecked(B3, vec![Letter::pos(0), Letter::pos(1), Letter::pos(0)])
}
