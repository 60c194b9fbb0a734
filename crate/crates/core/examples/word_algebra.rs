//! Words in B3, the pure subgroup P3 = F2 x Z, and the quotient B3 / centre.
//!
//! `cargo run --example word_algebra`
use ggbraids::braid::{
    b3_equal, conjugate_in_group, embed_p3, full_twist, is_pure, permutation_of,
    project_b3_mod_center, pure_to_p3, BraidWord, GroupId, B3,
};

fn main() -> ggbraids::Result<()> {
    let u = BraidWord::parse(&B3, "s1 s2 s1")?;
    let v = BraidWord::parse(&B3, "s2 s1 s2")?;
    println!("s1 s2 s1 == s2 s1 s2 in B3: {}", b3_equal(&u, &v)?);

    let delta2 = full_twist(3)?;
    println!(
        "full twist {delta2}, permutation {}",
        permutation_of(&delta2)?
    );
    println!("image mod centre: {}", project_b3_mod_center(&delta2)?);

    let w = BraidWord::parse(&B3, "s1 s1 s2 s2")?;
    println!("{w} pure: {}", is_pure(&w)?);
    let p = pure_to_p3(&w)?;
    println!("as a P3 word: {p}");
    println!(
        "embedded back: {} (equal: {})",
        embed_p3(&p)?,
        b3_equal(&embed_p3(&p)?, &w)?
    );

    let a = BraidWord::parse(&GroupId::FreeGroup(2), "a b a^-1")?;
    let b = BraidWord::parse(&GroupId::FreeGroup(2), "b")?;
    println!(
        "a b a^-1 ~ b in F2: {}",
        conjugate_in_group(&a, &b, &GroupId::FreeGroup(2))?
    );
    let psl = GroupId::psl();
    let x = BraidWord::parse(&psl, "x y x^-1")?;
    let y = BraidWord::parse(&psl, "y")?;
    println!(
        "x y x^-1 ~ y in {psl}: {}",
        conjugate_in_group(&x, &y, &psl)?
    );
    Ok(())
}
