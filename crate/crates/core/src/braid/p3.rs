use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::group::{GroupId, B3};
use super::perm::{permutation_of, Permutation};
use super::word::{free_reduce, BraidWord, Letter};
use crate::conventions::{SL2_S1, SL2_S2};
use crate::error::{Error, Result};

const A: u8 = 0;
const B: u8 = 1;
const Z: u8 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SVector {
    pub s1: i64,
    pub s2: i64,
}

impl std::ops::Add for SVector {
    type Output = SVector;
    fn add(self, o: SVector) -> SVector {
        SVector {
            s1: self.s1 + o.s1,
            s2: self.s2 + o.s2,
        }
    }
}

/// Signed counts of the first two generators (`a`, `b` in `P3`); `z` is
/// ignored. Also meaningful for the rank-2 quotients `P4S2` and `P2T2`.
pub fn s_vector(w: &BraidWord) -> SVector {
    SVector {
        s1: w.generator_count(A),
        s2: w.generator_count(B),
    }
}

/// `a -> s1 s1`, `b -> s2 s2`, `z -> s1 s2 s1 s1 s2 s1`.
pub fn embed_p3(w: &BraidWord) -> Result<BraidWord> {
    if *w.group() != GroupId::P3 {
        return Err(Error::GroupMismatch {
            expected: "P3".into(),
            found: w.group().to_string(),
        });
    }
    let s1 = Letter::pos(0);
    let s2 = Letter::pos(1);
    let mut out = Vec::with_capacity(2 * w.len());
    for l in w.letters() {
        let img: &[Letter] = match l.gen {
            A => &[s1, s1],
            B => &[s2, s2],
            _ => &[s1, s2, s1, s1, s2, s1],
        };
        if l.inv {
            out.extend(img.iter().rev().map(|x| x.inverse()));
        } else {
            out.extend_from_slice(img);
        }
    }
    Ok(BraidWord::from_letters_unchecked(B3, out))
}

/// The `F2` part of a `P3` word (drops `z`) as a word in `F2`.
pub fn p3_free_part(w: &BraidWord) -> BraidWord {
    let letters = w.letters().iter().copied().filter(|l| l.gen != Z).collect();
    free_reduce(&BraidWord::from_letters_unchecked(
        GroupId::FreeGroup(2),
        letters,
    ))
}

type Mat = [[i64; 2]; 2];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn mat_inv(x: &Mat) -> Mat {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

fn sl2_of(w: &BraidWord) -> Mat {
    let mut m = [[1, 0], [0, 1]];
    for l in w.letters() {
        let g = if l.gen == 0 { SL2_S1 } else { SL2_S2 };
        let g = if l.inv { mat_inv(&g) } else { g };
        m = mat_mul(&m, &g);
    }
    m
}

fn push_power(out: &mut Vec<Letter>, gen: u8, k: i64) {
    let l = if k < 0 {
        Letter::neg(gen)
    } else {
        Letter::pos(gen)
    };
    out.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
}

fn nearest(num: i64, den: i64) -> i64 {
    (num as f64 / den as f64).round() as i64
}

/// Writes a matrix of the level-2 congruence subgroup as `sign * W(A, B)`
/// with `A = s1^2`, `B = s2^2`, by Euclid on the first column.
fn decompose_level2(mut m: Mat) -> (Vec<Letter>, i64) {
    let mut out = Vec::new();
    loop {
        let (p, r) = (m[0][0], m[1][0]);
        if r == 0 {
            debug_assert!(p.abs() == 1 && m[0][1] % 2 == 0);
            push_power(&mut out, A, (m[0][1] / p) / 2);
            return (out, p);
        }
        if p.abs() > r.abs() {
            let k = nearest(p, 2 * r);
            m[0][0] -= 2 * k * m[1][0];
            m[0][1] -= 2 * k * m[1][1];
            push_power(&mut out, A, k);
        } else {
            let k = nearest(r, 2 * p);
            m[1][0] -= 2 * k * m[0][0];
            m[1][1] -= 2 * k * m[0][1];
            push_power(&mut out, B, -k);
        }
    }
}

/// Rewrites a short pure braid through `SL(2,Z)`.
fn short_pure_to_p3(w: &BraidWord) -> Vec<Letter> {
    let (mut letters, sign) = decompose_level2(sl2_of(w));
    let free = BraidWord::from_letters_unchecked(GroupId::P3, letters.clone());
    let rest = w.exponent_sum() - 2 * free.exponent_sum();
    debug_assert_eq!(rest % 6, 0);
    let k = rest / 6;
    debug_assert_eq!(if k % 2 == 0 { 1 } else { -1 }, sign);
    push_power(&mut letters, Z, k);
    letters
}

struct SchreierTable {
    /// `entry[coset][letter]` is `rep(coset) * letter * rep(next)^-1` in `P3`.
    entry: Vec<[Vec<Letter>; 4]>,
    next: Vec<[usize; 4]>,
}

fn letter_index(l: Letter) -> usize {
    2 * l.gen as usize + l.inv as usize
}

fn table() -> &'static SchreierTable {
    static T: OnceLock<SchreierTable> = OnceLock::new();
    T.get_or_init(|| {
        let reps: Vec<BraidWord> = ["e", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1"]
            .iter()
            .map(|s| BraidWord::parse(&B3, s).unwrap())
            .collect();
        let perms: Vec<Permutation> = reps.iter().map(|r| permutation_of(r).unwrap()).collect();
        let letters = [
            Letter::pos(0),
            Letter::neg(0),
            Letter::pos(1),
            Letter::neg(1),
        ];
        let mut entry = Vec::new();
        let mut next = Vec::new();
        for rep in &reps {
            let mut e: [Vec<Letter>; 4] = Default::default();
            let mut n = [0usize; 4];
            for &l in &letters {
                let u = rep
                    .mul(&BraidWord::from_letters_unchecked(B3, vec![l]))
                    .unwrap();
                let p = permutation_of(&u).unwrap();
                let j = perms.iter().position(|q| *q == p).unwrap();
                let pure = u.mul(&reps[j].inverse()).unwrap();
                e[letter_index(l)] = short_pure_to_p3(&pure);
                n[letter_index(l)] = j;
            }
            entry.push(e);
            next.push(n);
        }
        SchreierTable { entry, next }
    })
}

/// Rewrites a pure braid of `B3` in the generators `a, b, z` of `P3`, in
/// normal form. Linear in the word length.
pub fn pure_to_p3(w: &BraidWord) -> Result<BraidWord> {
    if *w.group() != B3 {
        return Err(Error::UnsupportedGroup {
            op: "pure_to_p3",
            group: w.group().to_string(),
        });
    }
    let t = table();
    let mut coset = 0;
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let i = letter_index(l);
        out.extend_from_slice(&t.entry[coset][i]);
        coset = t.next[coset][i];
    }
    if coset != 0 {
        return Err(Error::ImpureBraid(format!(
            "{w} has permutation {}",
            permutation_of(w)?
        )));
    }
    Ok(free_reduce(&BraidWord::from_letters_unchecked(
        GroupId::P3,
        out,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::b3::b3_equal;

    fn p3(s: &str) -> BraidWord {
        BraidWord::parse(&GroupId::P3, s).unwrap()
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed_p3(&p3("a")).unwrap().to_string(), "s1 s1");
        assert!(embed_p3(&p3("e")).unwrap().is_empty());
        assert_eq!(embed_p3(&p3("z")).unwrap().to_string(), "s1 s2 s1 s1 s2 s1");
        assert_eq!(embed_p3(&p3("b^-1")).unwrap().to_string(), "s2^-1 s2^-1");
    }

    #[test]
    fn s_vector_examples() {
        assert_eq!(s_vector(&p3("a")), SVector { s1: 1, s2: 0 });
        assert_eq!(s_vector(&p3("z")), SVector { s1: 0, s2: 0 });
        assert_eq!(s_vector(&p3("a b^-1 a z")), SVector { s1: 2, s2: -1 });
    }

    #[test]
    fn level2_decomposition() {
        // A B A^-1 as a matrix
        let w = p3("a b a^-1 z^-1");
        let letters = short_pure_to_p3(&embed_p3(&w).unwrap());
        assert_eq!(BraidWord::new(GroupId::P3, letters).unwrap().reduced(), w);
    }

    #[test]
    fn pure_rewrite_roundtrip() {
        for s in [
            "e",
            "a",
            "b",
            "z",
            "a b a^-1 b^-1",
            "z^-2 b a a",
            "a^-1 b^-1 z a b z^-1 b",
        ] {
            let w = p3(s).reduced();
            assert_eq!(pure_to_p3(&embed_p3(&w).unwrap()).unwrap(), w, "{s}");
        }
    }

    #[test]
    fn pure_rewrite_of_twisted_words() {
        let w = BraidWord::parse(&B3, "s1 s2 s1 s1 s2^-1 s1^-1").unwrap();
        let p = pure_to_p3(&w).unwrap();
        assert!(b3_equal(&embed_p3(&p).unwrap(), &w).unwrap());
        assert_eq!(p.to_string(), "b");
        let bad = BraidWord::parse(&B3, "s1").unwrap();
        assert!(matches!(pure_to_p3(&bad), Err(Error::ImpureBraid(_))));
    }
}
