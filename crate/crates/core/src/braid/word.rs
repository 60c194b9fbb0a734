use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::{GroupId, Kind};
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub const fn pos(gen: u8) -> Letter {
        Letter { gen, inv: false }
    }

    pub const fn neg(gen: u8) -> Letter {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// An immutable word over the alphabet of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    group: GroupId,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(group: GroupId, letters: Vec<Letter>) -> Result<BraidWord> {
        let rank = group.rank();
        if let Some(l) = letters.iter().find(|l| l.gen as usize >= rank) {
            return Err(Error::InvalidWord(format!(
                "generator index {} out of range for {group} (rank {rank})",
                l.gen
            )));
        }
        Ok(BraidWord { group, letters })
    }

    pub(crate) fn from_letters_unchecked(group: GroupId, letters: Vec<Letter>) -> BraidWord {
        debug_assert!(letters.iter().all(|l| (l.gen as usize) < group.rank()));
        BraidWord { group, letters }
    }

    pub fn identity(group: GroupId) -> BraidWord {
        BraidWord {
            group,
            letters: Vec::new(),
        }
    }

    /// Single generator `gen` raised to `exp`.
    pub fn generator_power(group: GroupId, gen: u8, exp: i64) -> Result<BraidWord> {
        let l = if exp < 0 {
            Letter::neg(gen)
        } else {
            Letter::pos(gen)
        };
        BraidWord::new(group, vec![l; exp.unsigned_abs() as usize])
    }

    /// Parses whitespace separated tokens `name`, `name^k`; `e` or an empty
    /// string is the identity.
    pub fn parse(group: &GroupId, text: &str) -> Result<BraidWord> {
        let names = group.generator_names();
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::InvalidWord(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let gen = names.iter().position(|n| n == name).ok_or_else(|| {
                Error::InvalidWord(format!("unknown generator `{name}` for {group}"))
            })?;
            let l = if exp < 0 {
                Letter::neg(gen as u8)
            } else {
                Letter::pos(gen as u8)
            };
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(BraidWord {
            group: group.clone(),
            letters,
        })
    }

    pub fn group(&self) -> &GroupId {
        &self.group
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord {
            group: self.group.clone(),
            letters,
        }
    }

    /// Concatenation `self` then `other`; fails on group mismatch.
    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                expected: self.group.to_string(),
                found: other.group.to_string(),
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            group: self.group.clone(),
            letters,
        })
    }

    pub fn pow(&self, n: i64) -> BraidWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let k = n.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            group: self.group.clone(),
            letters,
        }
    }

    /// `self * other * self^-1`.
    pub fn conjugate_by(&self, other: &BraidWord) -> Result<BraidWord> {
        other.mul(self)?.mul(&other.inverse())
    }

    pub fn reduced(&self) -> BraidWord {
        free_reduce(self)
    }

    /// Sum of the letter exponents.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    /// Signed count of letters with generator index `gen`.
    pub fn generator_count(&self, gen: u8) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.exponent())
            .sum()
    }

    /// Same letters read in another group with a compatible alphabet.
    pub fn reinterpret(&self, group: GroupId) -> Result<BraidWord> {
        BraidWord::new(group, self.letters.clone())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let names = self.group.generator_names();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", names[l.gen as usize])?;
            if l.inv {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Serialized as `{"group": "...", "word": "..."}`.
impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BraidWord", 2)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("word", &self.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            group: GroupId,
            word: String,
        }
        let r = Raw::deserialize(d)?;
        BraidWord::parse(&r.group, &r.word).map_err(serde::de::Error::custom)
    }
}

/// Syllable `g^exp` of a free-product word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Syllable {
    pub gen: u8,
    pub exp: i64,
}

pub(crate) fn normalize_exp(exp: i64, order: u32) -> i64 {
    if order == 0 {
        exp
    } else {
        exp.rem_euclid(order as i64)
    }
}

/// Free-product normal form as a list of syllables with exponents in the
/// canonical range (`1..order` for torsion generators, nonzero otherwise).
pub(crate) fn syllables(letters: &[Letter], orders: &[u32]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last_mut() {
            Some(top) if top.gen == l.gen => {
                top.exp = normalize_exp(top.exp + l.exponent(), orders[l.gen as usize]);
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => {
                let exp = normalize_exp(l.exponent(), orders[l.gen as usize]);
                if exp != 0 {
                    out.push(Syllable { gen: l.gen, exp });
                }
            }
        }
    }
    out
}

pub(crate) fn expand(syls: &[Syllable]) -> Vec<Letter> {
    let mut out = Vec::new();
    for s in syls {
        let l = if s.exp < 0 {
            Letter::neg(s.gen)
        } else {
            Letter::pos(s.gen)
        };
        out.extend(std::iter::repeat_n(l, s.exp.unsigned_abs() as usize));
    }
    out
}

pub(crate) fn cancel_pairs(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Normal form of a word: free reduction in free groups, alternating
/// syllable form with exponents reduced modulo the orders in free products,
/// `w z^k` with `w` reduced in `F2` for `P3`, and pair cancellation only for
/// braid groups.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let letters = match w.group.kind() {
        Kind::Relators => cancel_pairs(&w.letters),
        Kind::FreeProduct => expand(&syllables(&w.letters, &w.group.orders())),
        Kind::P3 => {
            let (free, z): (Vec<Letter>, Vec<Letter>) = w.letters.iter().partition(|l| l.gen != 2);
            let k: i64 = z.iter().map(|l| l.exponent()).sum();
            let mut out = cancel_pairs(&free);
            let zl = if k < 0 {
                Letter::neg(2)
            } else {
                Letter::pos(2)
            };
            out.extend(std::iter::repeat_n(zl, k.unsigned_abs() as usize));
            out
        }
    };
    BraidWord {
        group: w.group.clone(),
        letters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::group::B3;

    fn f2(s: &str) -> BraidWord {
        BraidWord::parse(&GroupId::FreeGroup(2), s).unwrap()
    }

    #[test]
    fn cancellation() {
        assert!(free_reduce(&f2("a a^-1")).is_empty());
        assert_eq!(free_reduce(&f2("a b b^-1 a")), f2("a a"));
    }

    #[test]
    fn torsion_normalization() {
        let g = GroupId::TorusB2;
        let w = BraidWord::parse(&g, "a a b").unwrap();
        assert_eq!(free_reduce(&w).to_string(), "b");
        let psl = GroupId::psl();
        let w = BraidWord::parse(&psl, "y^-1 x x y^3").unwrap();
        assert_eq!(free_reduce(&w).to_string(), "y y");
        let w = BraidWord::parse(&psl, "y^-1").unwrap();
        assert_eq!(free_reduce(&w).to_string(), "y y");
    }

    #[test]
    fn p3_moves_center_last() {
        let w = BraidWord::parse(&GroupId::P3, "z a z^-1 z b a^-1 a").unwrap();
        assert_eq!(free_reduce(&w).to_string(), "a b z");
    }

    #[test]
    fn braid_only_cancels() {
        let w = BraidWord::parse(&B3, "s1 s2 s2^-1 s1 s2 s1 s2^-1").unwrap();
        assert_eq!(free_reduce(&w).to_string(), "s1 s1 s2 s1 s2^-1");
    }

    #[test]
    fn parse_print_roundtrip() {
        for s in ["e", "s1", "s1 s2^-1 s1", "s2^-1 s2^-1"] {
            assert_eq!(BraidWord::parse(&B3, s).unwrap().to_string(), s);
        }
        assert_eq!(
            BraidWord::parse(&B3, "s1^3 s2^-2").unwrap().to_string(),
            "s1 s1 s1 s2^-1 s2^-1"
        );
        assert!(BraidWord::parse(&B3, "s3").is_err());
        assert!(BraidWord::parse(&B3, "s1^x").is_err());
        assert!(BraidWord::parse(&B3, "").unwrap().is_empty());
    }

    #[test]
    fn invalid_index() {
        assert!(matches!(
            BraidWord::new(B3, vec![Letter::pos(2)]),
            Err(Error::InvalidWord(_))
        ));
    }

    #[test]
    fn serde_roundtrip() {
        let w = BraidWord::parse(&GroupId::P3, "a b^-1 z").unwrap();
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(j, r#"{"group":"P3","word":"a b^-1 z"}"#);
        let back: BraidWord = serde_json::from_str(&j).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn mismatch() {
        let a = f2("a");
        let b = BraidWord::parse(&GroupId::P3, "a").unwrap();
        assert!(matches!(a.mul(&b), Err(Error::GroupMismatch { .. })));
    }
}
