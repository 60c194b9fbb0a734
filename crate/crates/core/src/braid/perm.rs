use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::BraidWord;
use crate::error::{Error, Result};

/// A permutation of `1..=m`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// Builds from one-based images; fails unless bijective.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in images {
            if i == 0 || i > m || seen[i - 1] {
                return Err(Error::InvalidWord(format!("not a permutation: {images:?}")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|i| i - 1).collect(),
        })
    }

    /// Transposition of `i` and `i+1` (one-based) on `m` points.
    pub fn adjacent_transposition(m: usize, i: usize) -> Permutation {
        let mut p = Permutation::identity(m);
        p.images.swap(i - 1, i);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub(crate) fn swap_in_place(&mut self, i: usize) {
        // right multiplication by (i+1, i+2): self o tau
        self.images.swap(i, i + 1);
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut any = false;
        for start in 0..m {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Image in the symmetric group, `s_i -> (i, i+1)`, with
/// `perm(uv) = perm(u) o perm(v)`.
pub fn permutation_of(w: &BraidWord) -> Result<Permutation> {
    let m = w.group().strands().ok_or_else(|| Error::UnsupportedGroup {
        op: "permutation_of",
        group: w.group().to_string(),
    })?;
    let mut p = Permutation::identity(m);
    for l in w.letters() {
        p.swap_in_place(l.gen as usize);
    }
    Ok(p)
}

pub fn is_pure(w: &BraidWord) -> Result<bool> {
    Ok(permutation_of(w)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::group::{GroupId, B3};

    fn b3(s: &str) -> BraidWord {
        BraidWord::parse(&B3, s).unwrap()
    }

    #[test]
    fn examples() {
        assert!(permutation_of(&b3("e")).unwrap().is_identity());
        assert_eq!(permutation_of(&b3("s1")).unwrap().images(), vec![2, 1, 3]);
        // s1 s2 = (1 2) o (2 3): 1 -> 2, 2 -> 3, 3 -> 1
        let p = permutation_of(&b3("s1 s2")).unwrap();
        assert_eq!((p.apply(1), p.apply(2), p.apply(3)), (2, 3, 1));
        assert_eq!(p.to_string(), "(1 2 3)");
        assert!(is_pure(&b3("s1 s1")).unwrap());
        assert!(!is_pure(&b3("s1")).unwrap());
        assert!(is_pure(&b3("s1 s2 s1 s1 s2 s1")).unwrap());
    }

    #[test]
    fn unsupported() {
        let w = BraidWord::parse(&GroupId::P3, "a").unwrap();
        assert!(matches!(
            permutation_of(&w),
            Err(Error::UnsupportedGroup { .. })
        ));
    }

    #[test]
    fn sphere_b4() {
        let w = BraidWord::parse(&GroupId::SphereB4, "d3").unwrap();
        assert_eq!(permutation_of(&w).unwrap().images(), vec![1, 2, 4, 3]);
    }

    #[test]
    fn compose_inverse() {
        let p = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    }
}
