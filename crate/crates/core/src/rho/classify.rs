use std::fmt;

use serde::{Deserialize, Serialize};

use super::layout::RegionSpec;
use crate::braid::{free_reduce, p3_free_part, s_vector, BraidWord, GroupId};
use crate::error::{Error, Result};
use crate::trajectory::{Configuration, Surface};

/// Per-region point counts; `good` iff every point lies in some `U_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeSignature {
    pub counts: Vec<usize>,
    pub good: bool,
}

impl TypeSignature {
    pub fn good(counts: &[usize]) -> TypeSignature {
        TypeSignature {
            counts: counts.to_vec(),
            good: true,
        }
    }

    /// All good types for `m` points in `k` regions, in lexicographic order.
    pub fn all_good(m: usize, k: usize) -> Vec<TypeSignature> {
        fn rec(m: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<TypeSignature>) {
            if k == 1 {
                prefix.push(m);
                out.push(TypeSignature::good(prefix));
                prefix.pop();
                return;
            }
            for i in (0..=m).rev() {
                prefix.push(i);
                rec(m - i, k - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, k, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_main(&self) -> bool {
        self.good && self.counts.iter().all(|&c| c == 1)
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))?;
        if !self.good {
            write!(f, "bad")?;
        }
        Ok(())
    }
}

/// Counts points per `U_i`; boundary points count as outside.
pub fn classify_type(x: &Configuration, r: &RegionSpec) -> TypeSignature {
    let k = r.u_areas().len();
    let mut counts = vec![0; k];
    let mut good = true;
    for p in &x.points {
        match r.region_of(p) {
            Some(i) => counts[i] += 1,
            None => good = false,
        }
    }
    TypeSignature { counts, good }
}

/// Type obtained by moving every bad point to the region of the nearest
/// base point. Used only for error budgets on the sphere and torus.
pub fn nearest_type(x: &Configuration, r: &RegionSpec) -> TypeSignature {
    let base = r.base_configuration();
    let mut counts = vec![0; base.len()];
    for p in &x.points {
        let i = r.region_of(p).unwrap_or_else(|| {
            (0..base.len())
                .min_by(|&a, &b| {
                    p.distance(&base.points[a])
                        .total_cmp(&p.distance(&base.points[b]))
                })
                .unwrap()
        });
        counts[i] += 1;
    }
    TypeSignature::good(&counts)
}

/// Predicted braid with the flag saying it holds only up to conjugacy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub word: BraidWord,
    pub conjugacy_only: bool,
}

fn power(group: &GroupId, gen: u8, k: i64) -> BraidWord {
    BraidWord::generator_power(group.clone(), gen, k).expect("generator in range")
}

/// Symbolic `gamma(rho_eps(alpha), x)` for a good type.
pub fn predicted_gamma(
    alpha: &BraidWord,
    t: &TypeSignature,
    surface: Surface,
) -> Result<Prediction> {
    if !t.good {
        return Err(Error::BadPointNoPrediction);
    }
    let group = crate::rho::p_group(surface);
    if *alpha.group() != group {
        return Err(Error::GroupMismatch {
            expected: group.to_string(),
            found: alpha.group().to_string(),
        });
    }
    if t.counts.len() != surface.model_strands() {
        return Err(Error::InvalidConfig(format!(
            "type {t} does not fit {surface}"
        )));
    }
    let s = s_vector(alpha);
    let c = &t.counts;
    let pred = match surface {
        Surface::Disc => {
            let z = |k| power(&group, 2, k);
            let a = |k| power(&group, 0, k);
            let (word, conj) = match (c[0], c[1], c[2]) {
                (1, 1, 1) => {
                    let free = p3_free_part(alpha);
                    (
                        BraidWord::new(group.clone(), free.letters().to_vec())?,
                        true,
                    )
                }
                (3, 0, 0) | (2, 1, 0) => (z(s.s1), false),
                (0, 0, 3) | (0, 1, 2) => (z(s.s2), false),
                (0, 3, 0) => (z(s.s1 + s.s2), false),
                (2, 0, 1) => (a(s.s1), true),
                (1, 0, 2) => (a(s.s2), true),
                (0, 2, 1) => (a(s.s1).mul(&z(s.s2))?, true),
                (1, 2, 0) => (z(s.s1).mul(&a(s.s2))?, true),
                _ => return Err(Error::InvalidConfig(format!("type {t} does not sum to 3"))),
            };
            Prediction {
                word: free_reduce(&word),
                conjugacy_only: conj,
            }
        }
        Surface::Sphere => {
            if c.iter().sum::<usize>() != 4 {
                return Err(Error::InvalidConfig(format!("type {t} does not sum to 4")));
            }
            if t.is_main() {
                Prediction {
                    word: free_reduce(alpha),
                    conjugacy_only: true,
                }
            } else {
                let e = s.s1 * i64::from(c[0] + c[1] == 2) + s.s2 * i64::from(c[1] + c[2] == 2);
                Prediction {
                    word: power(&group, 0, e),
                    conjugacy_only: true,
                }
            }
        }
        Surface::Torus => {
            if c.iter().sum::<usize>() != 2 {
                return Err(Error::InvalidConfig(format!("type {t} does not sum to 2")));
            }
            let word = if c[0] == 1 {
                free_reduce(alpha)
            } else {
                BraidWord::identity(group.clone())
            };
            Prediction {
                word,
                conjugacy_only: true,
            }
        }
    };
    Ok(pred)
}
