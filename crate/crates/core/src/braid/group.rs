use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The groups the library computes in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    /// Artin braid group `B_m` on generators `s1 .. s(m-1)`.
    Braid(u8),
    /// `P3 = F2 x Z` on `a = s1^2`, `b = s2^2`, `z = (s1 s2 s1)^2`.
    P3,
    /// `P4(S2)/Z`, free on `d1sq, d2sq`.
    SphereP4,
    /// `B4(S2)/Z` on `d1, d2, d3`. Only letter cancellation and permutations.
    SphereB4,
    /// `P2(T2)/Z`, free on `a1, b1`.
    TorusP2,
    /// `B2(T2)/Z = Z/2 * Z/2 * Z/2` on `a, b, c`.
    TorusB2,
    FreeGroup(u8),
    /// Free product of cyclic groups; order 0 means infinite cyclic.
    FreeProduct(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    /// Has relations we do not normalize; reduction cancels `g g^-1` only.
    Relators,
    /// `F2 x Z` with the central letter last.
    P3,
    /// Free product of cyclic groups; orders from `orders()`.
    FreeProduct,
}

pub const B3: GroupId = GroupId::Braid(3);

impl GroupId {
    pub fn rank(&self) -> usize {
        match self {
            GroupId::Braid(m) => (*m as usize).saturating_sub(1),
            GroupId::P3 => 3,
            GroupId::SphereP4 | GroupId::TorusP2 => 2,
            GroupId::SphereB4 | GroupId::TorusB2 => 3,
            GroupId::FreeGroup(n) => *n as usize,
            GroupId::FreeProduct(o) => o.len(),
        }
    }

    pub(crate) fn kind(&self) -> Kind {
        match self {
            GroupId::Braid(_) | GroupId::SphereB4 => Kind::Relators,
            GroupId::P3 => Kind::P3,
            _ => Kind::FreeProduct,
        }
    }

    /// Cyclic orders of the generators (0 = infinite) for free-product groups.
    pub fn orders(&self) -> Vec<u32> {
        match self {
            GroupId::TorusB2 => vec![2, 2, 2],
            GroupId::FreeProduct(o) => o.clone(),
            _ => vec![0; self.rank()],
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        match self {
            GroupId::Braid(m) => (1..*m).map(|i| format!("s{i}")).collect(),
            GroupId::P3 => names(&["a", "b", "z"]),
            GroupId::SphereP4 => names(&["d1sq", "d2sq"]),
            GroupId::SphereB4 => names(&["d1", "d2", "d3"]),
            GroupId::TorusP2 => names(&["a1", "b1"]),
            GroupId::TorusB2 => names(&["a", "b", "c"]),
            GroupId::FreeGroup(n) => (0..*n)
                .map(|i| {
                    if i < 26 {
                        ((b'a' + i) as char).to_string()
                    } else {
                        format!("g{}", i + 1)
                    }
                })
                .collect(),
            GroupId::FreeProduct(o) if o.as_slice() == [2, 3] => names(&["x", "y"]),
            GroupId::FreeProduct(o) => (1..=o.len()).map(|i| format!("g{i}")).collect(),
        }
    }

    /// Number of strands of the symmetric-group projection, if any.
    pub fn strands(&self) -> Option<usize> {
        match self {
            GroupId::Braid(m) => Some(*m as usize),
            GroupId::SphereB4 => Some(4),
            _ => None,
        }
    }

    pub fn psl() -> GroupId {
        GroupId::FreeProduct(vec![2, 3])
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Braid(m) => write!(f, "B{m}"),
            GroupId::P3 => write!(f, "P3"),
            GroupId::SphereP4 => write!(f, "P4S2"),
            GroupId::SphereB4 => write!(f, "B4S2"),
            GroupId::TorusP2 => write!(f, "P2T2"),
            GroupId::TorusB2 => write!(f, "B2T2"),
            GroupId::FreeGroup(n) => write!(f, "F{n}"),
            GroupId::FreeProduct(o) => {
                let parts: Vec<String> = o
                    .iter()
                    .map(|&k| {
                        if k == 0 {
                            "Z".to_string()
                        } else {
                            format!("Z{k}")
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidConfig(format!("unknown group `{s}`"));
        let g = match t {
            "P3" => GroupId::P3,
            "P4S2" => GroupId::SphereP4,
            "B4S2" => GroupId::SphereB4,
            "P2T2" => GroupId::TorusP2,
            "B2T2" => GroupId::TorusB2,
            _ if t.contains('*') => {
                let mut orders = Vec::new();
                for p in t.split('*') {
                    let p = p.trim();
                    let rest = p.strip_prefix('Z').ok_or_else(bad)?;
                    orders.push(if rest.is_empty() {
                        0
                    } else {
                        rest.parse().map_err(|_| bad())?
                    });
                }
                GroupId::FreeProduct(orders)
            }
            _ if t.starts_with('B') => {
                let m: u8 = t[1..].parse().map_err(|_| bad())?;
                if m < 2 {
                    return Err(Error::InvalidArity(m as usize));
                }
                GroupId::Braid(m)
            }
            _ if t.starts_with('F') => GroupId::FreeGroup(t[1..].parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(g)
    }
}

impl Serialize for GroupId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
