use serde::{Deserialize, Serialize};

use super::brooks::brooks_qm;
use super::cochain::CochainHandle;
use super::quasimorphism::{homogenize, qm_to_cochain, QmHandle, DEFAULT_DEPTH};
use crate::braid::{BraidWord, GroupId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QmTerm {
    pub pattern: String,
    #[serde(default = "one")]
    pub weight: f64,
}

fn one() -> f64 {
    1.0
}

fn default_depth() -> u32 {
    DEFAULT_DEPTH
}

/// A finite linear combination of Brooks quasimorphisms on `group`,
/// homogenized at `depth` (0 = not homogenized) and optionally pulled back
/// along the canonical projection from `pullback`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QmSpec {
    pub group: GroupId,
    pub terms: Vec<QmTerm>,
    #[serde(default = "default_depth")]
    pub depth: u32,
    #[serde(default)]
    pub pullback: Option<GroupId>,
}

impl QmSpec {
    /// Homogenized `h_{ab}` on `F2`, pulled back to `P3` by forgetting `z`.
    pub fn default_test_class() -> QmSpec {
        QmSpec {
            group: GroupId::FreeGroup(2),
            terms: vec![QmTerm {
                pattern: "a b".into(),
                weight: 1.0,
            }],
            depth: DEFAULT_DEPTH,
            pullback: Some(GroupId::P3),
        }
    }

    pub fn build(&self) -> Result<QmHandle> {
        if self.terms.is_empty() {
            return Ok(QmHandle::zero(
                self.pullback.clone().unwrap_or_else(|| self.group.clone()),
            ));
        }
        let mut parts = Vec::new();
        for t in &self.terms {
            let w = BraidWord::parse(&self.group, &t.pattern)?;
            parts.push((t.weight, brooks_qm(&w)?));
        }
        let mut q = QmHandle::linear_combination(&parts)?;
        if self.depth > 0 {
            q = homogenize(&q, self.depth)?;
        }
        match &self.pullback {
            Some(target) => q.pullback_to(target),
            None => Ok(q),
        }
    }

    pub fn target_group(&self) -> GroupId {
        self.pullback.clone().unwrap_or_else(|| self.group.clone())
    }
}

/// Cochain class used by the integrator: `qm = None` is the zero class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    #[serde(default)]
    pub qm: Option<QmSpec>,
    pub degree: usize,
    /// Group for the zero class.
    #[serde(default)]
    pub group: Option<GroupId>,
}

impl ClassSpec {
    pub fn zero(group: GroupId, degree: usize) -> ClassSpec {
        ClassSpec {
            qm: None,
            degree,
            group: Some(group),
        }
    }

    pub fn build(&self) -> Result<CochainHandle> {
        match &self.qm {
            Some(q) => qm_to_cochain(&q.build()?, self.degree),
            None => {
                let g = self
                    .group
                    .clone()
                    .ok_or_else(|| Error::InvalidConfig("zero class needs a group".into()))?;
                Ok(CochainHandle::zero(g, self.degree))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_class_value() {
        let q = QmSpec::default_test_class().build().unwrap();
        let w = BraidWord::parse(&GroupId::P3, "a b a^-1 b^-1 z a b a^-1 b^-1").unwrap();
        assert_eq!(q.eval(&w).unwrap(), 2.0);
    }

    #[test]
    fn json_roundtrip() {
        let s = r#"{"group":"F2","terms":[{"pattern":"a b"},{"pattern":"a a b","weight":-0.5}],"pullback":"P3"}"#;
        let spec: QmSpec = serde_json::from_str(s).unwrap();
        assert_eq!(spec.depth, DEFAULT_DEPTH);
        assert_eq!(spec.terms[1].weight, -0.5);
        let back: QmSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        assert!(spec.build().is_ok());
    }
}
