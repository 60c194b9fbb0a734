use std::fmt;
use std::sync::Arc;

use super::cochain::{coboundary, CochainHandle};
use crate::braid::{p3_free_part, project_b3_mod_center, BraidWord, GroupId, B3};
use crate::error::{Error, Result};

/// Evaluation side of a quasimorphism. `eval_power` may be overridden with
/// something faster than expanding `g^n`.
pub trait QmEval: Send + Sync {
    fn eval(&self, g: &BraidWord) -> f64;

    fn eval_power(&self, g: &BraidWord, n: u64) -> f64 {
        self.eval(&g.pow(n as i64))
    }
}

struct FnQm<F>(F);

impl<F: Fn(&BraidWord) -> f64 + Send + Sync> QmEval for FnQm<F> {
    fn eval(&self, g: &BraidWord) -> f64 {
        (self.0)(g)
    }
}

/// A real function on a group with a recorded additivity defect bound.
#[derive(Clone)]
pub struct QmHandle {
    group: GroupId,
    inner: Arc<dyn QmEval>,
    pub defect_estimate: f64,
    /// `|q(g^k) - k q(g)| <= (k + 1) * homogeneity_tolerance`.
    pub homogeneity_tolerance: f64,
    pub description: String,
}

impl fmt::Debug for QmHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QmHandle")
            .field("group", &self.group)
            .field("defect_estimate", &self.defect_estimate)
            .field("homogeneity_tolerance", &self.homogeneity_tolerance)
            .field("description", &self.description)
            .finish()
    }
}

impl QmHandle {
    pub fn from_eval(
        group: GroupId,
        defect_estimate: f64,
        description: impl Into<String>,
        inner: impl QmEval + 'static,
    ) -> QmHandle {
        QmHandle {
            group,
            inner: Arc::new(inner),
            defect_estimate,
            homogeneity_tolerance: f64::INFINITY,
            description: description.into(),
        }
    }

    pub fn from_fn(
        group: GroupId,
        defect_estimate: f64,
        description: impl Into<String>,
        f: impl Fn(&BraidWord) -> f64 + Send + Sync + 'static,
    ) -> QmHandle {
        QmHandle::from_eval(group, defect_estimate, description, FnQm(f))
    }

    pub fn zero(group: GroupId) -> QmHandle {
        let mut q = QmHandle::from_fn(group, 0.0, "0", |_| 0.0);
        q.homogeneity_tolerance = 0.0;
        q
    }

    /// The homomorphism `g -> signed count of generator gen`.
    pub fn generator_count(group: GroupId, gen: u8) -> QmHandle {
        let mut q = QmHandle::from_fn(group, 0.0, format!("count(g{gen})"), move |g| {
            g.generator_count(gen) as f64
        });
        q.homogeneity_tolerance = 0.0;
        q
    }

    pub fn group(&self) -> &GroupId {
        &self.group
    }

    pub fn eval(&self, g: &BraidWord) -> Result<f64> {
        if *g.group() != self.group {
            return Err(Error::GroupMismatch {
                expected: self.group.to_string(),
                found: g.group().to_string(),
            });
        }
        Ok(self.inner.eval(g))
    }

    pub fn eval_unchecked(&self, g: &BraidWord) -> f64 {
        self.inner.eval(g)
    }

    pub fn eval_power(&self, g: &BraidWord, n: u64) -> f64 {
        self.inner.eval_power(g, n)
    }

    /// `sum_i w_i q_i`, all on the same group.
    pub fn linear_combination(terms: &[(f64, QmHandle)]) -> Result<QmHandle> {
        let group = match terms.first() {
            Some((_, q)) => q.group.clone(),
            None => return Err(Error::InvalidConfig("empty linear combination".into())),
        };
        if let Some((_, q)) = terms.iter().find(|(_, q)| q.group != group) {
            return Err(Error::GroupMismatch {
                expected: group.to_string(),
                found: q.group.to_string(),
            });
        }
        let defect = terms.iter().map(|(w, q)| w.abs() * q.defect_estimate).sum();
        let tol = terms
            .iter()
            .map(|(w, q)| w.abs() * q.homogeneity_tolerance)
            .sum();
        let desc = terms
            .iter()
            .map(|(w, q)| format!("{w}*{}", q.description))
            .collect::<Vec<_>>()
            .join(" + ");
        let mut out = QmHandle::from_eval(group, defect, desc, Combination(terms.to_vec()));
        out.homogeneity_tolerance = tol;
        Ok(out)
    }

    /// `q o map` on `group`; `map` must be a homomorphism into `q.group()`.
    pub fn pullback(
        &self,
        group: GroupId,
        label: &str,
        map: impl Fn(&BraidWord) -> BraidWord + Send + Sync + 'static,
    ) -> QmHandle {
        let desc = format!("{}({})", label, self.description);
        let mut out = QmHandle::from_eval(
            group,
            self.defect_estimate,
            desc,
            Pullback {
                inner: self.clone(),
                map: Box::new(map),
            },
        );
        out.homogeneity_tolerance = self.homogeneity_tolerance;
        out
    }

    /// Pulls back along the canonical projection `P3 -> F2` or `B3 -> Z/2 * Z/3`.
    pub fn pullback_to(&self, target: &GroupId) -> Result<QmHandle> {
        match (&self.group, target) {
            (GroupId::FreeGroup(2), GroupId::P3) => {
                Ok(self.pullback(GroupId::P3, "free", p3_free_part))
            }
            (GroupId::FreeProduct(o), t) if *t == B3 && o.as_slice() == [2, 3] => {
                Ok(self.pullback(B3, "psl", |g| project_b3_mod_center(g).expect("B3 word")))
            }
            (from, to) if from == to => Ok(self.clone()),
            (from, to) => Err(Error::InvalidConfig(format!(
                "no canonical projection {to} -> {from}"
            ))),
        }
    }
}

struct Combination(Vec<(f64, QmHandle)>);

impl QmEval for Combination {
    fn eval(&self, g: &BraidWord) -> f64 {
        self.0.iter().map(|(w, q)| w * q.inner.eval(g)).sum()
    }

    fn eval_power(&self, g: &BraidWord, n: u64) -> f64 {
        self.0
            .iter()
            .map(|(w, q)| w * q.inner.eval_power(g, n))
            .sum()
    }
}

type WordMap = Box<dyn Fn(&BraidWord) -> BraidWord + Send + Sync>;

struct Pullback {
    inner: QmHandle,
    map: WordMap,
}

impl QmEval for Pullback {
    fn eval(&self, g: &BraidWord) -> f64 {
        self.inner.inner.eval(&(self.map)(g))
    }

    fn eval_power(&self, g: &BraidWord, n: u64) -> f64 {
        self.inner.inner.eval_power(&(self.map)(g), n)
    }
}

struct Homogenized {
    inner: QmHandle,
    scale: u64,
}

impl QmEval for Homogenized {
    fn eval(&self, g: &BraidWord) -> f64 {
        self.inner.inner.eval_power(g, self.scale) / self.scale as f64
    }

    fn eval_power(&self, g: &BraidWord, n: u64) -> f64 {
        self.inner.inner.eval_power(g, n * self.scale) / self.scale as f64
    }
}

pub const DEFAULT_DEPTH: u32 = 12;

/// `q'(g) = q(g^(2^depth)) / 2^depth`. Differs from the true homogenization
/// by at most `defect / 2^depth`; the new defect bound is
/// `2 D + 3 D / 2^depth`.
pub fn homogenize(q: &QmHandle, depth: u32) -> Result<QmHandle> {
    if depth == 0 || depth > 40 {
        return Err(Error::InvalidConfig(format!(
            "homogenization depth {depth} outside 1..=40"
        )));
    }
    let scale = 1u64 << depth;
    let d = q.defect_estimate;
    let tol = d / scale as f64;
    let mut out = QmHandle::from_eval(
        q.group.clone(),
        2.0 * d + 3.0 * tol,
        format!("hom{depth}({})", q.description),
        Homogenized {
            inner: q.clone(),
            scale,
        },
    );
    out.homogeneity_tolerance = tol.min(q.homogeneity_tolerance);
    Ok(out)
}

/// Degree 1: `c(g0, g1) = q(g1 g0^-1)`. Degree 2: its coboundary, bounded by
/// `3 * defect`.
pub fn qm_to_cochain(q: &QmHandle, degree: usize) -> Result<CochainHandle> {
    let q1 = q.clone();
    let c1 = CochainHandle::new(
        q.group.clone(),
        1,
        format!("c[{}]", q.description),
        move |x| {
            let g = x[1].mul(&x[0].inverse()).expect("same group");
            q1.inner.eval(&g)
        },
    );
    match degree {
        1 => Ok(c1),
        2 => Ok(coboundary(&c1).with_bound(3.0 * q.defect_estimate)),
        d => Err(Error::InvalidDegree(d)),
    }
}
