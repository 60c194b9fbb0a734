use std::fmt;
use std::sync::Arc;

use crate::braid::{BraidWord, GroupId};
use crate::error::{Error, Result};

pub type CochainFn = Arc<dyn Fn(&[BraidWord]) -> f64 + Send + Sync>;

/// A homogeneous `n`-cochain given by an evaluation function on
/// `(n+1)`-tuples.
#[derive(Clone)]
pub struct CochainHandle {
    group: GroupId,
    degree: usize,
    eval: CochainFn,
    /// Proven upper bound on the sup norm, when one is known.
    pub bounded_hint: Option<f64>,
    pub description: String,
}

impl fmt::Debug for CochainHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CochainHandle")
            .field("group", &self.group)
            .field("degree", &self.degree)
            .field("bounded_hint", &self.bounded_hint)
            .field("description", &self.description)
            .finish()
    }
}

impl CochainHandle {
    pub fn new(
        group: GroupId,
        degree: usize,
        description: impl Into<String>,
        eval: impl Fn(&[BraidWord]) -> f64 + Send + Sync + 'static,
    ) -> CochainHandle {
        CochainHandle {
            group,
            degree,
            eval: Arc::new(eval),
            bounded_hint: None,
            description: description.into(),
        }
    }

    pub fn constant(group: GroupId, degree: usize, value: f64) -> CochainHandle {
        let mut c = CochainHandle::new(group, degree, format!("constant {value}"), move |_| value);
        c.bounded_hint = Some(value.abs());
        c
    }

    pub fn zero(group: GroupId, degree: usize) -> CochainHandle {
        CochainHandle::constant(group, degree, 0.0)
    }

    pub fn group(&self) -> &GroupId {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn with_bound(mut self, bound: f64) -> CochainHandle {
        self.bounded_hint = Some(bound);
        self
    }

    /// Evaluates on a tuple after checking arity and groups.
    pub fn eval(&self, args: &[BraidWord]) -> Result<f64> {
        if args.len() != self.degree + 1 {
            return Err(Error::InvalidDegree(args.len().saturating_sub(1)));
        }
        if let Some(w) = args.iter().find(|w| *w.group() != self.group) {
            return Err(Error::GroupMismatch {
                expected: self.group.to_string(),
                found: w.group().to_string(),
            });
        }
        Ok((self.eval)(args))
    }

    /// Evaluates without validation.
    pub fn eval_unchecked(&self, args: &[BraidWord]) -> f64 {
        (self.eval)(args)
    }
}

/// `dc(g0..gn) = sum_i (-1)^i c(g0 .. omit gi .. gn)`.
pub fn coboundary(c: &CochainHandle) -> CochainHandle {
    let inner = c.clone();
    let n = c.degree + 1;
    let mut out = CochainHandle::new(
        c.group.clone(),
        n,
        format!("d({})", c.description),
        move |args| {
            let mut total = 0.0;
            let mut face: Vec<BraidWord> = Vec::with_capacity(n);
            for i in 0..=n {
                face.clear();
                face.extend(
                    args.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, w)| w.clone()),
                );
                let v = (inner.eval)(&face);
                if i % 2 == 0 {
                    total += v;
                } else {
                    total -= v;
                }
            }
            total
        },
    );
    out.bounded_hint = c.bounded_hint.map(|b| (n + 1) as f64 * b);
    out
}
