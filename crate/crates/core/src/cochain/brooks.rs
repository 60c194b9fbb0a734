use super::quasimorphism::{QmEval, QmHandle};
use crate::braid::{cyclically_reduce, free_reduce, is_free_product, BraidWord, Letter};
use crate::error::{Error, Result};

/// Overlapping occurrences of `needle` in `hay`.
fn count(hay: &[Letter], needle: &[Letter]) -> usize {
    if needle.len() > hay.len() {
        return 0;
    }
    hay.windows(needle.len()).filter(|w| *w == needle).count()
}

struct Brooks {
    pattern: Vec<Letter>,
    inverse: Vec<Letter>,
}

impl Brooks {
    fn raw(&self, reduced: &[Letter]) -> f64 {
        count(reduced, &self.pattern) as f64 - count(reduced, &self.inverse) as f64
    }
}

impl QmEval for Brooks {
    fn eval(&self, g: &BraidWord) -> f64 {
        self.raw(free_reduce(g).letters())
    }

    /// For `n` past a small threshold the count on the normal form of
    /// `g^n` is affine in `n`, so two evaluations determine it.
    fn eval_power(&self, g: &BraidWord, n: u64) -> f64 {
        let g = free_reduce(g);
        let cyc = cyclically_reduce(&g).expect("free product group");
        if cyc.is_empty() {
            return 0.0;
        }
        let first = cyc.letters()[0].gen;
        let order = g.group().orders()[first as usize];
        if order > 0 && cyc.letters().iter().all(|l| l.gen == first) {
            return self.eval(&g.pow((n % order as u64) as i64));
        }
        let n0 = 2 * self.pattern.len() as u64 + 4;
        if n <= n0 + 1 {
            return self.eval(&g.pow(n as i64));
        }
        let f0 = self.eval(&g.pow(n0 as i64));
        let f1 = self.eval(&g.pow(n0 as i64 + 1));
        f0 + (n - n0) as f64 * (f1 - f0)
    }
}

/// Counting quasimorphism `h_w(g) = #w - #w^-1` in the normal form of `g`,
/// counting overlapping occurrences. Defect estimate `3 |w|`.
pub fn brooks_qm(pattern: &BraidWord) -> Result<QmHandle> {
    if !is_free_product(pattern.group()) {
        return Err(Error::InvalidPattern(format!(
            "{} is not a free product",
            pattern.group()
        )));
    }
    let p = free_reduce(pattern);
    if p.is_empty() {
        return Err(Error::InvalidPattern("empty pattern".into()));
    }
    let c = cyclically_reduce(&p)?;
    if c.len() != p.len() {
        return Err(Error::InvalidPattern(format!(
            "`{p}` is not cyclically reduced"
        )));
    }
    let inverse = free_reduce(&p.inverse()).letters().to_vec();
    let defect = 3.0 * p.len() as f64;
    let desc = format!("h[{p}]");
    let mut q = QmHandle::from_eval(
        p.group().clone(),
        defect,
        desc,
        Brooks {
            pattern: p.letters().to_vec(),
            inverse,
        },
    );
    q.homogeneity_tolerance = f64::INFINITY;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::super::quasimorphism::homogenize;
    use super::*;
    use crate::braid::GroupId;

    fn f2(s: &str) -> BraidWord {
        BraidWord::parse(&GroupId::FreeGroup(2), s).unwrap()
    }

    #[test]
    fn spec_examples() {
        let h = brooks_qm(&f2("a b")).unwrap();
        assert_eq!(h.eval(&f2("a b a b")).unwrap(), 2.0);
        assert_eq!(h.eval(&f2("b^-1 a^-1")).unwrap(), -1.0);
        assert_eq!(h.eval(&f2("e")).unwrap(), 0.0);
        let hh = homogenize(&h, 12).unwrap();
        assert_eq!(hh.eval(&f2("a b")).unwrap(), 1.0);
        assert_eq!(hh.eval(&f2("e")).unwrap(), 0.0);
        let comm2 = f2("a b a^-1 b^-1 a b a^-1 b^-1");
        assert_eq!(hh.eval(&comm2).unwrap(), 2.0);
    }

    #[test]
    fn overlapping_counts() {
        let h = brooks_qm(&f2("a a")).unwrap();
        assert_eq!(h.eval(&f2("a a a")).unwrap(), 2.0);
    }

    #[test]
    fn invalid_patterns() {
        assert!(matches!(
            brooks_qm(&f2("a a^-1")),
            Err(Error::InvalidPattern(_))
        ));
        assert!(matches!(
            brooks_qm(&f2("a b a^-1")),
            Err(Error::InvalidPattern(_))
        ));
        let b3 = BraidWord::parse(&crate::braid::B3, "s1").unwrap();
        assert!(brooks_qm(&b3).is_err());
    }

    #[test]
    fn power_extrapolation_matches_expansion() {
        let psl = GroupId::psl();
        let cases = [
            (
                GroupId::FreeGroup(2),
                "a b",
                vec![
                    "a b a^-1",
                    "b a^-1 b b a",
                    "a",
                    "a b a b^-1 a^-1",
                    "b^-1 a b a b",
                ],
            ),
            (
                psl.clone(),
                "x y",
                vec!["y x y", "x y x y y", "y", "x", "y x y y x y y"],
            ),
        ];
        for (g, pat, words) in cases {
            let h = brooks_qm(&BraidWord::parse(&g, pat).unwrap()).unwrap();
            for w in words {
                let w = BraidWord::parse(&g, w).unwrap();
                for n in [1u64, 5, 17, 40, 123] {
                    let direct = h.eval(&w.pow(n as i64)).unwrap();
                    assert_eq!(h.eval_power(&w, n), direct, "{w}^{n}");
                }
            }
        }
    }
}
