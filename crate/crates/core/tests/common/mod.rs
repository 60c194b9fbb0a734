#![allow(dead_code)]

use ggbraids::braid::{BraidWord, GroupId, Letter};
use proptest::prelude::*;

pub fn word_in(group: GroupId, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let rank = group.rank() as u8;
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(move |v| {
        BraidWord::new(
            group.clone(),
            v.into_iter()
                .map(|(gen, inv)| Letter { gen, inv })
                .collect(),
        )
        .unwrap()
    })
}

/// Laurent polynomial in `t`, stored as `(lowest exponent, coefficients)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent(pub std::collections::BTreeMap<i32, i64>);

impl Laurent {
    pub fn mono(c: i64, e: i32) -> Laurent {
        let mut m = std::collections::BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub fn zero() -> Laurent {
        Laurent(Default::default())
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.entry(*e).or_insert(0);
            *v += c;
            if *v == 0 {
                m.remove(e);
            }
        }
        Laurent(m)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                out = out.add(&Laurent::mono(c1 * c2, e1 + e2));
            }
        }
        out
    }
}

pub type Mat = [[Laurent; 2]; 2];

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let entry = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// Reduced Burau matrix of a `B3` word; faithful on `B3`.
pub fn burau(w: &BraidWord) -> Mat {
    let m = Laurent::mono;
    let one = || m(1, 0);
    let zero = Laurent::zero;
    let mut acc: Mat = [[one(), zero()], [zero(), one()]];
    for l in w.letters() {
        let g: Mat = match (l.gen, l.inv) {
            (0, false) => [[m(-1, 1), one()], [zero(), one()]],
            (0, true) => [[m(-1, -1), m(1, -1)], [zero(), one()]],
            (1, false) => [[one(), zero()], [m(1, 1), m(-1, 1)]],
            (1, true) => [[one(), zero()], [one(), m(-1, -1)]],
            _ => unreachable!("B3 has two generators"),
        };
        acc = matmul(&acc, &g);
    }
    acc
}

pub fn burau_trace(w: &BraidWord) -> Laurent {
    let b = burau(w);
    b[0][0].add(&b[1][1])
}
