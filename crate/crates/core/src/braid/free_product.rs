use std::collections::VecDeque;

use super::word::{normalize_exp, syllables, Letter, Syllable};

/// Cyclically reduced syllable sequence: conjugates away matching ends.
pub(crate) fn cyclic_syllables(letters: &[Letter], orders: &[u32]) -> Vec<Syllable> {
    let mut d: VecDeque<Syllable> = syllables(letters, orders).into();
    while d.len() >= 2 && d.front().unwrap().gen == d.back().unwrap().gen {
        let first = d.pop_front().unwrap();
        let last = d.pop_back().unwrap();
        let exp = normalize_exp(first.exp + last.exp, orders[first.gen as usize]);
        if exp != 0 {
            d.push_front(Syllable {
                gen: first.gen,
                exp,
            });
        }
    }
    d.into()
}

fn is_rotation(u: &[Syllable], v: &[Syllable]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    let n = u.len();
    (0..n).any(|k| (0..n).all(|i| u[(i + k) % n] == v[i]))
}

/// Conjugacy in a free product of cyclic groups: cyclic reductions agree up
/// to rotation of syllables.
pub(crate) fn conjugate(a: &[Letter], b: &[Letter], orders: &[u32]) -> bool {
    is_rotation(&cyclic_syllables(a, orders), &cyclic_syllables(b, orders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{BraidWord, GroupId};

    fn conj(g: &GroupId, a: &str, b: &str) -> bool {
        let a = BraidWord::parse(g, a).unwrap();
        let b = BraidWord::parse(g, b).unwrap();
        conjugate(a.letters(), b.letters(), &g.orders())
    }

    #[test]
    fn free_group() {
        let f2 = GroupId::FreeGroup(2);
        assert!(conj(&f2, "a b", "b a"));
        assert!(conj(&f2, "a a b", "a b a"));
        assert!(conj(&f2, "b a b^-1", "a"));
        assert!(!conj(&f2, "a b", "a b^-1"));
        assert!(!conj(&f2, "a", "a a"));
        assert!(conj(&f2, "e", "a a^-1"));
    }

    #[test]
    fn torsion() {
        let psl = GroupId::psl();
        assert!(conj(&psl, "y", "x y x"));
        assert!(!conj(&psl, "y", "y y"));
        assert!(conj(&psl, "x y", "y x"));
        assert!(conj(&psl, "x y y x y", "y y x y x"));
        assert!(!conj(&psl, "x y", "x y y"));
    }
}
