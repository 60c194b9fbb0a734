use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cochain::CochainHandle;
use crate::braid::{BraidWord, GroupId, Letter};

/// Uniformly random words of length `0..=max_len` over a group's alphabet.
pub struct WordSampler {
    group: GroupId,
    max_len: usize,
    rng: ChaCha8Rng,
}

impl WordSampler {
    pub fn new(group: GroupId, max_len: usize, seed: u64) -> WordSampler {
        WordSampler {
            group,
            max_len,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn group(&self) -> &GroupId {
        &self.group
    }

    pub fn sample_with_len(&mut self, len: usize) -> BraidWord {
        let rank = self.group.rank() as u8;
        let letters = (0..len)
            .map(|_| Letter {
                gen: self.rng.random_range(0..rank),
                inv: self.rng.random_bool(0.5),
            })
            .collect();
        BraidWord::new(self.group.clone(), letters).expect("valid generator range")
    }

    pub fn sample(&mut self) -> BraidWord {
        let len = self.rng.random_range(0..=self.max_len);
        self.sample_with_len(len)
    }

    pub fn sample_tuple(&mut self, k: usize) -> Vec<BraidWord> {
        (0..k).map(|_| self.sample()).collect()
    }
}

/// Largest `|c|` over sampled tuples: a lower bound for the sup norm.
pub fn sup_norm_estimate(c: &CochainHandle, sampler: &mut WordSampler, n_samples: usize) -> f64 {
    let k = c.degree() + 1;
    (0..n_samples.max(1))
        .map(|_| c.eval_unchecked(&sampler.sample_tuple(k)).abs())
        .fold(0.0, f64::max)
}
