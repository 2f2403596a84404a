//! Seeded random inputs for property suites.
//!
//! Everything is driven by a `ChaCha8Rng`, so a seed fixes the output on
//! every platform. Coefficients are small nonzero integers.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::cyclic::CyclicSeries;
use crate::dbrackets::{SuperCyclicSeries, SuperGenerator};
use crate::lie::{lyndon_bracket, lyndon_words_of_weight, GroupLike, LieElement};
use crate::linear::LinComb;
use crate::rational::{q, Q};
use crate::series::TensorSeries;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coeff<R: Rng>(r: &mut R) -> Q {
    let c = r.random_range(1..=3i64);
    if r.random_bool(0.5) {
        q(-c)
    } else {
        q(c)
    }
}

/// A sparse series with up to `terms` words of weight in `min..=max`.
pub fn series<R: Rng>(r: &mut R, alpha: &Arc<Alphabet>, cutoff: usize, min: usize, max: usize, terms: usize) -> TensorSeries {
    let mut out = LinComb::new();
    for _ in 0..terms {
        let k = r.random_range(min..=max.max(min));
        let words = alpha.words_of_weight(k);
        if let Some(w) = words.choose(r) {
            out.add_term(w.clone(), coeff(r));
        }
    }
    TensorSeries::new(alpha.clone(), cutoff, out)
}

/// A Lie series: a random combination of Lyndon brackets of weight `min..=max`.
pub fn lie<R: Rng>(r: &mut R, alpha: &Arc<Alphabet>, cutoff: usize, min: usize, max: usize, terms: usize) -> LieElement {
    let mut out = TensorSeries::zero(alpha, cutoff);
    for _ in 0..terms {
        let k = r.random_range(min.max(1)..=max.max(min.max(1)));
        let words = lyndon_words_of_weight(alpha, k);
        if let Some(w) = words.choose(r) {
            out = &out + &lyndon_bracket(alpha, cutoff, w).scale(&coeff(r));
        }
    }
    LieElement::trusted(out)
}

pub fn group_like<R: Rng>(r: &mut R, alpha: &Arc<Alphabet>, cutoff: usize, max: usize, terms: usize) -> GroupLike {
    lie(r, alpha, cutoff, 1, max, terms).exp()
}

pub fn cyclic<R: Rng>(r: &mut R, alpha: &Arc<Alphabet>, cutoff: usize, min: usize, max: usize, terms: usize) -> CyclicSeries {
    let s = series(r, alpha, cutoff, min, max, terms);
    CyclicSeries::new(alpha.clone(), cutoff, s.into_terms())
}

/// A word of exactly `len` letters.
pub fn word<R: Rng>(r: &mut R, alpha: &Alphabet, len: usize) -> Word {
    Word((0..len).map(|_| r.random_range(0..alpha.len()) as Letter).collect())
}

/// A cyclic super-series of ∂-degree `k` with `even` even letters per word.
pub fn super_cyclic<R: Rng>(r: &mut R, alpha: &Arc<Alphabet>, k: usize, even: usize, terms: usize) -> SuperCyclicSeries {
    let mut out = LinComb::new();
    for _ in 0..terms {
        let mut w = Vec::with_capacity(even + k);
        for i in 0..even + k {
            let l = r.random_range(0..alpha.len()) as Letter;
            w.push(if i < even { SuperGenerator::Base(l) } else { SuperGenerator::Partial(l) });
        }
        for i in (1..w.len()).rev() {
            w.swap(i, r.random_range(0..=i));
        }
        out.add_term(w, coeff(r));
    }
    SuperCyclicSeries::new(alpha.clone(), crate::dbrackets::EXACT, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = Alphabet::surface(1, 1);
        let s1 = series(&mut rng(7), &a, 5, 1, 5, 6);
        let s2 = series(&mut rng(7), &a, 5, 1, 5, 6);
        assert_eq!(s1, s2);
        assert!(lie(&mut rng(3), &a, 5, 1, 4, 4).series().is_primitive());
        assert!(group_like(&mut rng(4), &a, 5, 3, 3).series().is_grouplike());
        let p = super_cyclic(&mut rng(1), &a, 2, 2, 3);
        assert!(p.is_zero() || p.homogeneous_degree() == Some(2));
    }
}
