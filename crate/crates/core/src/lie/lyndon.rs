//! Lyndon words and the associated bracket basis of the free Lie algebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::rational::Q;
use crate::series::TensorSeries;

/// A word is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length at most `max_len` over `s` letters (Duval order).
pub fn lyndon_words_up_to(s: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    if s == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<Letter> = vec![0];
    loop {
        out.push(w.clone());
        // extend periodically, then increment the last non-maximal letter
        let k = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - k]);
        }
        while w.last().is_some_and(|&l| l as usize == s - 1) {
            w.pop();
        }
        match w.last_mut() {
            None => return out,
            Some(l) => *l += 1,
        }
    }
}

/// Lyndon words of weight exactly `k`, lexicographically sorted.
pub fn lyndon_words_of_weight(alphabet: &Alphabet, k: usize) -> Vec<Word> {
    let max_len = k / alphabet.min_weight().max(1);
    let mut out: Vec<Word> = lyndon_words_up_to(alphabet.len(), max_len)
        .into_iter()
        .filter(|w| alphabet.word_weight(w) == k)
        .map(Word)
        .collect();
    out.sort();
    out
}

/// `dim L_k`.
pub fn lie_dimension(alphabet: &Alphabet, k: usize) -> usize {
    lyndon_words_of_weight(alphabet, k).len()
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> Option<(&[Letter], &[Letter])> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| (&w[..i], &w[i..]))
}

type BracketCache = HashMap<Vec<Letter>, Arc<LinComb<Word>>>;

fn bracket_cache() -> &'static Mutex<BracketCache> {
    static CACHE: OnceLock<Mutex<BracketCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn commutator(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            let c = cu * cv;
            out.add_term(u.concat(v), c.clone());
            out.add_term(v.concat(u), -c);
        }
    }
    out
}

/// The bracketing `P(w)` of a Lyndon word, as a polynomial in letters.
/// `P(w) = w + (lexicographically larger words)`.
pub fn lyndon_polynomial(w: &[Letter]) -> Arc<LinComb<Word>> {
    if let Some(p) = bracket_cache().lock().expect("bracket cache poisoned").get(w) {
        return p.clone();
    }
    let p = match standard_factorization(w) {
        None => LinComb::from_term(Word(w.to_vec()), Q::one()),
        Some((u, v)) => commutator(&lyndon_polynomial(u), &lyndon_polynomial(v)),
    };
    let p = Arc::new(p);
    bracket_cache().lock().expect("bracket cache poisoned").insert(w.to_vec(), p.clone());
    p
}

/// `P(w)` as a series.
pub fn lyndon_bracket(alphabet: &Arc<Alphabet>, cutoff: usize, w: &Word) -> TensorSeries {
    TensorSeries::new(alphabet.clone(), cutoff, (*lyndon_polynomial(&w.0)).clone())
}

/// Coordinates of a Lie polynomial in the Lyndon basis, obtained by peeling
/// off the minimal word of the support, which is always Lyndon.
pub fn lie_coordinates(terms: &LinComb<Word>) -> Result<Vec<(Word, Q)>> {
    let mut rest = terms.clone();
    let mut out = Vec::new();
    while let Some(w) = rest.keys().next().cloned() {
        if !is_lyndon(&w.0) {
            return Err(Error::NotPrimitive);
        }
        let c = rest.get(&w);
        rest.add_scaled(&lyndon_polynomial(&w.0), &-c.clone());
        debug_assert!(rest.get(&w).is_zero());
        out.push((w, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[0]));
        assert!(is_lyndon(&[0, 1]));
        assert!(is_lyndon(&[0, 0, 1, 0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(!is_lyndon(&[]));
    }

    #[test]
    fn duval_matches_filter() {
        for s in 1..=3 {
            for n in 1..=6 {
                let mut a: Vec<_> = lyndon_words_up_to(s, n);
                a.sort();
                let a2 = Alphabet::basis(&vec![1; s]).unwrap();
                let mut b: Vec<Vec<u8>> =
                    (1..=n).flat_map(|k| a2.words_of_weight(k)).map(|w| w.0).filter(|w| is_lyndon(w)).collect();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn witt_dimensions() {
        let a = Alphabet::basis(&[1, 1]).unwrap();
        let dims: Vec<_> = (1..=7).map(|k| lie_dimension(&a, k)).collect();
        assert_eq!(dims, [2, 1, 2, 3, 6, 9, 18]);
    }

    #[test]
    fn polynomial_is_triangular() {
        let p = lyndon_polynomial(&[0, 0, 1]);
        assert_eq!(p.keys().next(), Some(&Word(vec![0, 0, 1])));
        let coords = lie_coordinates(&p).unwrap();
        assert_eq!(coords, vec![(Word(vec![0, 0, 1]), Q::one())]);
        assert!(lie_coordinates(&LinComb::from_term(Word(vec![1, 0]), Q::one())).is_err());
    }
}
