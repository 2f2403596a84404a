//! Cyclic words, the trace map `|·| : T̂ → T̂/[T̂, T̂]` and related maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::linalg::{ColumnReducer, Coords};
use crate::linear::LinComb;
use crate::rational::{factorial, q, Q};
use crate::series::{format_terms, same_alphabet, TensorSeries};

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        // here i == -1 or the letters agree
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// The canonical representative of a cyclic word.
pub fn canonical(w: &Word) -> Word {
    w.rotate(least_rotation(&w.0))
}

/// Number of distinct rotations of a word.
pub fn period(w: &[Letter]) -> usize {
    let n = w.len();
    (1..=n).find(|&p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p])).unwrap_or(0)
}

/// Element of `|T̂|`, keyed by canonical words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSeries {
    alphabet: Arc<Alphabet>,
    cutoff: usize,
    terms: LinComb<Word>,
}

impl CyclicSeries {
    /// Builds a cyclic series from arbitrary (not necessarily canonical) words.
    pub fn new(alphabet: Arc<Alphabet>, cutoff: usize, terms: LinComb<Word>) -> Self {
        let mut out = LinComb::new();
        for (w, c) in terms {
            if alphabet.word_weight(&w.0) <= cutoff {
                out.add_term(canonical(&w), c);
            }
        }
        CyclicSeries { alphabet, cutoff, terms: out }
    }

    pub(crate) fn from_canonical(alphabet: Arc<Alphabet>, cutoff: usize, terms: LinComb<Word>) -> Self {
        CyclicSeries { alphabet, cutoff, terms }
    }

    pub fn zero(alphabet: &Arc<Alphabet>, cutoff: usize) -> Self {
        CyclicSeries { alphabet: alphabet.clone(), cutoff, terms: LinComb::new() }
    }

    pub fn word(alphabet: &Arc<Alphabet>, cutoff: usize, w: &Word, c: Q) -> Self {
        Self::new(alphabet.clone(), cutoff, LinComb::from_term(w.clone(), c))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(&canonical(w))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        CyclicSeries { alphabet: self.alphabet.clone(), cutoff: self.cutoff, terms: self.terms.scaled(c) }
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        let a = &self.alphabet;
        CyclicSeries {
            alphabet: a.clone(),
            cutoff,
            terms: self.terms.filtered(|w| a.word_weight(&w.0) <= cutoff),
        }
    }

    pub fn extend_cutoff(&self, cutoff: usize) -> Self {
        CyclicSeries { alphabet: self.alphabet.clone(), cutoff: cutoff.max(self.cutoff), terms: self.terms.clone() }
    }

    pub fn weight_component(&self, k: usize) -> Result<Self> {
        if k > self.cutoff {
            return Err(Error::WeightOutOfRange { weight: k, cutoff: self.cutoff });
        }
        Ok(self.component(k))
    }

    pub(crate) fn component(&self, k: usize) -> Self {
        let a = &self.alphabet;
        CyclicSeries { alphabet: a.clone(), cutoff: self.cutoff, terms: self.terms.filtered(|w| a.word_weight(&w.0) == k) }
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| self.alphabet.word_weight(&w.0)).min()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        let cutoff = self.cutoff.min(other.cutoff);
        let a = &self.alphabet;
        terms.retain(|w| a.word_weight(&w.0) <= cutoff);
        Ok(CyclicSeries { alphabet: a.clone(), cutoff, terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&q(-1)))
    }

    /// Sum over all rotations of each basis word, counted with multiplicity.
    pub fn embed(&self) -> TensorSeries {
        let mut terms = LinComb::new();
        for (w, c) in self.terms.iter() {
            if w.is_empty() {
                terms.add_term(w.clone(), c.clone());
                continue;
            }
            for k in 0..w.len() {
                terms.add_term(w.rotate(k), c.clone());
            }
        }
        TensorSeries::new(self.alphabet.clone(), self.cutoff, terms)
    }
}

impl fmt::Display for CyclicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.alphabet;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(u, _), (v, _)| (a.word_weight(&u.0), *u).cmp(&(a.word_weight(&v.0), *v)));
        format_terms(terms.into_iter().map(|(w, c)| (format!("|{}|", a.format_word(w)), c)), f)?;
        write!(f, " + O({})", self.cutoff + 1)
    }
}

impl Add for &CyclicSeries {
    type Output = CyclicSeries;
    fn add(self, rhs: &CyclicSeries) -> CyclicSeries {
        self.checked_add(rhs).expect("operands over different alphabets")
    }
}

impl Sub for &CyclicSeries {
    type Output = CyclicSeries;
    fn sub(self, rhs: &CyclicSeries) -> CyclicSeries {
        self.checked_sub(rhs).expect("operands over different alphabets")
    }
}

impl Neg for &CyclicSeries {
    type Output = CyclicSeries;
    fn neg(self) -> CyclicSeries {
        self.scale(&q(-1))
    }
}

/// The projection `|·|`.
pub fn trace(a: &TensorSeries) -> CyclicSeries {
    CyclicSeries::new(a.alphabet().clone(), a.cutoff(), a.terms().clone())
}

/// `∂_g a`: the part of `a` ending in `g`, with that last letter removed.
pub fn right_partial(g: Letter, a: &TensorSeries) -> Result<TensorSeries> {
    if !a.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let terms = a
        .iter()
        .filter(|(w, _)| w.0.last() == Some(&g))
        .map(|(w, c)| (Word(w.0[..w.len() - 1].to_vec()), c.clone()))
        .collect();
    // removing a letter of weight wt(g) leaves a series known through cutoff - wt(g)
    let cutoff = a.cutoff().saturating_sub(a.alphabet().weight(g));
    Ok(TensorSeries::new(a.alphabet().clone(), cutoff, terms))
}

/// `|u^m|`.
pub fn power_trace(u: &TensorSeries, m: usize) -> CyclicSeries {
    trace(&u.pow(m))
}

/// `|exp u| = Σ_m |u^m| / m!`, by summing power traces.
pub fn exp_trace(u: &TensorSeries) -> Result<CyclicSeries> {
    if !u.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut acc = CyclicSeries::zero(u.alphabet(), u.cutoff());
    let mut power = TensorSeries::one(u.alphabet(), u.cutoff());
    let mut m = 0;
    // a single power trace may vanish (|ω₀| = 0) while later ones do not
    while !power.is_zero() {
        acc = &acc + &trace(&power).scale(&factorial(m).recip());
        power = &power * u;
        m += 1;
    }
    Ok(acc)
}

/// Exact test of `|u^m| ∈ span{|v_j^m|}` with one coefficient per target.
pub fn membership_in_power_span(u: &TensorSeries, targets: &[TensorSeries], m: usize) -> Option<Vec<Q>> {
    let cutoff = targets.iter().map(|t| t.cutoff()).fold(u.cutoff(), usize::min);
    let lhs = power_trace(&u.truncate(cutoff), m);
    let mut coords = Coords::new();
    let mut red = ColumnReducer::new();
    for t in targets {
        red.push(coords.vector(power_trace(&t.truncate(cutoff), m).terms()));
    }
    let x = red.solve(&coords.vector(lhs.terms()))?;
    Some((0..targets.len()).map(|j| x.get(&j).cloned().unwrap_or_else(Q::zero)).collect())
}

/// Canonical cyclic words of weight exactly `k`.
pub fn cyclic_words_of_weight(alphabet: &Alphabet, k: usize) -> Vec<Word> {
    let mut set: BTreeMap<Word, ()> = BTreeMap::new();
    for w in alphabet.words_of_weight(k) {
        set.insert(canonical(&w), ());
    }
    set.into_keys().collect()
}

/// `|1|` as a cyclic series.
pub fn cyclic_one(alphabet: &Arc<Alphabet>, cutoff: usize) -> CyclicSeries {
    CyclicSeries::word(alphabet, cutoff, &Word::empty(), Q::one())
}
