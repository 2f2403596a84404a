//! Weight-truncated series in the completed free associative algebra.
//!
//! A [`TensorSeries`] knows its coefficients exactly for every word of weight
//! at most its cutoff and nothing beyond. Binary operations truncate to the
//! smaller cutoff of their operands.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::rational::{display_q, is_negative, is_one, q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSeries {
    alphabet: Arc<Alphabet>,
    cutoff: usize,
    terms: LinComb<Word>,
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl TensorSeries {
    /// Builds a series, discarding words heavier than `cutoff`.
    pub fn new(alphabet: Arc<Alphabet>, cutoff: usize, mut terms: LinComb<Word>) -> Self {
        terms.retain(|w| alphabet.word_weight(&w.0) <= cutoff);
        TensorSeries { alphabet, cutoff, terms }
    }

    pub fn zero(alphabet: &Arc<Alphabet>, cutoff: usize) -> Self {
        TensorSeries { alphabet: alphabet.clone(), cutoff, terms: LinComb::new() }
    }

    pub fn scalar(alphabet: &Arc<Alphabet>, cutoff: usize, c: Q) -> Self {
        TensorSeries { alphabet: alphabet.clone(), cutoff, terms: LinComb::from_term(Word::empty(), c) }
    }

    pub fn one(alphabet: &Arc<Alphabet>, cutoff: usize) -> Self {
        Self::scalar(alphabet, cutoff, Q::one())
    }

    pub fn letter(alphabet: &Arc<Alphabet>, cutoff: usize, l: Letter) -> Self {
        Self::word(alphabet, cutoff, Word::letter(l), Q::one())
    }

    pub fn word(alphabet: &Arc<Alphabet>, cutoff: usize, w: Word, c: Q) -> Self {
        Self::new(alphabet.clone(), cutoff, LinComb::from_term(w, c))
    }

    /// Convenience constructor from letter sequences and integer coefficients.
    pub fn from_words<I>(alphabet: &Arc<Alphabet>, cutoff: usize, words: I) -> Self
    where
        I: IntoIterator<Item = (Vec<Letter>, i64)>,
    {
        let terms = words.into_iter().map(|(w, c)| (Word(w), q(c))).collect();
        Self::new(alphabet.clone(), cutoff, terms)
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

    pub fn into_terms(self) -> LinComb<Word> {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w)
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Word::empty())
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

    pub fn weight_of(&self, w: &Word) -> usize {
        self.alphabet.word_weight(&w.0)
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        Self::new(self.alphabet.clone(), cutoff, self.terms.clone())
    }

    /// Reinterprets the stored terms as an exact polynomial known through
    /// `cutoff`. Only valid when the caller knows the higher terms vanish,
    /// e.g. for homogeneous components.
    pub fn extend_cutoff(&self, cutoff: usize) -> Self {
        TensorSeries { alphabet: self.alphabet.clone(), cutoff: cutoff.max(self.cutoff), terms: self.terms.clone() }
    }

    /// Same terms, cutoff set exactly (dropping terms above it).
    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        Self::new(self.alphabet.clone(), cutoff, self.terms.clone())
    }

    pub fn weight_component(&self, k: usize) -> Result<Self> {
        if k > self.cutoff {
            return Err(Error::WeightOutOfRange { weight: k, cutoff: self.cutoff });
        }
        Ok(self.component(k))
    }

    /// Weight-`k` part without the range check (zero above the cutoff).
    pub(crate) fn component(&self, k: usize) -> Self {
        let a = &self.alphabet;
        TensorSeries {
            alphabet: a.clone(),
            cutoff: self.cutoff,
            terms: self.terms.filtered(|w| a.word_weight(&w.0) == k),
        }
    }

    /// Nonzero homogeneous parts keyed by weight.
    pub fn components(&self) -> BTreeMap<usize, TensorSeries> {
        let mut out: BTreeMap<usize, LinComb<Word>> = BTreeMap::new();
        for (w, c) in self.terms.iter() {
            out.entry(self.weight_of(w)).or_default().add_term(w.clone(), c.clone());
        }
        out.into_iter()
            .map(|(k, terms)| (k, TensorSeries { alphabet: self.alphabet.clone(), cutoff: self.cutoff, terms }))
            .collect()
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| self.weight_of(w)).min()
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| self.weight_of(w)).max()
    }

    /// The weight of a nonzero homogeneous series.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| self.weight_of(w));
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn scale(&self, c: &Q) -> Self {
        TensorSeries { alphabet: self.alphabet.clone(), cutoff: self.cutoff, terms: self.terms.scaled(c) }
    }

    fn check(&self, other: &Self) -> Result<usize> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.cutoff.min(other.cutoff))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let cutoff = self.check(other)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(Self::new(self.alphabet.clone(), cutoff, terms))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let cutoff = self.check(other)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(Self::new(self.alphabet.clone(), cutoff, terms))
    }

    /// Concatenation product truncated at the smaller cutoff.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let cutoff = self.check(other)?;
        let a = &self.alphabet;
        let mut rhs: Vec<(usize, &Word, &Q)> = other.terms.iter().map(|(w, c)| (a.word_weight(&w.0), w, c)).collect();
        rhs.sort_by_key(|t| t.0);
        let mut terms = LinComb::new();
        for (w1, c1) in self.terms.iter() {
            let k1 = a.word_weight(&w1.0);
            if k1 > cutoff {
                continue;
            }
            for &(k2, w2, c2) in &rhs {
                if k1 + k2 > cutoff {
                    break;
                }
                terms.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(TensorSeries { alphabet: a.clone(), cutoff, terms })
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.alphabet, self.cutoff);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Truncated exponential of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::one(&self.alphabet, self.cutoff);
        let mut power = Self::one(&self.alphabet, self.cutoff);
        let mut k = 1i64;
        loop {
            power = (&power * self).scale(&Q::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
            k += 1;
        }
        Ok(acc)
    }

    /// Truncated logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !is_one(&self.constant_term()) {
            return Err(Error::ConstantTermNotOne);
        }
        let h = self - &Self::one(&self.alphabet, self.cutoff);
        let mut acc = Self::zero(&self.alphabet, self.cutoff);
        let mut power = Self::one(&self.alphabet, self.cutoff);
        let mut k = 1i64;
        loop {
            power = &power * &h;
            if power.is_zero() {
                break;
            }
            let c = Q::new(if k % 2 == 1 { 1 } else { -1 }.into(), k.into());
            acc = &acc + &power.scale(&c);
            k += 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let inv0 = c0.recip();
        // a = c0 (1 + h)  =>  a^{-1} = c0^{-1} sum (-h)^k
        let minus_h = (&self.scale(&inv0) - &Self::one(&self.alphabet, self.cutoff)).scale(&q(-1));
        let mut acc = Self::one(&self.alphabet, self.cutoff);
        let mut power = Self::one(&self.alphabet, self.cutoff);
        loop {
            power = &power * &minus_h;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv0))
    }

    /// Standard coproduct with primitive generators: each word maps to the
    /// sum over its unshuffles.
    pub fn coproduct(&self) -> PairSeries {
        let mut terms = LinComb::new();
        for (w, c) in self.terms.iter() {
            let n = w.len();
            assert!(n < 64, "word too long for coproduct");
            let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
            for mask in 0..=full {
                terms.add_term((w.select(mask), w.select(full & !mask)), c.clone());
            }
        }
        PairSeries { alphabet: self.alphabet.clone(), cutoff: self.cutoff, terms }
    }

    /// Exact check of `Δa = a⊗1 + 1⊗a` through the cutoff.
    pub fn is_primitive(&self) -> bool {
        if !self.constant_term().is_zero() {
            return false;
        }
        let one = Self::one(&self.alphabet, self.cutoff);
        let expected = &PairSeries::tensor(self, &one) + &PairSeries::tensor(&one, self);
        self.coproduct() == expected
    }

    /// Exact check of `Δg = g⊗g` and constant term 1 through the cutoff.
    pub fn is_grouplike(&self) -> bool {
        is_one(&self.constant_term()) && self.coproduct() == PairSeries::tensor(self, self)
    }

    /// Applies the algebra morphism sending each letter to the given image.
    ///
    /// Images must have no constant term and must not lower the weight of
    /// their letter, so that the result is known through the cutoff.
    pub fn substitute(&self, images: &[TensorSeries]) -> Result<Self> {
        let a = &self.alphabet;
        if images.len() != a.len() {
            return Err(Error::Precondition("one image per generator required".into()));
        }
        let mut cutoff = self.cutoff;
        for (l, img) in images.iter().enumerate() {
            if !same_alphabet(a, &img.alphabet) {
                return Err(Error::AlphabetMismatch);
            }
            if !img.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
            if img.min_weight().is_some_and(|m| m < a.weight(l as Letter)) {
                return Err(Error::Precondition("substitution must preserve the weight filtration".into()));
            }
            cutoff = cutoff.min(img.cutoff);
        }
        // Horner scheme over the first letter keeps the number of products
        // equal to the number of distinct prefixes.
        fn rec(words: &[(&[Letter], &Q)], images: &[TensorSeries], alpha: &Arc<Alphabet>, cutoff: usize) -> TensorSeries {
            let mut out = TensorSeries::zero(alpha, cutoff);
            let mut i = 0;
            while i < words.len() {
                let (w, c) = words[i];
                if w.is_empty() {
                    out.terms.add_term(Word::empty(), c.clone());
                    i += 1;
                    continue;
                }
                let first = w[0];
                let mut j = i;
                while j < words.len() && !words[j].0.is_empty() && words[j].0[0] == first {
                    j += 1;
                }
                let tails: Vec<(&[Letter], &Q)> = words[i..j].iter().map(|(w, c)| (&w[1..], *c)).collect();
                let sub = rec(&tails, images, alpha, cutoff);
                out = &out + &(&images[first as usize] * &sub);
                i = j;
            }
            out
        }
        let words: Vec<(&[Letter], &Q)> = self.terms.iter().map(|(w, c)| (w.0.as_slice(), c)).collect();
        Ok(rec(&words, images, a, cutoff).truncate(cutoff))
    }

    pub fn format(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn format_terms<'a, I>(terms: I, f: &mut fmt::Formatter<'_>) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Q)>,
{
    let mut first = true;
    for (w, c) in terms {
        let neg = is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if w == "1" {
            write!(f, "{}", display_q(&abs))?;
        } else if is_one(&abs) {
            write!(f, "{w}")?;
        } else {
            write!(f, "{} {w}", display_q(&abs))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for TensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| (self.weight_of(a), *a).cmp(&(self.weight_of(b), *b)));
        format_terms(terms.into_iter().map(|(w, c)| (self.alphabet.format_word(w), c)), f)?;
        write!(f, " + O({})", self.cutoff + 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&TensorSeries> for &TensorSeries {
            type Output = TensorSeries;
            fn $m(self, rhs: &TensorSeries) -> TensorSeries {
                self.$checked(rhs).expect("operands over different alphabets")
            }
        }
        impl $tr<TensorSeries> for TensorSeries {
            type Output = TensorSeries;
            fn $m(self, rhs: TensorSeries) -> TensorSeries {
                (&self).$checked(&rhs).expect("operands over different alphabets")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &TensorSeries {
    type Output = TensorSeries;
    fn neg(self) -> TensorSeries {
        self.scale(&q(-1))
    }
}

impl Neg for TensorSeries {
    type Output = TensorSeries;
    fn neg(self) -> TensorSeries {
        self.scale(&q(-1))
    }
}

/// Element of the completed tensor square, truncated by total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSeries {
    alphabet: Arc<Alphabet>,
    cutoff: usize,
    terms: LinComb<(Word, Word)>,
}

impl PairSeries {
    pub fn new(alphabet: Arc<Alphabet>, cutoff: usize, mut terms: LinComb<(Word, Word)>) -> Self {
        terms.retain(|(a, b)| alphabet.word_weight(&a.0) + alphabet.word_weight(&b.0) <= cutoff);
        PairSeries { alphabet, cutoff, terms }
    }

    pub fn zero(alphabet: &Arc<Alphabet>, cutoff: usize) -> Self {
        PairSeries { alphabet: alphabet.clone(), cutoff, terms: LinComb::new() }
    }

    /// `a ⊗ b`, truncated by total weight.
    pub fn tensor(a: &TensorSeries, b: &TensorSeries) -> Self {
        let cutoff = a.cutoff.min(b.cutoff);
        let al = &a.alphabet;
        let mut terms = LinComb::new();
        for (w1, c1) in a.terms.iter() {
            let k1 = al.word_weight(&w1.0);
            for (w2, c2) in b.terms.iter() {
                if k1 + al.word_weight(&w2.0) <= cutoff {
                    terms.add_term((w1.clone(), w2.clone()), c1 * c2);
                }
            }
        }
        PairSeries { alphabet: al.clone(), cutoff, terms }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn terms(&self) -> &LinComb<(Word, Word)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        PairSeries { alphabet: self.alphabet.clone(), cutoff: self.cutoff, terms: self.terms.scaled(c) }
    }

    fn pair_weight(&self, p: &(Word, Word)) -> usize {
        self.alphabet.word_weight(&p.0 .0) + self.alphabet.word_weight(&p.1 .0)
    }

    /// Componentwise concatenation `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &PairSeries) -> PairSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut terms = LinComb::new();
        for (p1, c1) in self.terms.iter() {
            let k1 = self.pair_weight(p1);
            for (p2, c2) in other.terms.iter() {
                if k1 + self.pair_weight(p2) <= cutoff {
                    terms.add_term((p1.0.concat(&p2.0), p1.1.concat(&p2.1)), c1 * c2);
                }
            }
        }
        PairSeries { alphabet: self.alphabet.clone(), cutoff, terms }
    }

    /// `[a, b] = ab - ba` in the tensor square.
    pub fn commutator(&self, other: &PairSeries) -> PairSeries {
        &self.mul(other) - &other.mul(self)
    }
}

impl Add for &PairSeries {
    type Output = PairSeries;
    fn add(self, rhs: &PairSeries) -> PairSeries {
        let mut terms = self.terms.clone();
        terms.add_assign(&rhs.terms);
        PairSeries::new(self.alphabet.clone(), self.cutoff.min(rhs.cutoff), terms)
    }
}

impl Sub for &PairSeries {
    type Output = PairSeries;
    fn sub(self, rhs: &PairSeries) -> PairSeries {
        let mut terms = self.terms.clone();
        terms.sub_assign(&rhs.terms);
        PairSeries::new(self.alphabet.clone(), self.cutoff.min(rhs.cutoff), terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn xy(cutoff: usize) -> (Arc<Alphabet>, TensorSeries, TensorSeries) {
        let a = Alphabet::surface(1, 0);
        let x = TensorSeries::letter(&a, cutoff, a.x(1));
        let y = TensorSeries::letter(&a, cutoff, a.y(1));
        (a, x, y)
    }

    #[test]
    fn concatenation_product() {
        let (a, x, y) = xy(4);
        let p = &x * &y;
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&Word(vec![a.x(1), a.y(1)])), q(1));
        let one = TensorSeries::one(&a, 4);
        let lhs = &(&one + &x) * &(&one + &y);
        let rhs = &(&(&one + &x) + &y) + &p;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_truncates() {
        let (_, x, y) = xy(2);
        assert!((&(&x * &y) * &x).is_zero());
    }

    #[test]
    fn mixing_cutoffs_takes_minimum() {
        let (a, x, _) = xy(5);
        let y3 = TensorSeries::letter(&a, 3, a.y(1));
        assert_eq!((&x + &y3).cutoff(), 3);
        assert_eq!((&x * &y3).cutoff(), 3);
    }

    #[test]
    fn coproduct_of_words() {
        let (a, x, y) = xy(4);
        let one = TensorSeries::one(&a, 4);
        assert_eq!(x.coproduct(), &PairSeries::tensor(&x, &one) + &PairSeries::tensor(&one, &x));
        let xy = &x * &y;
        let expected = &(&(&PairSeries::tensor(&xy, &one) + &PairSeries::tensor(&x, &y))
            + &PairSeries::tensor(&y, &x))
            + &PairSeries::tensor(&one, &xy);
        assert_eq!(xy.coproduct(), expected);
        let e = x.exp().unwrap();
        assert_eq!(e.coproduct(), PairSeries::tensor(&e, &e));
    }

    #[test]
    fn exp_log_round_trip() {
        let (a, x, y) = xy(5);
        assert_eq!(TensorSeries::zero(&a, 5).exp().unwrap(), TensorSeries::one(&a, 5));
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        let e = (&x * &y).exp().unwrap();
        assert_eq!(e.log().unwrap(), &x * &y);
        let prod = &x.exp().unwrap() * &(-&x).exp().unwrap();
        assert_eq!(prod, TensorSeries::one(&a, 5));
        assert_eq!(x.exp().unwrap().inverse().unwrap(), (-&x).exp().unwrap());
    }

    #[test]
    fn exp_log_domain_errors() {
        let (a, x, _) = xy(3);
        let one = TensorSeries::one(&a, 3);
        assert_eq!((&one + &x).exp(), Err(Error::NonzeroConstantTerm));
        assert_eq!(x.log(), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn primitive_and_grouplike() {
        let (_, x, y) = xy(5);
        let br = &(&x * &y) - &(&y * &x);
        assert!(br.is_primitive());
        assert!(!(&x * &y).is_primitive());
        assert!(br.exp().unwrap().is_grouplike());
        assert!(!(&x * &y).exp().unwrap().is_grouplike());
    }

    #[test]
    fn weight_components() {
        let a = Alphabet::surface(1, 1);
        let x = TensorSeries::letter(&a, 4, a.x(1));
        let y = TensorSeries::letter(&a, 4, a.y(1));
        let z = TensorSeries::letter(&a, 4, a.z(1));
        let s = &(&TensorSeries::one(&a, 4) + &x) + &(&x * &y);
        assert_eq!(s.weight_component(2).unwrap(), &x * &y);
        assert_eq!(z.weight_component(2).unwrap(), z);
        assert!(z.weight_component(1).unwrap().is_zero());
        assert!(s.weight_component(5).is_err());
        let total = (0..=4).fold(TensorSeries::zero(&a, 4), |acc, k| &acc + &s.weight_component(k).unwrap());
        assert_eq!(total, s);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let (a, x, y) = xy(4);
        // x -> x + [x,y]/2, y -> y
        let br = &(&x * &y) - &(&y * &x);
        let images = vec![&x + &br.scale(&qr(1, 2)), y.clone()];
        let s = (&x * &y).substitute(&images).unwrap();
        assert_eq!(s, &images[0] * &y);
        let _ = a;
    }

    #[test]
    fn display_is_readable() {
        let (_, x, y) = xy(3);
        let s = &x - &(&x * &y).scale(&qr(1, 2));
        assert_eq!(s.to_string(), "x1 - 1/2 x1 y1 + O(4)");
    }
}
