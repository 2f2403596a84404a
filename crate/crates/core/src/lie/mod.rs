//! Lie elements, group-like elements, brackets and BCH.

pub mod lyndon;
pub mod solve;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::series::TensorSeries;

pub use lyndon::{is_lyndon, lie_coordinates, lie_dimension, lyndon_bracket, lyndon_words_of_weight};
pub use solve::{ad_normalizer_structure, centralizer_of_delta, solve_ad, solve_x_divisibility};

/// `[a, b] = ab - ba`.
pub fn bracket(a: &TensorSeries, b: &TensorSeries) -> TensorSeries {
    &(a * b) - &(b * a)
}

/// A primitive series, certified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    series: TensorSeries,
}

impl LieElement {
    pub fn new(series: TensorSeries) -> Result<Self> {
        if !series.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        Ok(LieElement { series })
    }

    /// Skips the primitivity check; for values primitive by construction.
    pub(crate) fn trusted(series: TensorSeries) -> Self {
        debug_assert!(series.is_primitive());
        LieElement { series }
    }

    pub fn series(&self) -> &TensorSeries {
        &self.series
    }

    pub fn into_series(self) -> TensorSeries {
        self.series
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        LieElement { series: bracket(&self.series, &other.series) }
    }

    pub fn exp(&self) -> GroupLike {
        GroupLike { series: self.series.exp().expect("Lie elements have no constant term") }
    }
}

/// A group-like series, certified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLike {
    series: TensorSeries,
}

impl GroupLike {
    pub fn new(series: TensorSeries) -> Result<Self> {
        if !series.is_grouplike() {
            return Err(Error::NotGroupLike);
        }
        Ok(GroupLike { series })
    }

    pub(crate) fn trusted(series: TensorSeries) -> Self {
        GroupLike { series }
    }

    pub fn series(&self) -> &TensorSeries {
        &self.series
    }

    pub fn into_series(self) -> TensorSeries {
        self.series
    }

    pub fn log(&self) -> LieElement {
        LieElement { series: self.series.log().expect("group-like elements have constant term 1") }
    }

    pub fn inverse(&self) -> GroupLike {
        GroupLike { series: self.series.inverse().expect("group-like elements are invertible") }
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, a: &TensorSeries) -> TensorSeries {
        &(&self.series * a) * &self.inverse().series
    }
}

/// `log(exp(u) exp(v))`, computed with the truncated exponential and logarithm.
pub fn bch(u: &TensorSeries, v: &TensorSeries) -> Result<TensorSeries> {
    (&u.exp()? * &v.exp()?).log()
}

/// Minimal interface needed to evaluate Lie polynomials in another Lie algebra.
pub trait LieOps: Clone {
    fn lie_bracket(&self, other: &Self) -> Self;
    fn lie_add(&self, other: &Self) -> Self;
    fn lie_scale(&self, c: &Q) -> Self;
    fn lie_zero(&self) -> Self;
}

impl LieOps for TensorSeries {
    fn lie_bracket(&self, other: &Self) -> Self {
        bracket(self, other)
    }
    fn lie_add(&self, other: &Self) -> Self {
        self + other
    }
    fn lie_scale(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn lie_zero(&self) -> Self {
        TensorSeries::zero(self.alphabet(), self.cutoff())
    }
}

type BchTable = HashMap<usize, Arc<Vec<(Word, Q)>>>;

fn bch_cache() -> &'static Mutex<BchTable> {
    static CACHE: OnceLock<Mutex<BchTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// BCH series in two letters `0, 1` through `max_len` letters, as Lyndon
/// coordinates.
pub fn bch_lyndon_terms(max_len: usize) -> Arc<Vec<(Word, Q)>> {
    if let Some(t) = bch_cache().lock().expect("bch cache poisoned").get(&max_len) {
        return t.clone();
    }
    let ab = Alphabet::basis(&[1, 1]).expect("valid weights");
    let a = TensorSeries::letter(&ab, max_len, 0);
    let b = TensorSeries::letter(&ab, max_len, 1);
    let h = bch(&a, &b).expect("letters have no constant term");
    let terms = Arc::new(lie_coordinates(h.terms()).expect("BCH series is a Lie series"));
    bch_cache().lock().expect("bch cache poisoned").insert(max_len, terms.clone());
    terms
}

/// Evaluates the bracket polynomial of a Lyndon word, letter `l` ↦ `images[l]`.
pub fn eval_lyndon<L: LieOps>(w: &[Letter], images: &[L], memo: &mut HashMap<Vec<Letter>, L>) -> L {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let v = match lyndon::standard_factorization(w) {
        None => images[w[0] as usize].clone(),
        Some((p, s)) => eval_lyndon(p, images, memo).lie_bracket(&eval_lyndon(s, images, memo)),
    };
    memo.insert(w.to_vec(), v.clone());
    v
}

/// BCH in any Lie algebra: `u * v` keeping iterated brackets with at most
/// `max_len` factors (enough when both have positive degree and the target
/// is truncated at degree `max_len`).
pub fn bch_generic<L: LieOps>(u: &L, v: &L, max_len: usize) -> L {
    let images = [u.clone(), v.clone()];
    let mut memo = HashMap::new();
    let mut acc = u.lie_zero();
    for (w, c) in bch_lyndon_terms(max_len).iter() {
        acc = acc.lie_add(&eval_lyndon(&w.0, &images, &mut memo).lie_scale(c));
    }
    acc
}
