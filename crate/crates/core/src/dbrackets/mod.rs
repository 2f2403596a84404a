//! The superalgebra `D_A` of a surface algebra with odd partners `∂g`, the
//! Schouten bracket on cyclic super-words, the `E`-insertion ideal and the
//! evaluation of cyclic super-words as multilinear maps on `|A|`.
//!
//! Sign table for the splice of `P[i]` against `Q[j]` (double brackets are
//! skew-symmetric): `{∂g, g} = 1⊗1` gives `+1`, `{g, ∂g} = -1⊗1` gives `-1`.
//! The spliced word is `P[i+1..] P[..i] Q[j+1..] Q[..j]` with the Koszul signs
//! of the two rotations that bring `P[i]` to the end and `Q[j]` to the front.

mod complex;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::alphabet::{Alphabet, GeneratorKind, Letter, Word};
use crate::cyclic::{least_rotation, CyclicSeries};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::rational::{q, Q};
use crate::series::{format_terms, same_alphabet, PairSeries, TensorSeries};

pub use complex::{
    cohomology, derivation_images, is_fully_tangential, CohomologyReport, PoissonComplex, QuotientSpace,
    TangentialWitnesses,
};

/// A generator of `D_A`: an even letter of `A` or its odd partner `∂g`.
///
/// `wt(∂g) = -wt(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuperGenerator {
    Base(Letter),
    Partial(Letter),
}

impl SuperGenerator {
    pub fn is_odd(self) -> bool {
        matches!(self, SuperGenerator::Partial(_))
    }

    pub fn base(self) -> Letter {
        match self {
            SuperGenerator::Base(l) | SuperGenerator::Partial(l) => l,
        }
    }

    pub fn partner(self) -> SuperGenerator {
        match self {
            SuperGenerator::Base(l) => SuperGenerator::Partial(l),
            SuperGenerator::Partial(l) => SuperGenerator::Base(l),
        }
    }

    pub fn weight(self, alphabet: &Alphabet) -> i64 {
        let w = alphabet.weight(self.base()) as i64;
        if self.is_odd() {
            -w
        } else {
            w
        }
    }

    pub fn name(self, alphabet: &Alphabet) -> String {
        match self {
            SuperGenerator::Base(l) => alphabet.name(l),
            SuperGenerator::Partial(l) => format!("d{}", alphabet.name(l)),
        }
    }
}

pub type SuperWord = Vec<SuperGenerator>;

fn parity(w: &[SuperGenerator]) -> bool {
    w.iter().filter(|g| g.is_odd()).count() % 2 == 1
}

/// Number of odd letters.
pub fn partial_degree(w: &[SuperGenerator]) -> usize {
    w.iter().filter(|g| g.is_odd()).count()
}

pub fn super_weight(alphabet: &Alphabet, w: &[SuperGenerator]) -> i64 {
    w.iter().map(|g| g.weight(alphabet)).sum()
}

/// `(-1)^{|a||b|}` as "negate?" for moving `a` past `b`.
fn koszul(a: &[SuperGenerator], b: &[SuperGenerator]) -> bool {
    parity(a) && parity(b)
}

fn period(w: &[SuperGenerator]) -> usize {
    let n = w.len();
    (1..=n).find(|&p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p])).unwrap_or(0)
}

/// Least rotation of `w` together with its Koszul sign (`true` = negated), or
/// `None` when the word equals minus itself in `|D_A|`.
pub fn super_canonical(w: &[SuperGenerator]) -> Option<(SuperWord, bool)> {
    let n = w.len();
    if n == 0 {
        return Some((Vec::new(), false));
    }
    let k = least_rotation(w);
    let mut r = Vec::with_capacity(n);
    r.extend_from_slice(&w[k..]);
    r.extend_from_slice(&w[..k]);
    let neg = koszul(&w[..k], &w[k..]);
    let p = period(&r);
    if p < n && parity(&r[..p]) && (n / p) % 2 == 0 {
        return None;
    }
    Some((r, neg))
}

fn add_canonical(out: &mut LinComb<SuperWord>, w: &[SuperGenerator], c: Q) {
    if let Some((r, neg)) = super_canonical(w) {
        out.add_term(r, if neg { -c } else { c });
    }
}

/// Element of `|D_A|`, keyed by canonical super-words.
///
/// Weights may be negative; terms of weight above `cutoff` are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperCyclicSeries {
    alphabet: Arc<Alphabet>,
    cutoff: i64,
    terms: LinComb<SuperWord>,
}

impl SuperCyclicSeries {
    pub fn new(alphabet: Arc<Alphabet>, cutoff: i64, terms: LinComb<SuperWord>) -> Self {
        let mut out = LinComb::new();
        for (w, c) in terms {
            if super_weight(&alphabet, &w) <= cutoff {
                add_canonical(&mut out, &w, c);
            }
        }
        SuperCyclicSeries { alphabet, cutoff, terms: out }
    }

    pub fn zero(alphabet: &Arc<Alphabet>, cutoff: i64) -> Self {
        SuperCyclicSeries { alphabet: alphabet.clone(), cutoff, terms: LinComb::new() }
    }

    pub fn word(alphabet: &Arc<Alphabet>, cutoff: i64, w: &[SuperGenerator], c: Q) -> Self {
        Self::new(alphabet.clone(), cutoff, LinComb::from_term(w.to_vec(), c))
    }

    /// `|A| ⊂ |D_A|` as the ∂-degree 0 part.
    pub fn from_cyclic(c: &CyclicSeries) -> Self {
        let terms = c
            .iter()
            .map(|(w, k)| (w.0.iter().map(|&l| SuperGenerator::Base(l)).collect(), k.clone()))
            .collect();
        Self::new(c.alphabet().clone(), c.cutoff() as i64, terms)
    }

    /// The inverse of [`SuperCyclicSeries::from_cyclic`] on ∂-degree 0.
    pub fn to_cyclic(&self) -> Result<CyclicSeries> {
        let mut terms = LinComb::new();
        for (w, c) in self.terms.iter() {
            if partial_degree(w) != 0 {
                return Err(Error::Precondition("series has odd letters".into()));
            }
            terms.add_term(Word(w.iter().map(|g| g.base()).collect()), c.clone());
        }
        let cutoff = self.cutoff.max(0) as usize;
        Ok(CyclicSeries::from_canonical(self.alphabet.clone(), cutoff, terms))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn terms(&self) -> &LinComb<SuperWord> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SuperWord, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[SuperGenerator]) -> Q {
        match super_canonical(w) {
            Some((r, neg)) => {
                let c = self.terms.get(&r);
                if neg {
                    -c
                } else {
                    c
                }
            }
            None => q(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        SuperCyclicSeries { alphabet: self.alphabet.clone(), cutoff: self.cutoff, terms: self.terms.scaled(c) }
    }

    pub fn truncate(&self, cutoff: i64) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        let a = &self.alphabet;
        let terms = self.terms.filtered(|w| super_weight(a, w) <= cutoff);
        SuperCyclicSeries { alphabet: a.clone(), cutoff, terms }
    }

    pub fn with_cutoff(&self, cutoff: i64) -> Self {
        let a = &self.alphabet;
        let terms = self.terms.filtered(|w| super_weight(a, w) <= cutoff);
        SuperCyclicSeries { alphabet: a.clone(), cutoff, terms }
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.terms.keys().map(|w| super_weight(&self.alphabet, w)).min()
    }

    /// The common ∂-degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut ds = self.terms.keys().map(|w| partial_degree(w));
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    /// The part of ∂-degree `k` and weight `w`.
    pub fn component(&self, k: usize, w: i64) -> Self {
        let a = &self.alphabet;
        let terms = self.terms.filtered(|u| partial_degree(u) == k && super_weight(a, u) == w);
        SuperCyclicSeries { alphabet: a.clone(), cutoff: self.cutoff, terms }
    }

    /// The (∂-degree, weight) pairs present.
    pub fn gradings(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<_> = self.terms.keys().map(|w| (partial_degree(w), super_weight(&self.alphabet, w))).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        let cutoff = self.cutoff.min(other.cutoff);
        let a = &self.alphabet;
        terms.retain(|w| super_weight(a, w) <= cutoff);
        Ok(SuperCyclicSeries { alphabet: a.clone(), cutoff, terms })
    }
}

impl fmt::Display for SuperCyclicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.alphabet;
        let name = |w: &SuperWord| w.iter().map(|g| g.name(a)).collect::<Vec<_>>().join(" ");
        format_terms(self.terms.iter().map(|(w, c)| (format!("|{}|", name(w)), c)), f)
    }
}

impl Add for &SuperCyclicSeries {
    type Output = SuperCyclicSeries;
    fn add(self, rhs: &SuperCyclicSeries) -> SuperCyclicSeries {
        self.checked_add(rhs).expect("alphabet mismatch")
    }
}

impl Sub for &SuperCyclicSeries {
    type Output = SuperCyclicSeries;
    fn sub(self, rhs: &SuperCyclicSeries) -> SuperCyclicSeries {
        self.checked_add(&rhs.scale(&q(-1))).expect("alphabet mismatch")
    }
}

impl Neg for &SuperCyclicSeries {
    type Output = SuperCyclicSeries;
    fn neg(self) -> SuperCyclicSeries {
        self.scale(&q(-1))
    }
}

/// A non-cyclic element of `D_A`; used as the argument of [`e_insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSeries {
    alphabet: Arc<Alphabet>,
    cutoff: i64,
    terms: LinComb<SuperWord>,
}

impl SuperSeries {
    pub fn new(alphabet: Arc<Alphabet>, cutoff: i64, mut terms: LinComb<SuperWord>) -> Self {
        terms.retain(|w| super_weight(&alphabet, w) <= cutoff);
        SuperSeries { alphabet, cutoff, terms }
    }

    pub fn word(alphabet: &Arc<Alphabet>, cutoff: i64, w: &[SuperGenerator], c: Q) -> Self {
        Self::new(alphabet.clone(), cutoff, LinComb::from_term(w.to_vec(), c))
    }

    pub fn from_tensor(a: &TensorSeries) -> Self {
        let terms = a
            .iter()
            .map(|(w, c)| (w.0.iter().map(|&l| SuperGenerator::Base(l)).collect(), c.clone()))
            .collect();
        Self::new(a.alphabet().clone(), a.cutoff() as i64, terms)
    }

    pub fn terms(&self) -> &LinComb<SuperWord> {
        &self.terms
    }

    pub fn cyclic(&self) -> SuperCyclicSeries {
        SuperCyclicSeries::new(self.alphabet.clone(), self.cutoff, self.terms.clone())
    }
}

/// The defining table `{∂g, g} = 1⊗1`, `{g, ∂g} = -1⊗1`, zero otherwise.
pub fn generator_double_bracket(alphabet: &Arc<Alphabet>, p: SuperGenerator, q_: SuperGenerator) -> PairSeries {
    let c = splice_sign(p, q_);
    let mut terms = LinComb::new();
    if c != 0 {
        terms.add_term((Word::empty(), Word::empty()), q(c));
    }
    PairSeries::new(alphabet.clone(), 0, terms)
}

fn splice_sign(p: SuperGenerator, q_: SuperGenerator) -> i64 {
    match (p, q_) {
        (SuperGenerator::Partial(a), SuperGenerator::Base(b)) if a == b => 1,
        (SuperGenerator::Base(a), SuperGenerator::Partial(b)) if a == b => -1,
        _ => 0,
    }
}

fn bracket_words(p: &[SuperGenerator], qw: &[SuperGenerator], c: &Q, out: &mut LinComb<SuperWord>) {
    for i in 0..p.len() {
        for j in 0..qw.len() {
            let s = splice_sign(p[i], qw[j]);
            if s == 0 {
                continue;
            }
            let neg = (s < 0) ^ koszul(&p[..=i], &p[i + 1..]) ^ koszul(&qw[..j], &qw[j..]);
            let mut w = Vec::with_capacity(p.len() + qw.len() - 2);
            w.extend_from_slice(&p[i + 1..]);
            w.extend_from_slice(&p[..i]);
            w.extend_from_slice(&qw[j + 1..]);
            w.extend_from_slice(&qw[..j]);
            add_canonical(out, &w, if neg { -c.clone() } else { c.clone() });
        }
    }
}

pub(crate) fn bracket_terms(a: &LinComb<SuperWord>, b: &LinComb<SuperWord>) -> LinComb<SuperWord> {
    let mut out = LinComb::new();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            bracket_words(u, v, &(cu * cv), &mut out);
        }
    }
    out
}

fn lowest_weight_or(s: &SuperCyclicSeries) -> i64 {
    s.min_weight().unwrap_or(s.cutoff + 1)
}

/// The Schouten bracket `[P, Q]`; ∂-degrees add and drop by one.
///
/// Graded antisymmetry reads `[P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]`.
pub fn schouten(p: &SuperCyclicSeries, qs: &SuperCyclicSeries) -> Result<SuperCyclicSeries> {
    if !same_alphabet(&p.alphabet, &qs.alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    let cutoff = (p.cutoff + lowest_weight_or(qs)).min(qs.cutoff + lowest_weight_or(p));
    let terms = bracket_terms(&p.terms, &qs.terms);
    Ok(SuperCyclicSeries::new(p.alphabet.clone(), cutoff, terms))
}

fn require_surface(alphabet: &Arc<Alphabet>) -> Result<(usize, usize)> {
    alphabet.surface_type().ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))
}

/// Cutoff carried by exact elements such as `Π`.
pub const EXACT: i64 = i64::MAX / 4;

/// `Π = Σ_i |∂x_i ∂y_i| + Σ_j |z_j ∂z_j ∂z_j|`, of weight -2.
pub fn pi(alphabet: &Arc<Alphabet>) -> Result<SuperCyclicSeries> {
    require_surface(alphabet)?;
    use SuperGenerator::{Base, Partial};
    let mut terms = LinComb::new();
    for l in alphabet.letters() {
        match alphabet.kind(l) {
            GeneratorKind::X(i) => terms.add_term(vec![Partial(l), Partial(alphabet.y(i))], q(1)),
            GeneratorKind::Z(_) => terms.add_term(vec![Base(l), Partial(l), Partial(l)], q(1)),
            _ => {}
        }
    }
    Ok(SuperCyclicSeries::new(alphabet.clone(), EXACT, terms))
}

/// `|α E| = Σ_g |α g ∂g| - |α ∂g g|`.
pub fn e_insert(alpha: &SuperSeries) -> SuperCyclicSeries {
    SuperCyclicSeries::new(alpha.alphabet.clone(), alpha.cutoff, e_insert_terms(&alpha.alphabet, &alpha.terms))
}

pub(crate) fn e_insert_terms(alphabet: &Alphabet, alpha: &LinComb<SuperWord>) -> LinComb<SuperWord> {
    let mut out = LinComb::new();
    for (w, c) in alpha.iter() {
        for l in alphabet.letters() {
            let (g, d) = (SuperGenerator::Base(l), SuperGenerator::Partial(l));
            let mut a = w.clone();
            a.extend([g, d]);
            add_canonical(&mut out, &a, c.clone());
            let mut b = w.clone();
            b.extend([d, g]);
            add_canonical(&mut out, &b, -c.clone());
        }
    }
    out
}

/// Evaluates `P` of ∂-degree `k` on `k` cyclic arguments:
/// `[..[[P, a_k], a_{k-1}], .., a_1]`.
///
/// For `P = Π` this is the Goldman bracket of `a_1` and `a_2`.
pub fn partial_map(p: &SuperCyclicSeries, args: &[CyclicSeries]) -> Result<CyclicSeries> {
    if let Some(k) = p.homogeneous_degree() {
        if k != args.len() {
            return Err(Error::ArityMismatch { expected: k, found: args.len() });
        }
    } else if !p.is_zero() {
        return Err(Error::Precondition("P must have a single ∂-degree".into()));
    }
    let mut cur = p.clone();
    for a in args.iter().rev() {
        cur = schouten(&cur, &SuperCyclicSeries::from_cyclic(a))?;
    }
    cur.to_cyclic()
}

/// The Hamiltonian element of `|a|`, normalized so that
/// `partial_map(hamiltonian(a), [b]) = goldman_bracket(a, b)`.
pub fn hamiltonian(a: &CyclicSeries) -> Result<SuperCyclicSeries> {
    let p = pi(a.alphabet())?;
    Ok(-&schouten(&p, &SuperCyclicSeries::from_cyclic(a))?)
}
