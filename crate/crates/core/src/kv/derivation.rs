//! Tangential derivations and automorphisms of the free Lie algebra of a
//! surface, with the divergence and framing cocycles.

use std::sync::Arc;

use num_traits::Zero;

use crate::alphabet::{Alphabet, GeneratorKind, Letter, Word};
use crate::cyclic::{right_partial, trace, CyclicSeries};
use crate::error::{Error, Result};
use crate::lie::{bch_generic, bracket, LieOps};
use crate::linear::LinComb;
use crate::rational::{factorial, Q};
use crate::series::{same_alphabet, TensorSeries};

use super::Framing;

/// A positive-degree derivation `u` with `u(z_j) = [z_j, u_j]`.
///
/// `images[l]` is `u(l)` for every letter, known through `cutoff`;
/// `generators[j]` is `u_{j+1}`, known through `cutoff - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentialDerivation {
    alphabet: Arc<Alphabet>,
    cutoff: usize,
    images: Vec<TensorSeries>,
    generators: Vec<TensorSeries>,
}

fn z_letters(alpha: &Alphabet) -> Vec<Letter> {
    alpha.letters().filter(|&l| matches!(alpha.kind(l), GeneratorKind::Z(_))).collect()
}

fn xy_letters(alpha: &Alphabet) -> Vec<Letter> {
    alpha.letters().filter(|&l| !matches!(alpha.kind(l), GeneratorKind::Z(_))).collect()
}

impl TangentialDerivation {
    /// `xy_images` lists `u(x_1), u(y_1), …, u(x_g), u(y_g)`; `generators`
    /// lists `u_1, …, u_n`. All must be Lie series of positive degree.
    pub fn new(
        alphabet: &Arc<Alphabet>,
        cutoff: usize,
        xy_images: Vec<TensorSeries>,
        generators: Vec<TensorSeries>,
    ) -> Result<Self> {
        let (g, n) = alphabet
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        if xy_images.len() != 2 * g || generators.len() != n {
            return Err(Error::ArityMismatch { expected: 2 * g + n, found: xy_images.len() + generators.len() });
        }
        for s in xy_images.iter().chain(&generators) {
            if !same_alphabet(alphabet, s.alphabet()) {
                return Err(Error::AlphabetMismatch);
            }
            if !s.is_primitive() {
                return Err(Error::NotPrimitive);
            }
        }
        if xy_images.iter().any(|s| s.min_weight().is_some_and(|k| k < 2)) {
            return Err(Error::Precondition("images of x_i, y_i must have weight >= 2".into()));
        }
        let generators: Vec<TensorSeries> = generators.into_iter().map(|u| u.truncate(cutoff.saturating_sub(2))).collect();
        let mut images = vec![TensorSeries::zero(alphabet, cutoff); alphabet.len()];
        for (l, img) in xy_letters(alphabet).into_iter().zip(xy_images) {
            images[l as usize] = img.truncate(cutoff);
        }
        for (l, u) in z_letters(alphabet).into_iter().zip(&generators) {
            let z = TensorSeries::letter(alphabet, cutoff, l);
            images[l as usize] = bracket(&z, &u.extend_cutoff(cutoff)).truncate(cutoff);
        }
        Ok(TangentialDerivation { alphabet: alphabet.clone(), cutoff, images, generators })
    }

    pub fn zero(alphabet: &Arc<Alphabet>, cutoff: usize) -> Result<Self> {
        let (g, n) = alphabet
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        let z = TensorSeries::zero(alphabet, cutoff);
        Self::new(alphabet, cutoff, vec![z.clone(); 2 * g], vec![z; n])
    }

    /// The inner derivation `u_ℓ(a) = [a, ℓ]`, with every `u_j = ℓ`.
    pub fn inner(ell: &TensorSeries) -> Result<Self> {
        let alpha = ell.alphabet();
        let (_, n) = alpha
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        if !ell.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let cutoff = ell.cutoff() + 1;
        let xy = xy_letters(alpha)
            .into_iter()
            .map(|l| bracket(&TensorSeries::letter(alpha, cutoff, l), &ell.extend_cutoff(cutoff)).truncate(ell.cutoff() + 1))
            .collect();
        Self::new(alpha, cutoff, xy, vec![ell.clone(); n])
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// `u(l)` for a letter.
    pub fn image(&self, l: Letter) -> &TensorSeries {
        &self.images[l as usize]
    }

    /// `u(x_1), u(y_1), …` in alphabet order.
    pub fn xy_images(&self) -> Vec<TensorSeries> {
        xy_letters(&self.alphabet).into_iter().map(|l| self.images[l as usize].clone()).collect()
    }

    pub fn generators(&self) -> &[TensorSeries] {
        &self.generators
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        let c = cutoff.min(self.cutoff);
        TangentialDerivation {
            alphabet: self.alphabet.clone(),
            cutoff: c,
            images: self.images.iter().map(|s| s.truncate(c)).collect(),
            generators: self.generators.iter().map(|s| s.truncate(c.saturating_sub(2))).collect(),
        }
    }

    /// `u(a)` by the Leibniz rule, known through `min(cutoff(a) + 1, cutoff(u))`.
    pub fn apply(&self, a: &TensorSeries) -> TensorSeries {
        let cutoff = (a.cutoff() + 1).min(self.cutoff);
        let alpha = &self.alphabet;
        let mut out = LinComb::new();
        for (w, c) in a.iter() {
            let wt = alpha.word_weight(&w.0);
            for (i, &l) in w.0.iter().enumerate() {
                let rest = wt - alpha.weight(l);
                for (v, cv) in self.images[l as usize].iter() {
                    if rest + alpha.word_weight(&v.0) > cutoff {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(w.len() + v.len());
                    nw.extend_from_slice(&w.0[..i]);
                    nw.extend_from_slice(&v.0);
                    nw.extend_from_slice(&w.0[i + 1..]);
                    out.add_term(Word(nw), c * cv);
                }
            }
        }
        TensorSeries::new(alpha.clone(), cutoff, out)
    }

    /// The induced action on cyclic words.
    pub fn apply_cyclic(&self, c: &CyclicSeries) -> CyclicSeries {
        let rep = TensorSeries::new(c.alphabet().clone(), c.cutoff(), c.terms().clone());
        trace(&self.apply(&rep))
    }

    /// `[u, v] = u∘v - v∘u`, with generators `u(v_j) - v(u_j) + [u_j, v_j]`.
    pub fn bracket(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let images: Vec<TensorSeries> = (0..self.alphabet.len())
            .map(|l| (&self.apply(&other.images[l]) - &other.apply(&self.images[l])).truncate(cutoff))
            .collect();
        let gc = cutoff.saturating_sub(2);
        let generators = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(u, v)| {
                let t = &(&self.apply(v) - &other.apply(u)) + &bracket(u, v);
                t.truncate(gc)
            })
            .collect();
        TangentialDerivation { alphabet: self.alphabet.clone(), cutoff, images, generators }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        TangentialDerivation {
            alphabet: self.alphabet.clone(),
            cutoff,
            images: self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect(),
            generators: self.generators.iter().zip(&other.generators).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        TangentialDerivation {
            alphabet: self.alphabet.clone(),
            cutoff: self.cutoff,
            images: self.images.iter().map(|a| a.scale(c)).collect(),
            generators: self.generators.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|s| s.is_zero()) && self.generators.iter().all(|s| s.is_zero())
    }

    /// `div(u) = |Σ_l ∂_l u(l)|`.
    pub fn divergence(&self) -> CyclicSeries {
        let mut acc: Option<TensorSeries> = None;
        for l in self.alphabet.letters() {
            let d = right_partial(l, &self.images[l as usize]).expect("images have no constant term");
            acc = Some(match acc {
                None => d,
                Some(a) => &a + &d,
            });
        }
        match acc {
            Some(a) => trace(&a),
            None => CyclicSeries::zero(&self.alphabet, self.cutoff),
        }
    }

    /// `c_f(u) = Σ_j rot_f(γ_j) |u_j|`.
    pub fn framing_cocycle(&self, framing: &Framing) -> CyclicSeries {
        let mut acc = CyclicSeries::zero(&self.alphabet, self.cutoff.saturating_sub(2));
        for (u, &r) in self.generators.iter().zip(&framing.rot_gamma) {
            acc = &acc + &trace(u).scale(&Q::from_integer(r.into()));
        }
        acc
    }

    /// `Σ_k u^k(c) / (k+1)!`, the action of `(e^u - 1)/u`.
    pub fn integrate(&self, c: &CyclicSeries) -> CyclicSeries {
        let mut acc = c.clone();
        let mut term = c.clone();
        let mut k = 1;
        loop {
            term = self.apply_cyclic(&term);
            if term.is_zero() {
                return acc;
            }
            acc = &acc + &term.scale(&factorial(k + 1).recip());
            k += 1;
        }
    }
}

impl LieOps for TangentialDerivation {
    fn lie_bracket(&self, other: &Self) -> Self {
        self.bracket(other)
    }
    fn lie_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn lie_scale(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn lie_zero(&self) -> Self {
        self.scale(&Q::zero())
    }
}

/// `F = exp(u)`, stored by its logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentialAutomorphism {
    log: TangentialDerivation,
}

impl TangentialAutomorphism {
    pub fn exp(u: TangentialDerivation) -> Self {
        TangentialAutomorphism { log: u }
    }

    pub fn identity(alphabet: &Arc<Alphabet>, cutoff: usize) -> Result<Self> {
        Ok(Self::exp(TangentialDerivation::zero(alphabet, cutoff)?))
    }

    /// The inner automorphism `F_ℓ(a) = e^{-ℓ} a e^{ℓ}`.
    pub fn inner(ell: &TensorSeries) -> Result<Self> {
        Ok(Self::exp(TangentialDerivation::inner(ell)?))
    }

    pub fn log(&self) -> &TangentialDerivation {
        &self.log
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.log.alphabet()
    }

    pub fn cutoff(&self) -> usize {
        self.log.cutoff()
    }

    /// `F(a) = Σ_k u^k(a) / k!`.
    pub fn apply(&self, a: &TensorSeries) -> TensorSeries {
        let mut acc = a.truncate(self.cutoff());
        let mut term = acc.clone();
        let mut k = 1;
        loop {
            term = self.log.apply(&term);
            if term.is_zero() {
                return acc;
            }
            acc = &acc + &term.scale(&factorial(k).recip());
            k += 1;
        }
    }

    pub fn apply_cyclic(&self, c: &CyclicSeries) -> CyclicSeries {
        let rep = TensorSeries::new(c.alphabet().clone(), c.cutoff(), c.terms().clone());
        trace(&self.apply(&rep))
    }

    pub fn inverse(&self) -> Self {
        Self::exp(self.log.scale(&-Q::from_integer(1.into())))
    }

    /// `F∘G`, through the BCH series in the Lie algebra of derivations.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.cutoff().min(other.cutoff());
        Self::exp(bch_generic(&self.log.truncate(n), &other.log.truncate(n), n))
    }

    /// `f_j` with `F(z_j) = e^{-f_j} z_j e^{f_j}`: `e^{f_j} = exp(u + L_{u_j})(1)`.
    pub fn conjugators(&self) -> Vec<TensorSeries> {
        let alpha = self.alphabet();
        let n = self.cutoff().saturating_sub(2);
        self.log
            .generators
            .iter()
            .map(|uj| {
                let uj = uj.truncate(n);
                let mut acc = TensorSeries::one(alpha, n);
                let mut term = acc.clone();
                let mut k = 1;
                loop {
                    term = (&self.log.apply(&term) + &(&uj * &term)).truncate(n);
                    if term.is_zero() {
                        break;
                    }
                    acc = &acc + &term.scale(&factorial(k).recip());
                    k += 1;
                }
                acc.log().expect("constant term is one")
            })
            .collect()
    }

    /// `j(F) = ((e^u - 1)/u) · div(u)`.
    pub fn j(&self) -> CyclicSeries {
        self.log.integrate(&self.log.divergence())
    }

    /// `C_f(F) = ((e^u - 1)/u) · c_f(u)`.
    pub fn framing_j(&self, framing: &Framing) -> CyclicSeries {
        self.log.integrate(&self.log.framing_cocycle(framing))
    }

    /// `j_f = j - C_f`.
    pub fn j_f(&self, framing: &Framing) -> CyclicSeries {
        &self.j() - &self.framing_j(framing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn letter(a: &Arc<Alphabet>, n: usize, l: Letter) -> TensorSeries {
        TensorSeries::letter(a, n, l)
    }

    #[test]
    fn inner_divergence_example() {
        let a = Alphabet::surface(1, 1);
        let x = letter(&a, 6, a.x(1));
        let u = TangentialDerivation::inner(&x).unwrap();
        assert_eq!(u.divergence().terms(), trace(&x).scale(&q(-2)).terms());
        assert!(TangentialDerivation::zero(&a, 5).unwrap().divergence().is_zero());
    }

    #[test]
    fn inner_automorphism_conjugates() {
        let a = Alphabet::surface(1, 1);
        let n = 5;
        let ell = &letter(&a, n, a.x(1)) + &bracket(&letter(&a, n, a.y(1)), &letter(&a, n, a.z(1)));
        let f = TangentialAutomorphism::inner(&ell).unwrap();
        let y = letter(&a, n, a.y(1));
        let expected = &(&(-&ell).exp().unwrap() * &y) * &ell.exp().unwrap();
        assert_eq!(f.apply(&y).truncate(n), expected.truncate(n));
        let z = letter(&a, n, a.z(1));
        let fj = &f.conjugators()[0];
        let conj = &(&(-fj).exp().unwrap().extend_cutoff(n) * &z) * &fj.exp().unwrap().extend_cutoff(n);
        assert_eq!(f.apply(&z).truncate(n - 2), conj.truncate(n - 2));
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = Alphabet::surface(1, 1);
        let n = 5;
        let (x, y, z) = (letter(&a, n, a.x(1)), letter(&a, n, a.y(1)), letter(&a, n, a.z(1)));
        let u = TangentialDerivation::new(&a, n, vec![bracket(&x, &y), bracket(&y, &z)], vec![x.clone()]).unwrap();
        let v = TangentialDerivation::new(&a, n, vec![bracket(&y, &bracket(&x, &y)), bracket(&x, &y)], vec![y.clone()]).unwrap();
        let (f, g) = (TangentialAutomorphism::exp(u), TangentialAutomorphism::exp(v));
        let fg = f.compose(&g);
        for s in [&x, &y, &z] {
            assert_eq!(fg.apply(s), f.apply(&g.apply(s)).truncate(fg.apply(s).cutoff()));
        }
    }
}
