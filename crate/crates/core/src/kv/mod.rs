//! Kashiwara–Vergne equations for a surface of genus `g` with `n + 1`
//! boundary components: tangential automorphisms, cocycles, expansions and
//! equation checkers.

pub mod derivation;
pub mod equations;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::cyclic::{trace, CyclicSeries};
use crate::error::{Error, Result};
use crate::lie::{GroupLike, LieElement};
use crate::necklace::SurfaceAlgebra;
use crate::rational::{factorial, q, Q};
use crate::series::TensorSeries;
use crate::symplectic::{normalize_conjugacy_linear, normalize_conjugacy_symplectic_to};

pub use derivation::{TangentialAutomorphism, TangentialDerivation};
pub use equations::{check_kv1, check_kv1_prime, check_kv2_prime, solve_kv, solve_kv1, Kv2Report, KvSolution};

/// Rotation numbers of the standard generators under a framing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framing {
    pub rot_alpha: Vec<i64>,
    pub rot_beta: Vec<i64>,
    pub rot_gamma: Vec<i64>,
    pub rot_gamma0: i64,
}

impl Framing {
    /// Checks `Σ_j rot(γ_j) - rot(γ_0) = 1 - 2g - n`.
    pub fn new(rot_alpha: Vec<i64>, rot_beta: Vec<i64>, rot_gamma: Vec<i64>, rot_gamma0: i64) -> Result<Self> {
        let f = Framing { rot_alpha, rot_beta, rot_gamma, rot_gamma0 };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.rot_alpha.len();
        let n = self.rot_gamma.len();
        if self.rot_beta.len() != g {
            return Err(Error::ArityMismatch { expected: g, found: self.rot_beta.len() });
        }
        let chi = 1 - 2 * g as i64 - n as i64;
        if self.rot_gamma.iter().sum::<i64>() - self.rot_gamma0 != chi {
            return Err(Error::Precondition(format!("rotation numbers violate Poincaré–Hopf (χ = {chi})")));
        }
        Ok(())
    }

    /// The framing with all `rot(α_i) = rot(β_i) = rot(γ_j) = 0`.
    pub fn zero(g: usize, n: usize) -> Self {
        Framing {
            rot_alpha: vec![0; g],
            rot_beta: vec![0; g],
            rot_gamma: vec![0; n],
            rot_gamma0: 2 * g as i64 + n as i64 - 1,
        }
    }

    pub fn genus(&self) -> usize {
        self.rot_alpha.len()
    }

    pub fn boundary_count(&self) -> usize {
        self.rot_gamma.len()
    }

    fn check_surface(&self, alphabet: &Alphabet) -> Result<()> {
        match alphabet.surface_type() {
            Some((g, n)) if g == self.genus() && n == self.boundary_count() => Ok(()),
            _ => Err(Error::Precondition("framing does not match the surface".into())),
        }
    }
}

/// A generator of the free group `π = ⟨α_i, β_i, γ_j⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FreeGenerator {
    Alpha(usize),
    Beta(usize),
    Gamma(usize),
}

/// A reduced word in the free group; `true` marks an inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeGroupWord {
    letters: Vec<(FreeGenerator, bool)>,
}

impl FreeGroupWord {
    pub fn new<I: IntoIterator<Item = (FreeGenerator, bool)>>(letters: I) -> Self {
        let mut out: Vec<(FreeGenerator, bool)> = Vec::new();
        for (g, inv) in letters {
            if out.last() == Some(&(g, !inv)) {
                out.pop();
            } else {
                out.push((g, inv));
            }
        }
        FreeGroupWord { letters: out }
    }

    pub fn generator(g: FreeGenerator) -> Self {
        Self::new([(g, false)])
    }

    pub fn letters(&self) -> &[(FreeGenerator, bool)] {
        &self.letters
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.letters.iter().rev().map(|&(g, inv)| (g, !inv)))
    }

    /// `γ_0 = Π_i α_i β_i α_i⁻¹ β_i⁻¹ · Π_j γ_j`.
    pub fn gamma0(g: usize, n: usize) -> Self {
        let mut letters = Vec::new();
        for i in 1..=g {
            letters.extend([
                (FreeGenerator::Alpha(i), false),
                (FreeGenerator::Beta(i), false),
                (FreeGenerator::Alpha(i), true),
                (FreeGenerator::Beta(i), true),
            ]);
        }
        letters.extend((1..=n).map(|j| (FreeGenerator::Gamma(j), false)));
        Self::new(letters)
    }
}

/// A group-like expansion, given by its values on the free generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    alphabet: Arc<Alphabet>,
    alpha: Vec<GroupLike>,
    beta: Vec<GroupLike>,
    gamma: Vec<GroupLike>,
}

impl Expansion {
    pub fn new(alphabet: &Arc<Alphabet>, alpha: Vec<GroupLike>, beta: Vec<GroupLike>, gamma: Vec<GroupLike>) -> Result<Self> {
        let (g, n) = alphabet
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        if alpha.len() != g || beta.len() != g || gamma.len() != n {
            return Err(Error::ArityMismatch { expected: 2 * g + n, found: alpha.len() + beta.len() + gamma.len() });
        }
        Ok(Expansion { alphabet: alphabet.clone(), alpha, beta, gamma })
    }

    /// `θ_exp`: `α_i ↦ e^{x_i}`, `β_i ↦ e^{y_i}`, `γ_j ↦ e^{z_j}`.
    pub fn exponential(alphabet: &Arc<Alphabet>, cutoff: usize) -> Result<Self> {
        let (g, n) = alphabet
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        let e = |l| LieElement::trusted(TensorSeries::letter(alphabet, cutoff, l)).exp();
        Self::new(
            alphabet,
            (1..=g).map(|i| e(alphabet.x(i))).collect(),
            (1..=g).map(|i| e(alphabet.y(i))).collect(),
            (1..=n).map(|j| e(alphabet.z(j))).collect(),
        )
    }

    /// `θ_F = F⁻¹ ∘ θ_exp`.
    pub fn twisted(f: &TangentialAutomorphism) -> Result<Self> {
        let base = Self::exponential(f.alphabet(), f.cutoff())?;
        let finv = f.inverse();
        Ok(base.map(|s| GroupLike::trusted(finv.apply(s.series()))))
    }

    /// `g θ(·) g⁻¹`.
    pub fn conjugated(&self, g: &GroupLike) -> Self {
        self.map(|s| GroupLike::trusted(g.conjugate(s.series())))
    }

    fn map(&self, f: impl Fn(&GroupLike) -> GroupLike) -> Self {
        Expansion {
            alphabet: self.alphabet.clone(),
            alpha: self.alpha.iter().map(&f).collect(),
            beta: self.beta.iter().map(&f).collect(),
            gamma: self.gamma.iter().map(&f).collect(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn cutoff(&self) -> usize {
        self.alpha.iter().chain(&self.beta).chain(&self.gamma).map(|s| s.series().cutoff()).min().unwrap_or(0)
    }

    fn value(&self, g: FreeGenerator) -> Result<&GroupLike> {
        let v = match g {
            FreeGenerator::Alpha(i) => i.checked_sub(1).and_then(|i| self.alpha.get(i)),
            FreeGenerator::Beta(i) => i.checked_sub(1).and_then(|i| self.beta.get(i)),
            FreeGenerator::Gamma(j) => j.checked_sub(1).and_then(|j| self.gamma.get(j)),
        };
        v.ok_or_else(|| Error::Precondition(format!("generator {g:?} out of range")))
    }

    /// `θ(w)` as a monoid homomorphism.
    pub fn apply(&self, w: &FreeGroupWord) -> Result<GroupLike> {
        let mut acc = TensorSeries::one(&self.alphabet, self.cutoff());
        for &(g, inv) in w.letters() {
            let v = self.value(g)?;
            acc = if inv { &acc * &v.inverse().into_series() } else { &acc * v.series() };
        }
        Ok(GroupLike::trusted(acc))
    }

    /// Each `θ(γ_j)` is conjugate to `e^{z_j}`.
    pub fn is_tangential(&self) -> bool {
        self.gamma.iter().enumerate().all(|(j, v)| {
            let z = LieElement::trusted(TensorSeries::letter(&self.alphabet, v.series().cutoff(), self.alphabet.z(j + 1)));
            normalize_conjugacy_linear(&z, &v.log()).is_ok()
        })
    }

    /// Tangential and `θ(γ_0) = e^ω`.
    pub fn is_special(&self) -> bool {
        let s = SurfaceAlgebra::of_alphabet(&self.alphabet).expect("surface alphabet");
        let Ok(t0) = self.apply(&FreeGroupWord::gamma0(s.genus(), s.boundary_count())) else { return false };
        let n = t0.series().cutoff();
        self.is_tangential() && t0.series() == &s.omega(n).exp().expect("no constant term")
    }

    /// Tangential and `θ(γ_0)` conjugate to `e^ω`.
    pub fn is_conjugate_special(&self) -> bool {
        let s = SurfaceAlgebra::of_alphabet(&self.alphabet).expect("surface alphabet");
        let Ok(t0) = self.apply(&FreeGroupWord::gamma0(s.genus(), s.boundary_count())) else { return false };
        let n = t0.series().cutoff();
        let omega = LieElement::trusted(s.omega(n));
        let conj = if s.boundary_count() > 0 {
            normalize_conjugacy_linear(&omega, &t0.log()).is_ok()
        } else if s.genus() > 0 {
            normalize_conjugacy_symplectic_to(&omega, &t0.log()).is_ok()
        } else {
            true
        };
        self.is_tangential() && conj
    }
}

/// `θ_exp(w)`.
pub fn theta_exp(alphabet: &Arc<Alphabet>, cutoff: usize, w: &FreeGroupWord) -> Result<GroupLike> {
    Expansion::exponential(alphabet, cutoff)?.apply(w)
}

/// `θ_F(w) = F⁻¹(θ_exp(w))`.
pub fn theta_f(f: &TangentialAutomorphism, w: &FreeGroupWord) -> Result<GroupLike> {
    Expansion::twisted(f)?.apply(w)
}

/// `ξ = log(Π_i e^{x_i} e^{y_i} e^{-x_i} e^{-y_i} · Π_j e^{z_j})`.
pub fn xi(s: &SurfaceAlgebra, cutoff: usize) -> LieElement {
    let w = FreeGroupWord::gamma0(s.genus(), s.boundary_count());
    theta_exp(s.alphabet(), cutoff, &w).expect("valid word").log()
}

/// `|p|` with `p = Σ_i rot(β_i) x_i - rot(α_i) y_i`.
pub fn p_element(s: &SurfaceAlgebra, framing: &Framing, cutoff: usize) -> Result<CyclicSeries> {
    framing.check_surface(s.alphabet())?;
    let a = s.alphabet();
    let mut p = TensorSeries::zero(a, cutoff);
    for i in 1..=s.genus() {
        p = &p + &TensorSeries::letter(a, cutoff, a.x(i)).scale(&q(framing.rot_beta[i - 1]));
        p = &p - &TensorSeries::letter(a, cutoff, a.y(i)).scale(&q(framing.rot_alpha[i - 1]));
    }
    Ok(trace(&p))
}

/// `(e^s - 1)/s` evaluated at a letter, then `log`.
fn log_exp_quotient(a: &Arc<Alphabet>, cutoff: usize, l: crate::alphabet::Letter) -> TensorSeries {
    let s = TensorSeries::letter(a, cutoff, l);
    let mut acc = TensorSeries::one(a, cutoff);
    let mut pow = TensorSeries::one(a, cutoff);
    for k in 1..=cutoff {
        pow = &pow * &s;
        acc = &acc + &pow.scale(&factorial(k + 1).recip());
    }
    acc.log().expect("constant term is one")
}

/// `r = Σ_i |log((e^{x_i}-1)/x_i) + log((e^{y_i}-1)/y_i)|`.
pub fn r_element(s: &SurfaceAlgebra, cutoff: usize) -> CyclicSeries {
    let a = s.alphabet();
    let mut acc = TensorSeries::zero(a, cutoff);
    for i in 1..=s.genus() {
        acc = &acc + &log_exp_quotient(a, cutoff, a.x(i));
        acc = &acc + &log_exp_quotient(a, cutoff, a.y(i));
    }
    trace(&acc)
}

/// Coefficients of `log((e^s - 1)/s)` through `s^k`.
pub fn log_exp_quotient_coefficients(k: usize) -> Vec<Q> {
    let a = Alphabet::basis(&[1]).expect("valid weights");
    let s = log_exp_quotient(&a, k, 0);
    (0..=k).map(|i| s.coeff(&crate::alphabet::Word(vec![0; i]))).collect()
}
