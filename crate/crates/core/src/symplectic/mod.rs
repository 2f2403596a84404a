//! Symplectic pairing, contraction operators and the trace identities used
//! to solve `[ω₀, b] = a`.
//!
//! Tensors here are homogeneous polynomials over an alphabet whose letters
//! `x_i, y_i` all have weight 1, so weight and tensor degree agree.

pub mod conjugacy;

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, GeneratorKind, Letter, Word};
use crate::cyclic::trace;
use crate::error::{Error, Result};
use crate::linalg::{ColumnReducer, Coords};
use crate::linear::LinComb;
use crate::rational::{q, Q};
use crate::series::TensorSeries;

pub use conjugacy::{
    conjugates_to, default_l_window, normalize_conjugacy_linear, normalize_conjugacy_symplectic,
    normalize_conjugacy_symplectic_to, solve_omega_bracket,
};

/// `V = span{x_i, y_i}` with `⟨x_i, y_i⟩ = 1 = -⟨y_i, x_i⟩`.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    alphabet: Arc<Alphabet>,
    genus: usize,
}

/// One factor of a contraction operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `1_V`: keeps one letter.
    Id,
    /// `C`: pairs two adjacent letters into a scalar.
    C,
    /// `π`: replaces two adjacent letters by their `Q`-component.
    Pi,
}

impl Slot {
    fn arity(self) -> usize {
        match self {
            Slot::Id => 1,
            Slot::C | Slot::Pi => 2,
        }
    }
}

/// `slot^{⊗k}` as a pattern fragment.
pub fn repeat(slot: Slot, k: usize) -> Vec<Slot> {
    vec![slot; k]
}

impl SymplecticSpace {
    /// The space of genus `g`, over the alphabet `x1 < y1 < … < xg < yg`.
    pub fn new(g: usize) -> Self {
        SymplecticSpace { alphabet: Alphabet::surface(g, 0), genus: g }
    }

    /// The symplectic part of a surface alphabet; `z` letters pair to zero.
    pub fn of_alphabet(alphabet: &Arc<Alphabet>) -> Result<Self> {
        let (g, _) = alphabet
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        Ok(SymplecticSpace { alphabet: alphabet.clone(), genus: g })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// `C(a, b)` on letters.
    pub fn pairing(&self, a: Letter, b: Letter) -> i64 {
        match (self.alphabet.kind(a), self.alphabet.kind(b)) {
            (GeneratorKind::X(i), GeneratorKind::Y(j)) if i == j => 1,
            (GeneratorKind::Y(i), GeneratorKind::X(j)) if i == j => -1,
            _ => 0,
        }
    }

    /// The basis letters `x_i, y_i` of `V`.
    pub fn basis(&self) -> Vec<Letter> {
        (1..=self.genus).flat_map(|i| [self.alphabet.x(i), self.alphabet.y(i)]).collect()
    }

    /// `ω₀ = Σ_i [x_i, y_i]`.
    pub fn omega0(&self, cutoff: usize) -> TensorSeries {
        let mut terms = LinComb::new();
        for i in 1..=self.genus {
            let (x, y) = (self.alphabet.x(i), self.alphabet.y(i));
            terms.add_term(Word(vec![x, y]), Q::one());
            terms.add_term(Word(vec![y, x]), -Q::one());
        }
        TensorSeries::new(self.alphabet.clone(), cutoff, terms)
    }

    /// `C` on two linear elements.
    pub fn pair_vectors(&self, u: &TensorSeries, v: &TensorSeries) -> Q {
        let mut acc = Q::zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                if a.len() == 1 && b.len() == 1 {
                    acc += ca * cb * q(self.pairing(a.0[0], b.0[0]));
                }
            }
        }
        acc
    }

    /// `π(ab) = ab - C(a,b)/(2g) ω₀`.
    fn pi_letters(&self, a: Letter, b: Letter) -> Vec<(Vec<Letter>, Q)> {
        let mut out = vec![(vec![a, b], Q::one())];
        let c = self.pairing(a, b);
        if c != 0 {
            let f = Q::new(c.into(), (2 * self.genus as i64).into());
            for i in 1..=self.genus {
                let (x, y) = (self.alphabet.x(i), self.alphabet.y(i));
                out.push((vec![x, y], -f.clone()));
                out.push((vec![y, x], f.clone()));
            }
        }
        out
    }

    /// Applies a tensor product of `1_V`, `C` and `π` to every word; each word
    /// must have length equal to the pattern arity.
    pub fn contract(&self, a: &TensorSeries, pattern: &[Slot]) -> Result<TensorSeries> {
        if pattern.contains(&Slot::Pi) && self.genus == 0 {
            return Err(Error::Precondition("π needs a nonzero symplectic space".into()));
        }
        let arity: usize = pattern.iter().map(|s| s.arity()).sum();
        let out_len: usize = pattern.iter().map(|s| if *s == Slot::C { 0 } else { s.arity() }).sum();
        if arity > a.cutoff() {
            return Err(Error::WeightOutOfRange { weight: arity, cutoff: a.cutoff() });
        }
        let mut terms = LinComb::new();
        for (w, c) in a.iter() {
            if w.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: w.len() });
            }
            let mut partial: Vec<(Vec<Letter>, Q)> = vec![(Vec::with_capacity(out_len), c.clone())];
            let mut pos = 0;
            for slot in pattern {
                match slot {
                    Slot::Id => {
                        for (p, _) in partial.iter_mut() {
                            p.push(w.0[pos]);
                        }
                    }
                    Slot::C => {
                        let k = self.pairing(w.0[pos], w.0[pos + 1]);
                        if k == 0 {
                            partial.clear();
                        } else {
                            for (_, v) in partial.iter_mut() {
                                *v *= q(k);
                            }
                        }
                    }
                    Slot::Pi => {
                        let pieces = self.pi_letters(w.0[pos], w.0[pos + 1]);
                        let mut next = Vec::with_capacity(partial.len() * pieces.len());
                        for (p, v) in &partial {
                            for (piece, f) in &pieces {
                                let mut np = p.clone();
                                np.extend_from_slice(piece);
                                next.push((np, v * f));
                            }
                        }
                        partial = next;
                    }
                }
                pos += slot.arity();
                if partial.is_empty() {
                    break;
                }
            }
            for (p, v) in partial {
                terms.add_term(Word(p), v);
            }
        }
        Ok(TensorSeries::new(self.alphabet.clone(), out_len, terms))
    }

    fn exact(&self, s: &TensorSeries, degree: usize) -> TensorSeries {
        s.extend_cutoff(degree)
    }

    /// The embedded cyclic class `|a|` of a homogeneous tensor, as a ν-invariant tensor.
    pub fn cyclic_embedding(&self, a: &TensorSeries) -> TensorSeries {
        trace(a).embed()
    }

    /// `ω₀^l` as an exact polynomial.
    pub fn omega0_power(&self, l: usize) -> TensorSeries {
        self.omega0(2 * l).pow(l)
    }

    /// `C^{⊗l} |ω₀^l|`, computed by contraction.
    pub fn trace_contraction_m0(&self, l: usize) -> Result<Q> {
        let e = self.cyclic_embedding(&self.omega0_power(l));
        Ok(self.contract(&e, &repeat(Slot::C, l))?.constant_term())
    }

    /// `(1_V ⊗ C^{⊗l}) |a ω₀^l|` for a linear `a`.
    pub fn trace_contraction_m1(&self, a: &TensorSeries, l: usize) -> Result<TensorSeries> {
        let prod = &self.exact(a, 2 * l + 1) * &self.omega0_power(l).extend_cutoff(2 * l + 1);
        let mut pattern = vec![Slot::Id];
        pattern.extend(repeat(Slot::C, l));
        self.contract(&self.cyclic_embedding(&prod), &pattern)
    }

    /// `(C^{⊗l} ⊗ 1_V)(x ω₀^l)` and `(1_V ⊗ C^{⊗l})(ω₀^l x)`.
    pub fn contract_end(&self, x: &TensorSeries, l: usize) -> Result<(TensorSeries, TensorSeries)> {
        let d = 2 * l + 1;
        let xe = self.exact(x, d);
        let wl = self.omega0_power(l).extend_cutoff(d);
        let mut left = repeat(Slot::C, l);
        left.push(Slot::Id);
        let mut right = vec![Slot::Id];
        right.extend(repeat(Slot::C, l));
        Ok((self.contract(&(&xe * &wl), &left)?, self.contract(&(&wl * &xe), &right)?))
    }

    fn product(&self, factors: &[TensorSeries], degree: usize) -> TensorSeries {
        factors.iter().fold(TensorSeries::one(&self.alphabet, degree), |acc, f| &acc * &self.exact(f, degree))
    }

    /// `Cont(u_a ⋯ u_b) = C(u_a,u_{a+1}) C(u_{a+2},u_{a+3}) ⋯` (1-based, inclusive).
    fn cont(&self, u: &[TensorSeries], a: usize, b: usize) -> Q {
        let mut acc = Q::one();
        let mut i = a;
        while i < b {
            acc *= self.pair_vectors(&u[i - 1], &u[i]);
            i += 2;
        }
        acc
    }

    /// The sum `Φ(u)` (also `Φ₂(u)`) shared by the odd and even closed forms.
    fn phi(&self, u: &[TensorSeries]) -> TensorSeries {
        let m = u.len();
        let mut acc = TensorSeries::zero(&self.alphabet, m);
        let mut k = 1;
        while k < m {
            let sign = if (k - 1) / 2 % 2 == 0 { q(1) } else { q(-1) };
            let w = self.omega0_power((k - 1) / 2);
            let c1 = self.cont(u, m - k + 1, m - 1);
            if !c1.is_zero() {
                let mut f = vec![u[m - 1].clone(), w.clone()];
                f.extend(u[..m - k].iter().cloned());
                acc = &acc + &self.product(&f, m).scale(&(c1 * &sign));
            }
            let c2 = self.cont(u, 2, k);
            if !c2.is_zero() {
                let mut f: Vec<TensorSeries> = u[k..].to_vec();
                f.push(w);
                f.push(u[0].clone());
                acc = &acc + &self.product(&f, m).scale(&(c2 * &sign));
            }
            k += 2;
        }
        acc
    }

    fn outer_pi(&self, m: usize) -> Vec<Slot> {
        let mut p = vec![Slot::Pi];
        p.extend(repeat(Slot::Id, m - 4));
        p.push(Slot::Pi);
        p
    }

    /// `(π ⊗ 1^{⊗m-4} ⊗ π)(1^{⊗m} ⊗ C^{⊗l}) |u_1 ⋯ u_m ω₀^l|`, by direct contraction.
    pub fn lemma_lhs(&self, u: &[TensorSeries], l: usize) -> Result<TensorSeries> {
        let m = u.len();
        let d = m + 2 * l;
        let mut f: Vec<TensorSeries> = u.to_vec();
        f.push(self.omega0_power(l));
        let e = self.cyclic_embedding(&self.product(&f, d));
        let mut inner = repeat(Slot::Id, m);
        inner.extend(repeat(Slot::C, l));
        let c = self.contract(&e, &inner)?;
        self.contract(&c, &self.outer_pi(m))
    }

    fn check_vectors(&self, u: &[TensorSeries]) -> Result<()> {
        if u.iter().any(|v| v.iter().any(|(w, _)| w.len() != 1)) {
            return Err(Error::Precondition("lemma inputs must be vectors of V".into()));
        }
        Ok(())
    }

    /// Closed form for odd `m ≥ 5`, `l ≥ (m+1)/2`.
    pub fn lemma_51_rhs(&self, u: &[TensorSeries], l: usize) -> Result<TensorSeries> {
        let m = u.len();
        if m < 5 || m % 2 == 0 || 2 * l < m + 1 {
            return Err(Error::Precondition("needs odd m >= 5 and l >= (m+1)/2".into()));
        }
        self.check_vectors(u)?;
        let sign = if l % 2 == 0 { q(1) } else { q(-1) };
        let two_g_l = q(2 * self.genus as i64).pow(l as i32);
        let body = &self.product(u, m).scale(&two_g_l) + &self.phi(u).scale(&sign);
        self.contract(&body, &self.outer_pi(m))
    }

    /// Closed form for even `m ≥ 4`, `l ≥ m/2`.
    pub fn lemma_52_rhs(&self, u: &[TensorSeries], l: usize) -> Result<TensorSeries> {
        let m = u.len();
        if m < 4 || m % 2 == 1 || 2 * l < m {
            return Err(Error::Precondition("needs even m >= 4 and l >= m/2".into()));
        }
        self.check_vectors(u)?;
        let sign = if l % 2 == 0 { q(1) } else { q(-1) };
        let two_g_l = q(2 * self.genus as i64).pow(l as i32);
        let half = m / 2;
        let phi1_sign = if (half - 1) % 2 == 0 { q(1) } else { q(-1) };
        let phi1 = self
            .product(&[u[m - 1].clone(), self.omega0_power(half - 1), u[0].clone()], m)
            .scale(&(self.cont(u, 2, m - 1) * phi1_sign));
        let l_minus = q(l as i64) - q(half as i64);
        let body = &(&self.product(u, m).scale(&two_g_l) + &phi1.scale(&(l_minus * &sign))) + &self.phi(u).scale(&sign);
        self.contract(&body, &self.outer_pi(m))
    }

    pub fn verify_lemma_51(&self, u: &[TensorSeries], l: usize) -> Result<bool> {
        let rhs = self.lemma_51_rhs(u, l)?;
        Ok(self.lemma_lhs(u, l)? == rhs)
    }

    pub fn verify_lemma_52(&self, u: &[TensorSeries], l: usize) -> Result<bool> {
        let rhs = self.lemma_52_rhs(u, l)?;
        Ok(self.lemma_lhs(u, l)? == rhs)
    }

    fn letter(&self, l: Letter, cutoff: usize) -> TensorSeries {
        TensorSeries::letter(&self.alphabet, cutoff, l)
    }

    /// Ranks of `[ω₀, V]`, `V ⊗ Q` and their sum inside `V^{⊗3}`.
    pub fn v3_splitting(&self) -> V3Splitting {
        let w = self.omega0(3);
        let mut coords = Coords::new();
        let bracket_part: Vec<_> = self
            .basis()
            .into_iter()
            .map(|b| {
                let v = self.letter(b, 3);
                coords.vector((&(&w * &v) - &(&v * &w)).terms())
            })
            .collect();
        let mut vq = Vec::new();
        for a in self.basis() {
            for b in self.basis() {
                for c in self.basis() {
                    let t = TensorSeries::word(&self.alphabet, 3, Word(vec![a, b, c]), Q::one());
                    let projected = self.contract(&t, &[Slot::Id, Slot::Pi]).expect("arity 3");
                    vq.push(coords.vector(projected.terms()));
                }
            }
        }
        let r1 = crate::linalg::rank(bracket_part.clone());
        let r2 = crate::linalg::rank(vq.clone());
        let mut all = bracket_part;
        all.extend(vq);
        let total = crate::linalg::rank(all);
        V3Splitting { dim_bracket: r1, dim_vq: r2, dim_sum: total, ambient: self.dim().pow(3) }
    }

    /// Checks that `a ↦ ((π⊗1⊗π)(1^{⊗m}⊗C^{⊗l}) |a ω₀^l + b ω₀^{l+1}|)_{l ∈ ls}`
    /// forces `a = 0` for `a ∈ Q⊗V^{⊗m-4}⊗Q` and arbitrary `b ∈ V^{⊗m-2}`.
    pub fn qhq_injective(&self, m: usize, ls: &[usize]) -> Result<bool> {
        if m < 4 || self.genus == 0 {
            return Err(Error::Precondition("needs m >= 4 and g >= 1".into()));
        }
        let pat_outer = self.outer_pi(m);
        // basis of Q ⊗ V^{m-4} ⊗ Q: project every word of length m
        let words_m = self.alphabet.words_of_weight(m);
        let mut qcoords = Coords::new();
        let mut qred = ColumnReducer::new();
        let mut a_basis = Vec::new();
        for w in &words_m {
            let t = TensorSeries::word(&self.alphabet, m, w.clone(), Q::one());
            let p = self.contract(&t, &pat_outer)?;
            if qred.push(qcoords.vector(p.terms())) {
                a_basis.push(p);
            }
        }
        let b_basis: Vec<TensorSeries> = self
            .alphabet
            .words_of_weight(m - 2)
            .into_iter()
            .map(|w| TensorSeries::word(&self.alphabet, m - 2, w, Q::one()))
            .collect();
        let image = |v: &TensorSeries, extra: usize| -> Result<Vec<TensorSeries>> {
            ls.iter()
                .map(|&l| {
                    let d = m + 2 * l;
                    let prod = &v.extend_cutoff(d) * &self.omega0_power(l + extra).extend_cutoff(d);
                    let e = self.cyclic_embedding(&prod);
                    let mut inner = repeat(Slot::Id, m);
                    inner.extend(repeat(Slot::C, l));
                    self.contract(&self.contract(&e, &inner)?, &pat_outer)
                })
                .collect()
        };
        // stacked columns, keyed by (l index, word)
        let mut coords: Coords<(usize, Word)> = Coords::new();
        let mut red = ColumnReducer::new();
        let stack = |imgs: Vec<TensorSeries>, coords: &mut Coords<(usize, Word)>| {
            let mut col = LinComb::new();
            for (i, s) in imgs.into_iter().enumerate() {
                for (w, c) in s.iter() {
                    col.add_term((i, w.clone()), c.clone());
                }
            }
            coords.vector(&col)
        };
        let na = a_basis.len();
        for a in &a_basis {
            red.push(stack(image(a, 0)?, &mut coords));
        }
        for b in &b_basis {
            red.push(stack(image(b, 1)?, &mut coords));
        }
        Ok(red.kernel().iter().all(|k| k.keys().all(|&j| j >= na)))
    }
}

/// Closed form `l((2g)^l + (-1)^l 2g)`.
pub fn m0_closed_form(g: usize, l: usize) -> Q {
    let tg = q(2 * g as i64);
    let sign = if l % 2 == 0 { q(1) } else { q(-1) };
    q(l as i64) * (tg.pow(l as i32) + sign * tg)
}

/// Closed form `(2g)^l + 2(-1)^l Σ_{j<l} (-2g)^j`.
pub fn m1_closed_form(g: usize, l: usize) -> Q {
    let tg = q(2 * g as i64);
    let sign = if l % 2 == 0 { q(1) } else { q(-1) };
    let sum = (0..l).fold(Q::zero(), |acc, j| acc + (-tg.clone()).pow(j as i32));
    tg.pow(l as i32) + q(2) * sign * sum
}

/// Computes `C^{⊗l}|ω₀^l|` for genus `g` by contraction.
pub fn trace_contraction_m0(g: usize, l: usize) -> Result<Q> {
    if l == 0 {
        return Err(Error::Precondition("l must be at least 1".into()));
    }
    SymplecticSpace::new(g).trace_contraction_m0(l)
}

/// Dimensions in `V^{⊗3} = [ω₀, V] ⊕ (V ⊗ Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct V3Splitting {
    pub dim_bracket: usize,
    pub dim_vq: usize,
    pub dim_sum: usize,
    pub ambient: usize,
}

impl V3Splitting {
    pub fn intersection_dim(&self) -> usize {
        self.dim_bracket + self.dim_vq - self.dim_sum
    }

    pub fn holds(&self) -> bool {
        self.intersection_dim() == 0 && self.dim_sum == self.ambient
    }
}

pub fn verify_v3_splitting(g: usize) -> bool {
    SymplecticSpace::new(g).v3_splitting().holds()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_basics() {
        let s = SymplecticSpace::new(1);
        let w = s.omega0(2);
        assert_eq!(s.contract(&w, &[Slot::C]).unwrap().constant_term(), q(2));
        assert!(s.contract(&w, &[Slot::Pi]).unwrap().is_zero());
        assert_eq!(
            s.contract(&w, &[Slot::Id]),
            Err(Error::ArityMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn end_contractions() {
        for g in 1..=2 {
            let s = SymplecticSpace::new(g);
            for l in 1..=4 {
                for b in s.basis() {
                    let x = s.letter(b, 1);
                    let (left, right) = s.contract_end(&x, l).unwrap();
                    let expected = x.extend_cutoff(1).scale(&if l % 2 == 0 { q(1) } else { q(-1) });
                    assert_eq!(left.with_cutoff(1), expected);
                    assert_eq!(right.with_cutoff(1), expected);
                }
            }
        }
    }

    #[test]
    fn m0_examples() {
        assert_eq!(trace_contraction_m0(1, 2).unwrap(), q(12));
        assert_eq!(trace_contraction_m0(1, 1).unwrap(), q(0));
        assert_eq!(trace_contraction_m0(2, 3).unwrap(), q(180));
        assert_eq!(m0_closed_form(2, 3), q(180));
    }

    #[test]
    fn v3_dimensions() {
        let s1 = SymplecticSpace::new(1).v3_splitting();
        assert_eq!((s1.dim_bracket, s1.dim_vq, s1.intersection_dim()), (2, 6, 0));
        let s2 = SymplecticSpace::new(2).v3_splitting();
        assert_eq!((s2.dim_bracket, s2.dim_vq, s2.intersection_dim()), (4, 60, 0));
        assert!(s1.holds() && s2.holds());
    }

    #[test]
    fn degenerate_lemma_inputs() {
        let s = SymplecticSpace::new(1);
        let x = s.letter(s.alphabet.x(1), 1);
        assert!(s.verify_lemma_51(&vec![x.clone(); 5], 3).unwrap());
        assert!(s.verify_lemma_52(&vec![x.clone(); 4], 2).unwrap());
        assert!(s.verify_lemma_51(&vec![x.clone(); 4], 3).is_err());
    }

    fn vec_of(s: &SymplecticSpace, coeffs: &[i64]) -> TensorSeries {
        let terms = s.basis().into_iter().zip(coeffs).map(|(l, &c)| (Word(vec![l]), q(c))).collect();
        TensorSeries::new(s.alphabet.clone(), 1, terms)
    }

    #[test]
    fn m1_coefficient() {
        for g in 1..=2 {
            let s = SymplecticSpace::new(g);
            for l in 1..=4 {
                for b in s.basis() {
                    let a = s.letter(b, 1);
                    let out = s.trace_contraction_m1(&a, l).unwrap();
                    assert_eq!(out, a.scale(&m1_closed_form(g, l)).with_cutoff(1), "g={g} l={l}");
                }
            }
        }
    }

    #[test]
    fn lemmas_on_generic_vectors() {
        let s = SymplecticSpace::new(1);
        let u: Vec<_> = [[1, 2], [-1, 3], [2, 0], [1, -1], [0, 1]].iter().map(|c| vec_of(&s, c)).collect();
        assert!(s.verify_lemma_51(&u, 3).unwrap());
        assert!(s.verify_lemma_51(&u, 4).unwrap());
        assert!(s.verify_lemma_52(&u[..4], 2).unwrap());
        assert!(s.verify_lemma_52(&u[..4], 3).unwrap());
        let mut wrong = s.lemma_51_rhs(&u, 3).unwrap();
        wrong = &wrong + &s.contract(&s.product(&u, 5), &s.outer_pi(5)).unwrap();
        assert_ne!(s.lemma_lhs(&u, 3).unwrap(), wrong);
    }

    #[test]
    fn qhq_block_is_injective() {
        let s = SymplecticSpace::new(1);
        assert!(s.qhq_injective(4, &[2, 3]).unwrap());
        assert!(s.qhq_injective(5, &[3, 4]).unwrap());
        assert!(!s.qhq_injective(4, &[]).unwrap());
    }
}
