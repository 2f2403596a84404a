//! The quotient complex `|D_A| / |D_A E|` with differential `[Π, ·]`, its
//! degree 0 and 1 cohomology, and the fully-tangential test for derivations.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::lie::solve_ad;
use crate::linalg::{ColumnReducer, Coords};
use crate::linear::LinComb;
use crate::necklace::SurfaceAlgebra;
use crate::rational::q;
use crate::series::{same_alphabet, TensorSeries};

use super::{
    bracket_terms, e_insert_terms, partial_degree, pi, super_canonical, SuperCyclicSeries, SuperGenerator,
    SuperWord,
};

/// All words with `k` odd letters and weight `w`.
fn words_with(alphabet: &Alphabet, k: usize, w: i64) -> Vec<SuperWord> {
    let max = alphabet.letters().map(|l| alphabet.weight(l) as i64).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(a: &Alphabet, max: i64, odd: usize, rem: i64, cur: &mut SuperWord, out: &mut Vec<SuperWord>) {
        if odd == 0 && rem == 0 {
            out.push(cur.clone());
            return;
        }
        for l in a.letters() {
            let wl = a.weight(l) as i64;
            if rem - wl >= -max * odd as i64 {
                cur.push(SuperGenerator::Base(l));
                rec(a, max, odd, rem - wl, cur, out);
                cur.pop();
            }
            if odd > 0 {
                cur.push(SuperGenerator::Partial(l));
                rec(a, max, odd - 1, rem + wl, cur, out);
                cur.pop();
            }
        }
    }
    rec(alphabet, max, k, w, &mut cur, &mut out);
    out
}

/// One graded piece `|D^k|_w` together with the ideal `|D^{k-1} E|_w` and a
/// complement basis of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub degree: usize,
    pub weight: i64,
    pub basis: Vec<SuperWord>,
    pub ideal: Vec<LinComb<SuperWord>>,
    pub ideal_rank: usize,
    pub complement: Vec<SuperWord>,
}

impl QuotientSpace {
    pub fn new(alphabet: &Alphabet, k: usize, w: i64) -> Self {
        let mut basis: Vec<SuperWord> =
            words_with(alphabet, k, w).iter().filter_map(|u| super_canonical(u).map(|(r, _)| r)).collect();
        basis.sort();
        basis.dedup();
        let ideal: Vec<LinComb<SuperWord>> = if k == 0 {
            Vec::new()
        } else {
            words_with(alphabet, k - 1, w)
                .into_iter()
                .map(|a| e_insert_terms(alphabet, &LinComb::from_term(a, q(1))))
                .filter(|v| !v.is_zero())
                .collect()
        };
        let mut coords = Coords::new();
        let mut red = ColumnReducer::new();
        for v in &ideal {
            red.push(coords.vector(v));
        }
        let ideal_rank = red.rank();
        let complement = basis
            .iter()
            .filter(|b| red.push(coords.vector(&LinComb::from_term((*b).clone(), q(1)))))
            .cloned()
            .collect();
        QuotientSpace { degree: k, weight: w, basis, ideal, ideal_rank, complement }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn in_ideal(&self, v: &LinComb<SuperWord>) -> bool {
        let mut coords = Coords::new();
        let mut red = ColumnReducer::new();
        for u in &self.ideal {
            red.push(coords.vector(u));
        }
        red.contains(&coords.vector(v))
    }
}

/// Cohomology of the quotient complex in one (degree, weight).
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub weight: i64,
    pub dim_ker: usize,
    pub dim_im: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    pub representatives: Vec<String>,
    #[serde(skip)]
    pub classes: Vec<SuperCyclicSeries>,
}

/// `|D_A|` modulo the `E`-ideal with differential `[Π, ·]`.
///
/// Graded pieces are built on first use and then shared.
#[derive(Debug)]
pub struct PoissonComplex {
    alphabet: Arc<Alphabet>,
    pi: SuperCyclicSeries,
    spaces: Mutex<BTreeMap<(usize, i64), Arc<QuotientSpace>>>,
}

impl PoissonComplex {
    pub fn new(alphabet: &Arc<Alphabet>) -> Result<Self> {
        Ok(PoissonComplex { alphabet: alphabet.clone(), pi: pi(alphabet)?, spaces: Mutex::new(BTreeMap::new()) })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn pi(&self) -> &SuperCyclicSeries {
        &self.pi
    }

    pub fn space(&self, k: usize, w: i64) -> Arc<QuotientSpace> {
        let mut spaces = self.spaces.lock().expect("poisoned");
        spaces.entry((k, w)).or_insert_with(|| Arc::new(QuotientSpace::new(&self.alphabet, k, w))).clone()
    }

    fn d(&self, v: &LinComb<SuperWord>) -> LinComb<SuperWord> {
        bracket_terms(self.pi.terms(), v)
    }

    /// `[Π, P]` with the cutoff bookkeeping of [`super::schouten`].
    pub fn differential(&self, p: &SuperCyclicSeries) -> Result<SuperCyclicSeries> {
        super::schouten(&self.pi, p)
    }

    /// Whether every graded component of `s` lies in the `E`-ideal.
    pub fn in_ideal(&self, s: &SuperCyclicSeries) -> bool {
        s.gradings().into_iter().all(|(k, w)| self.space(k, w).in_ideal(s.component(k, w).terms()))
    }

    /// Dimensions and representatives of `H^k` in weight `w`, for `k` in `{0, 1}`.
    pub fn cohomology(&self, k: usize, w: i64) -> Result<CohomologyReport> {
        if k > 1 {
            return Err(Error::Precondition("only degrees 0 and 1 are supported".into()));
        }
        let cur = self.space(k, w);
        let next = self.space(k + 1, w - 2);
        let mut coords = Coords::new();
        let mut red = ColumnReducer::new();
        for v in &next.ideal {
            red.push(coords.vector(v));
        }
        let e = red.ncols();
        for b in &cur.basis {
            red.push(coords.vector(&self.d(&LinComb::from_term(b.clone(), q(1)))));
        }
        let preimage: Vec<LinComb<SuperWord>> = red
            .kernel()
            .iter()
            .filter(|kv| kv.keys().any(|&i| i >= e))
            .map(|kv| kv.iter().filter(|(&i, _)| i >= e).map(|(&i, c)| (cur.basis[i - e].clone(), c.clone())).collect())
            .collect();
        let dim_ker = preimage.len() - cur.ideal_rank;

        let mut coords = Coords::new();
        let mut red = ColumnReducer::new();
        for v in &cur.ideal {
            red.push(coords.vector(v));
        }
        if k > 0 {
            for b in &self.space(k - 1, w + 2).basis {
                red.push(coords.vector(&self.d(&LinComb::from_term(b.clone(), q(1)))));
            }
        }
        let dim_im = red.rank() - cur.ideal_rank;
        let cutoff = w;
        let classes: Vec<SuperCyclicSeries> = preimage
            .into_iter()
            .filter(|v| red.push(coords.vector(v)))
            .map(|v| SuperCyclicSeries::new(self.alphabet.clone(), cutoff, v))
            .collect();
        let dim_h = dim_ker - dim_im;
        debug_assert_eq!(classes.len(), dim_h);
        Ok(CohomologyReport {
            degree: k,
            weight: w,
            dim_ker,
            dim_im,
            dim_h,
            representatives: classes.iter().map(|c| c.to_string()).collect(),
            classes,
        })
    }
}

/// `H^k` of the quotient complex of a surface algebra in weight `w`.
pub fn cohomology(alphabet: &Arc<Alphabet>, k: usize, w: i64) -> Result<CohomologyReport> {
    PoissonComplex::new(alphabet)?.cohomology(k, w)
}

/// The derivation of `A` attached to `P` of ∂-degree 1: writing each word as
/// `|∂g R|`, the generator `g` goes to `R`.
pub fn derivation_images(p: &SuperCyclicSeries) -> Result<Vec<TensorSeries>> {
    let a = p.alphabet();
    let mut images: Vec<LinComb<Word>> = vec![LinComb::new(); a.len()];
    for (w, c) in p.iter() {
        if partial_degree(w) != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: partial_degree(w) });
        }
        let i = w.iter().position(|g| g.is_odd()).expect("one odd letter");
        let r: Vec<Letter> = w[i + 1..].iter().chain(&w[..i]).map(|g| g.base()).collect();
        images[w[i].base() as usize].add_term(Word(r), c.clone());
    }
    Ok(images
        .into_iter()
        .enumerate()
        .map(|(l, t)| {
            let cutoff = (p.cutoff() + a.weight(l as Letter) as i64).max(0) as usize;
            TensorSeries::new(a.clone(), cutoff, t)
        })
        .collect())
}

/// Leibniz extension of `g ↦ images[g]` applied to an exact polynomial `a`.
fn apply_derivation(images: &[TensorSeries], a: &TensorSeries) -> TensorSeries {
    let alpha = a.alphabet();
    let shift = images
        .iter()
        .enumerate()
        .map(|(l, img)| img.cutoff() as i64 - alpha.weight(l as Letter) as i64)
        .min()
        .unwrap_or(0);
    let cutoff = (a.cutoff() as i64 + shift).max(0) as usize;
    let mut out = TensorSeries::zero(alpha, cutoff);
    for (w, c) in a.iter() {
        for i in 0..w.len() {
            let left = TensorSeries::new(alpha.clone(), cutoff, LinComb::from_term(Word(w.0[..i].to_vec()), c.clone()));
            let right = TensorSeries::new(alpha.clone(), cutoff, LinComb::from_term(Word(w.0[i + 1..].to_vec()), q(1)));
            let img = images[w.0[i] as usize].extend_cutoff(cutoff);
            out = &out + &(&(&left * &img) * &right);
        }
    }
    out
}

/// Witnesses `a_j` with `φ(z_j) = [a_j, z_j]`; `a0` belongs to `z_0 = -ω`.
#[derive(Clone, Debug)]
pub struct TangentialWitnesses {
    pub a0: TensorSeries,
    pub a: Vec<TensorSeries>,
}

/// Whether the derivation with the given generator images is fully
/// tangential; the witnesses are found by linear solves.
///
/// The disk `(g, n) = (0, 1)` is excluded since its Goldman bracket vanishes.
pub fn is_fully_tangential(phi: &[TensorSeries]) -> Result<TangentialWitnesses> {
    let alpha = phi.first().ok_or_else(|| Error::Precondition("empty derivation".into()))?.alphabet().clone();
    if phi.iter().any(|p| !same_alphabet(p.alphabet(), &alpha)) {
        return Err(Error::AlphabetMismatch);
    }
    if phi.len() != alpha.len() {
        return Err(Error::ArityMismatch { expected: alpha.len(), found: phi.len() });
    }
    let s = SurfaceAlgebra::of_alphabet(&alpha)?;
    if s.genus() == 0 && s.boundary_count() <= 1 {
        return Err(Error::Precondition("the disk and the sphere are excluded".into()));
    }
    let cutoff = phi.iter().map(|p| p.cutoff()).min().unwrap_or(0);
    let solve = |z: &TensorSeries, b: &TensorSeries, index: usize| -> Result<TensorSeries> {
        match solve_ad(z, b, false) {
            Ok(u) => Ok(-&u),
            Err(Error::NoSolution { weight }) => Err(Error::NotTangential { index, weight }),
            Err(e) => Err(e),
        }
    };
    let mut a = Vec::with_capacity(s.boundary_count());
    for j in 1..=s.boundary_count() {
        let z = s.z(j, cutoff);
        a.push(solve(&z, &phi[alpha.z(j) as usize].truncate(cutoff), j)?);
    }
    let z0 = -&s.omega(cutoff);
    let phi_z0 = apply_derivation(phi, &z0).truncate(cutoff);
    let a0 = solve(&z0, &phi_z0, 0)?;
    Ok(TangentialWitnesses { a0, a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{trace, CyclicSeries};
    use crate::dbrackets::hamiltonian;
    use crate::lie::bracket;
    use crate::necklace::center_component;
    use crate::necklace::same_span;
    use SuperGenerator::Partial;

    #[test]
    fn cohomology_of_the_once_punctured_torus() {
        let a = Alphabet::surface(1, 1);
        let c = PoissonComplex::new(&a).unwrap();
        let dims: Vec<usize> = (-2..=2).map(|w| c.cohomology(1, w).unwrap().dim_h).collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 0]);
        let h = c.cohomology(1, -2).unwrap();
        let dz = SuperCyclicSeries::word(&a, -2, &[Partial(a.z(1))], q(1));
        let sp = c.space(1, -2);
        // the class of |∂z| spans H¹ in weight -2
        let diff = &h.classes[0] - &dz.scale(&h.classes[0].coeff(&[Partial(a.z(1))]));
        assert!(sp.in_ideal(diff.terms()));
        assert!(!sp.in_ideal(dz.terms()));
        assert!(c.cohomology(2, 0).is_err());
    }

    #[test]
    fn degree_zero_is_the_center() {
        let a = Alphabet::surface(1, 1);
        let c = PoissonComplex::new(&a).unwrap();
        let s = SurfaceAlgebra::of_alphabet(&a).unwrap();
        for w in 0..=4 {
            let h = c.cohomology(0, w).unwrap();
            let h0: Vec<CyclicSeries> = h.classes.iter().map(|x| x.to_cyclic().unwrap().extend_cutoff(w as usize)).collect();
            let center = center_component(&s, w as usize, &[1, 2, 3, 4]);
            assert!(same_span(&h0, &center), "weight {w}");
        }
    }

    #[test]
    fn ideal_in_degree_one_is_inner() {
        let a = Alphabet::surface(1, 1);
        for w in 0..=3 {
            let sp = QuotientSpace::new(&a, 1, w);
            let mut coords = Coords::new();
            let mut from_e = Vec::new();
            for v in &sp.ideal {
                let s = SuperCyclicSeries::new(a.clone(), w, v.clone());
                from_e.push(derivation_vector(&derivation_images(&s).unwrap(), &mut coords));
            }
            let mut inner = Vec::new();
            for u in a.words_of_weight(w as usize) {
                let ut = TensorSeries::new(a.clone(), 10, LinComb::from_term(u, q(1)));
                let imgs: Vec<TensorSeries> =
                    a.letters().map(|l| bracket(&ut, &TensorSeries::letter(&a, 10, l))).collect();
                inner.push(derivation_vector(&imgs, &mut coords));
            }
            let r = crate::linalg::rank(from_e.clone());
            assert_eq!(r, crate::linalg::rank(inner.clone()));
            assert_eq!(r, crate::linalg::rank(from_e.into_iter().chain(inner)));
        }
    }

    fn derivation_vector(imgs: &[TensorSeries], coords: &mut Coords<(usize, Word)>) -> crate::linalg::SparseVec {
        let mut v = LinComb::new();
        for (l, img) in imgs.iter().enumerate() {
            for (w, c) in img.iter() {
                v.add_term((l, w.clone()), c.clone());
            }
        }
        coords.vector(&v)
    }

    #[test]
    fn tangential_examples() {
        let a = Alphabet::surface(1, 1);
        let n = 6;
        let (x, y, z) = (a.x(1), a.y(1), a.z(1));
        let xyz = CyclicSeries::word(&a, 8, &Word(vec![x, y, z]), q(1));
        let h = hamiltonian(&trace(&TensorSeries::letter(&a, 8, x)).checked_add(&xyz).unwrap()).unwrap();
        let phi: Vec<TensorSeries> = derivation_images(&h).unwrap().iter().map(|t| t.truncate(n)).collect();
        let wit = is_fully_tangential(&phi).unwrap();
        let zz = TensorSeries::letter(&a, n, z);
        assert_eq!(bracket(&wit.a[0], &zz).truncate(wit.a[0].cutoff()), phi[z as usize].truncate(wit.a[0].cutoff()));

        let euler: Vec<TensorSeries> = a.letters().map(|l| TensorSeries::letter(&a, n, l).scale(&q(a.weight(l) as i64))).collect();
        assert_eq!(is_fully_tangential(&euler).unwrap_err(), Error::NotTangential { index: 1, weight: 2 });

        let u = &TensorSeries::letter(&a, n, y) + &(&zz * &TensorSeries::letter(&a, n, x));
        let inner: Vec<TensorSeries> = a.letters().map(|l| bracket(&u, &TensorSeries::letter(&a, n, l))).collect();
        let wit = is_fully_tangential(&inner).unwrap();
        assert_eq!(bracket(&wit.a[0], &zz).truncate(4), bracket(&u, &zz).truncate(4));

        let disk = Alphabet::surface(0, 1);
        let zero = vec![TensorSeries::zero(&disk, 4)];
        assert!(matches!(is_fully_tangential(&zero), Err(Error::Precondition(_))));
    }
}
