//! The graded Goldman (necklace) bracket on cyclic words of a surface
//! algebra, and its center.

use std::sync::Arc;

use crate::alphabet::{Alphabet, GeneratorKind, Letter, Word};
use crate::cyclic::{canonical, cyclic_words_of_weight, CyclicSeries};
use crate::error::{Error, Result};
use crate::linalg::{rank, ColumnReducer, Coords};
use crate::linear::LinComb;
use crate::rational::{q, Q};
use crate::series::{same_alphabet, TensorSeries};

/// The free algebra on `x_1..x_g, y_1..y_g` (weight 1) and `z_1..z_n` (weight 2).
#[derive(Clone, Debug)]
pub struct SurfaceAlgebra {
    g: usize,
    n: usize,
    alphabet: Arc<Alphabet>,
}

impl SurfaceAlgebra {
    pub fn new(g: usize, n: usize) -> Self {
        SurfaceAlgebra { g, n, alphabet: Alphabet::surface(g, n) }
    }

    pub fn of_alphabet(alphabet: &Arc<Alphabet>) -> Result<Self> {
        let (g, n) = alphabet
            .surface_type()
            .ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        Ok(SurfaceAlgebra { g, n, alphabet: alphabet.clone() })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn boundary_count(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// `ω₀ = Σ_i [x_i, y_i]`.
    pub fn omega0(&self, cutoff: usize) -> TensorSeries {
        let a = &self.alphabet;
        let mut terms = LinComb::new();
        for i in 1..=self.g {
            terms.add_term(Word(vec![a.x(i), a.y(i)]), q(1));
            terms.add_term(Word(vec![a.y(i), a.x(i)]), q(-1));
        }
        TensorSeries::new(a.clone(), cutoff, terms)
    }

    /// `ω = ω₀ + Σ_j z_j`.
    pub fn omega(&self, cutoff: usize) -> TensorSeries {
        let mut w = self.omega0(cutoff);
        for j in 1..=self.n {
            w = &w + &self.z(j, cutoff);
        }
        w
    }

    pub fn z(&self, j: usize, cutoff: usize) -> TensorSeries {
        TensorSeries::letter(&self.alphabet, cutoff, self.alphabet.z(j))
    }

    /// `span{|ω^m|, |z_j^m|}` in weight `k`, with zero elements dropped.
    pub fn predicted_center(&self, k: usize) -> Vec<CyclicSeries> {
        let mut out = Vec::new();
        if k == 0 {
            out.push(CyclicSeries::word(&self.alphabet, 0, &Word::empty(), q(1)));
            return out;
        }
        if k % 2 == 1 {
            return out;
        }
        let m = k / 2;
        out.push(crate::cyclic::trace(&self.omega(k).pow(m)));
        for j in 1..=self.n {
            out.push(crate::cyclic::trace(&self.z(j, k).pow(m)));
        }
        out.retain(|c| !c.is_zero());
        out
    }
}

fn pairing(alpha: &Alphabet, a: Letter, b: Letter) -> i64 {
    match (alpha.kind(a), alpha.kind(b)) {
        (GeneratorKind::X(i), GeneratorKind::Y(j)) if i == j => 1,
        (GeneratorKind::Y(i), GeneratorKind::X(j)) if i == j => -1,
        _ => 0,
    }
}

/// The rotation of `w` that starts just after position `p`, without `w[p]`.
fn cut_at(w: &[Letter], p: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len() - 1);
    out.extend_from_slice(&w[p + 1..]);
    out.extend_from_slice(&w[..p]);
    out
}

/// Bracket of two cyclic words, added into `out` with factor `c`.
///
/// A pair `(x_i, y_i)` at positions `p, q` contributes `C(a_p, b_q) |A_p B_q|`;
/// a pair `(z_j, z_j)` contributes `|z A_p B_q| - |A_p z B_q|`, where `A_p` is
/// `a` read from `p + 1` around to `p - 1`.
fn bracket_words(alpha: &Alphabet, a: &[Letter], b: &[Letter], c: &Q, out: &mut LinComb<Word>) {
    for (p, &la) in a.iter().enumerate() {
        let is_z = matches!(alpha.kind(la), GeneratorKind::Z(_));
        let mut ap: Option<Vec<Letter>> = None;
        for (qi, &lb) in b.iter().enumerate() {
            let k = pairing(alpha, la, lb);
            if k == 0 && !(is_z && la == lb) {
                continue;
            }
            let ap = ap.get_or_insert_with(|| cut_at(a, p));
            let bq = cut_at(b, qi);
            if k != 0 {
                let mut w = ap.clone();
                w.extend_from_slice(&bq);
                out.add_term(canonical(&Word(w)), c * q(k));
            } else {
                let mut front = Vec::with_capacity(a.len() + b.len() - 1);
                front.push(la);
                front.extend_from_slice(ap);
                front.extend_from_slice(&bq);
                out.add_term(canonical(&Word(front)), c.clone());
                let mut mid = ap.clone();
                mid.push(la);
                mid.extend_from_slice(&bq);
                out.add_term(canonical(&Word(mid)), -c.clone());
            }
        }
    }
}

fn bracket_terms(alpha: &Alphabet, a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            bracket_words(alpha, &u.0, &v.0, &(cu * cv), &mut out);
        }
    }
    out
}

fn lowest_positive_weight(c: &CyclicSeries) -> usize {
    c.iter()
        .map(|(w, _)| c.alphabet().word_weight(&w.0))
        .filter(|&k| k > 0)
        .min()
        .unwrap_or(c.cutoff() + 1)
}

/// `[a, b]` for cyclic series over a surface alphabet.
///
/// The bracket lowers weight by 2; the result is known through
/// `min(N_a + m_b, N_b + m_a) - 2` where `m` is the lowest weight present.
pub fn goldman_bracket(a: &CyclicSeries, b: &CyclicSeries) -> Result<CyclicSeries> {
    if !same_alphabet(a.alphabet(), b.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    let alpha = a.alphabet();
    if alpha.surface_type().is_none() {
        return Err(Error::Precondition("a surface alphabet is required".into()));
    }
    let cutoff = (a.cutoff() + lowest_positive_weight(b)).min(b.cutoff() + lowest_positive_weight(a)).saturating_sub(2);
    Ok(CyclicSeries::new(alpha.clone(), cutoff, bracket_terms(alpha, a.terms(), b.terms())))
}

fn basis_of_weights(alpha: &Arc<Alphabet>, weights: &[usize]) -> Vec<LinComb<Word>> {
    weights
        .iter()
        .flat_map(|&k| cyclic_words_of_weight(alpha, k))
        .map(|w| LinComb::from_term(w, q(1)))
        .collect()
}

/// Whether every homogeneous component of `c` brackets to zero with every
/// cyclic word of the given weights.
pub fn is_central(c: &CyclicSeries, test_weights: &[usize]) -> bool {
    let alpha = c.alphabet();
    let tests = basis_of_weights(alpha, test_weights);
    tests.iter().all(|t| bracket_terms(alpha, c.terms(), t).is_zero())
}

/// Basis of the weight-`k` cyclic series that are central against all cyclic
/// words of the test weights.
pub fn center_component(s: &SurfaceAlgebra, k: usize, test_weights: &[usize]) -> Vec<CyclicSeries> {
    let alpha = s.alphabet();
    let words = cyclic_words_of_weight(alpha, k);
    let tests = basis_of_weights(alpha, test_weights);
    let mut coords: Coords<(usize, Word)> = Coords::new();
    let mut red = ColumnReducer::new();
    for w in &words {
        let single = LinComb::from_term(w.clone(), q(1));
        let mut col = LinComb::new();
        for (i, t) in tests.iter().enumerate() {
            for (v, c) in bracket_terms(alpha, &single, t) {
                col.add_term((i, v), c);
            }
        }
        red.push(coords.vector(&col));
    }
    red.kernel()
        .iter()
        .map(|kv| {
            let terms = kv.iter().map(|(&j, c)| (words[j].clone(), c.clone())).collect();
            CyclicSeries::new(alpha.clone(), k, terms)
        })
        .collect()
}

/// Rank of a family of cyclic series.
pub fn cyclic_rank(family: &[CyclicSeries]) -> usize {
    let mut coords = Coords::new();
    rank(family.iter().map(|c| coords.vector(c.terms())).collect::<Vec<_>>())
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[CyclicSeries], b: &[CyclicSeries]) -> bool {
    let ra = cyclic_rank(a);
    let both: Vec<CyclicSeries> = a.iter().chain(b).cloned().collect();
    ra == cyclic_rank(b) && ra == cyclic_rank(&both)
}

/// The computed center in weight `k` equals `span{|ω^m|, |z_j^m|}`.
pub fn center_matches_prediction(s: &SurfaceAlgebra, k: usize, test_weights: &[usize]) -> bool {
    same_span(&center_component(s, k, test_weights), &s.predicted_center(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{exp_trace, trace};

    fn cw(s: &SurfaceAlgebra, letters: &[Letter], cutoff: usize) -> CyclicSeries {
        CyclicSeries::word(s.alphabet(), cutoff, &Word(letters.to_vec()), q(1))
    }

    #[test]
    fn hand_example() {
        let s = SurfaceAlgebra::new(1, 0);
        let (x, y) = (s.alphabet().x(1), s.alphabet().y(1));
        let lhs = goldman_bracket(&cw(&s, &[x, x], 6), &cw(&s, &[y], 6)).unwrap();
        assert_eq!(lhs.terms(), cw(&s, &[x], 6).scale(&q(2)).terms());
        let xy = goldman_bracket(&cw(&s, &[x], 6), &cw(&s, &[y], 6)).unwrap();
        assert_eq!(xy.terms(), &LinComb::from_term(Word::empty(), q(1)));
    }

    #[test]
    fn omega_and_z_powers_are_central() {
        let s = SurfaceAlgebra::new(1, 2);
        for m in 1..=3 {
            assert!(is_central(&trace(&s.omega(2 * m).pow(m)), &[1, 2, 3, 4]));
            assert!(is_central(&trace(&s.z(2, 2 * m).pow(m)), &[1, 2, 3, 4]));
        }
        assert!(is_central(&exp_trace(&s.omega(6)).unwrap(), &[1, 2, 3]));
        assert!(is_central(&cw(&s, &[], 0), &[1, 2]));
        assert!(!is_central(&cw(&s, &[s.alphabet().x(1)], 3), &[1]));
    }

    #[test]
    fn center_examples() {
        let s02 = SurfaceAlgebra::new(0, 2);
        let c = center_component(&s02, 2, &[1, 2, 3, 4]);
        assert_eq!(c.len(), 2);
        assert!(center_matches_prediction(&s02, 2, &[1, 2, 3, 4]));
        let s10 = SurfaceAlgebra::new(1, 0);
        assert!(center_component(&s10, 2, &[1, 2, 3, 4]).is_empty());
        let c4 = center_component(&s10, 4, &[1, 2, 3, 4]);
        assert_eq!(c4.len(), 1);
        assert!(same_span(&c4, &[trace(&s10.omega0(4).pow(2))]));
    }
}
