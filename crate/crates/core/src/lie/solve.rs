//! Linear solvers and structure computations for `ad_z`.

use std::sync::Arc;

use num_traits::Zero;

use crate::alphabet::{Alphabet, Word};
use crate::cyclic::trace;
use crate::error::{Error, Result};
use crate::linalg::{ColumnReducer, Coords};
use crate::linear::LinComb;
use crate::pbw::eulerian_projection;
use crate::rational::Q;
use crate::series::{same_alphabet, PairSeries, TensorSeries};

use super::bracket;
use super::lyndon::{lyndon_polynomial, lyndon_words_of_weight};

fn ad_word(z: &LinComb<Word>, v: &Word) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (w, c) in z.iter() {
        out.add_term(w.concat(v), c.clone());
        out.add_term(v.concat(w), -c.clone());
    }
    out
}

fn ad_poly(z: &LinComb<Word>, p: &LinComb<Word>) -> LinComb<Word> {
    p.map_linear(|v| ad_word(z, v))
}

/// `[z, u]` known through `cutoff`, where `u` is known through
/// `cutoff - minwt(z)`.
pub(crate) fn ad_shifted(z: &TensorSeries, u: &TensorSeries, cutoff: usize) -> TensorSeries {
    bracket(&z.truncate(cutoff), &u.extend_cutoff(cutoff)).truncate(cutoff)
}

fn check_z(z: &TensorSeries) -> Result<usize> {
    if !z.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    z.min_weight().ok_or_else(|| Error::Precondition("z must be nonzero".into()))
}

fn solve_columns<I>(columns: I, target: &LinComb<Word>) -> Option<LinComb<Word>>
where
    I: IntoIterator<Item = (Word, LinComb<Word>)>,
{
    let mut coords = Coords::new();
    let mut red = ColumnReducer::new();
    let mut unknowns = Vec::new();
    for (w, col) in columns {
        red.push(coords.vector(&col));
        unknowns.push(w);
    }
    let x = red.solve(&coords.vector(target))?;
    Some(x.into_iter().map(|(j, c)| (unknowns[j].clone(), c)).collect())
}

/// Some `u` with `[z, u] = b` through `min(cutoff(b), cutoff(z))`.
///
/// The returned `u` is known through that cutoff minus `minwt(z)`. Among all
/// solutions the one supported on pivot words (lexicographic column order) is
/// chosen. With `constrain_to_lie` the `K[[z]]` part is stripped with the
/// Eulerian projection so that `u` is primitive.
pub fn solve_ad(z: &TensorSeries, b: &TensorSeries, constrain_to_lie: bool) -> Result<TensorSeries> {
    if !same_alphabet(z.alphabet(), b.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    let wz = check_z(z)?;
    let alpha = z.alphabet().clone();
    let n = z.cutoff().min(b.cutoff());
    let out_cutoff = n.saturating_sub(wz);
    let b = b.truncate(n);
    if let Some(k) = b.min_weight().filter(|&k| k <= wz) {
        return Err(Error::NoSolution { weight: k });
    }
    let zt = z.truncate(n);
    let u = if z.homogeneous_weight().is_some() {
        let mut terms = LinComb::new();
        for (k, bk) in b.components() {
            let words = alpha.words_of_weight(k - wz);
            let cols = words.into_iter().map(|v| {
                let col = ad_word(zt.terms(), &v);
                (v, col)
            });
            let sol = solve_columns(cols, bk.terms()).ok_or(Error::NoSolution { weight: k })?;
            terms.add_assign(&sol);
        }
        TensorSeries::new(alpha.clone(), out_cutoff, terms)
    } else {
        let cols = (1..=out_cutoff).flat_map(|j| alpha.words_of_weight(j)).map(|v| {
            let col = ad_word(zt.terms(), &v);
            let col = TensorSeries::new(alpha.clone(), n, col).into_terms();
            (v, col)
        });
        match solve_columns(cols, b.terms()) {
            Some(sol) => TensorSeries::new(alpha.clone(), out_cutoff, sol),
            None => return Err(Error::NoSolution { weight: first_unsolvable_weight(&zt, &b, n) }),
        }
    };
    if !constrain_to_lie {
        return Ok(u);
    }
    let stripped = eulerian_projection(&u, 1);
    if ad_shifted(&zt, &stripped, n) == b && stripped.is_primitive() {
        return Ok(stripped);
    }
    solve_ad_lyndon(&zt, &b, wz, out_cutoff)
}

fn first_unsolvable_weight(z: &TensorSeries, b: &TensorSeries, n: usize) -> usize {
    let alpha = z.alphabet();
    let wz = z.min_weight().unwrap_or(1);
    for top in 1..=n {
        let cols = (1..=top.saturating_sub(wz)).flat_map(|j| alpha.words_of_weight(j)).map(|v| {
            let col = TensorSeries::new(alpha.clone(), top, ad_word(z.terms(), &v)).into_terms();
            (v, col)
        });
        if solve_columns(cols, b.truncate(top).terms()).is_none() {
            return top;
        }
    }
    n
}

/// Solves `[z, u] = b` with `u` in the span of Lyndon brackets.
fn solve_ad_lyndon(z: &TensorSeries, b: &TensorSeries, wz: usize, out_cutoff: usize) -> Result<TensorSeries> {
    let alpha = z.alphabet().clone();
    let n = b.cutoff();
    let cols = (1..=out_cutoff).flat_map(|j| lyndon_words_of_weight(&alpha, j)).map(|w| {
        let p = lyndon_polynomial(&w.0);
        let col = TensorSeries::new(alpha.clone(), n, ad_poly(z.terms(), &p)).into_terms();
        (w, col)
    });
    let coeffs = solve_columns(cols, b.terms()).ok_or(Error::NoSolution { weight: b.min_weight().unwrap_or(wz) })?;
    let mut terms = LinComb::new();
    for (w, c) in coeffs.iter() {
        terms.add_scaled(&lyndon_polynomial(&w.0), c);
    }
    Ok(TensorSeries::new(alpha, out_cutoff, terms))
}

/// Whether `z` is nonzero, homogeneous and primitive, with all words of
/// length 1 (an element of `V`) or all of length 2 (of `∧²V`).
fn admissible(z: &TensorSeries) -> Result<usize> {
    let w = z.homogeneous_weight().ok_or_else(|| Error::Precondition("z must be nonzero and homogeneous".into()))?;
    let lens: Vec<usize> = z.iter().map(|(v, _)| v.len()).collect();
    let linear = lens.iter().all(|&l| l == 1);
    let quadratic = lens.iter().all(|&l| l == 2);
    if !(linear || quadratic) || !z.is_primitive() {
        return Err(Error::Precondition("z must lie in V or in the bracket square of V".into()));
    }
    Ok(w)
}

fn pairs_of_weight(alpha: &Alphabet, m: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for a in 0..=m {
        let left = alpha.words_of_weight(a);
        let right = alpha.words_of_weight(m - a);
        for u in &left {
            for v in &right {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// Basis of `{u ∈ (T̂⊗T̂)_m : [Δz, u] = 0}`.
pub fn centralizer_of_delta(z: &TensorSeries, m: usize) -> Result<Vec<PairSeries>> {
    admissible(z)?;
    let alpha = z.alphabet().clone();
    let unknowns = pairs_of_weight(&alpha, m);
    let mut coords: Coords<(Word, Word)> = Coords::new();
    let mut red = ColumnReducer::new();
    for (u, v) in &unknowns {
        let mut col = LinComb::new();
        for (w, c) in ad_word(z.terms(), u).iter() {
            col.add_term((w.clone(), v.clone()), c.clone());
        }
        for (w, c) in ad_word(z.terms(), v).iter() {
            col.add_term((u.clone(), w.clone()), c.clone());
        }
        red.push(coords.vector(&col));
    }
    Ok(red
        .kernel()
        .iter()
        .map(|k| {
            let terms = k.iter().map(|(&j, c)| (unknowns[j].clone(), c.clone())).collect();
            PairSeries::new(alpha.clone(), m, terms)
        })
        .collect())
}

/// `{z^i ⊗ z^j : (i + j) wt(z) = m}`.
pub fn delta_power_span(z: &TensorSeries, m: usize) -> Result<Vec<PairSeries>> {
    let w = admissible(z)?;
    if m % w != 0 {
        return Ok(Vec::new());
    }
    let k = m / w;
    let zz = z.extend_cutoff(m);
    Ok((0..=k).map(|i| PairSeries::tensor(&zz.pow(i), &zz.pow(k - i))).collect())
}

fn reduced_coproduct(p: &LinComb<Word>) -> LinComb<(Word, Word)> {
    let mut out = LinComb::new();
    for (w, c) in p.iter() {
        let n = w.len();
        if n < 2 {
            continue;
        }
        let full = u64::MAX >> (64 - n);
        for mask in 1..full {
            out.add_term((w.select(mask), w.select(full & !mask)), c.clone());
        }
    }
    out
}

/// Basis of `{a ∈ T̂_m : [z, a] ∈ L̂}`, found as the kernel of the reduced
/// coproduct of `[z, a]`.
pub fn ad_normalizer_structure(z: &TensorSeries, m: usize) -> Result<Vec<TensorSeries>> {
    admissible(z)?;
    let alpha = z.alphabet().clone();
    let words = alpha.words_of_weight(m);
    let mut coords: Coords<(Word, Word)> = Coords::new();
    let mut red = ColumnReducer::new();
    for v in &words {
        red.push(coords.vector(&reduced_coproduct(&ad_word(z.terms(), v))));
    }
    Ok(red
        .kernel()
        .iter()
        .map(|k| {
            let terms = k.iter().map(|(&j, c)| (words[j].clone(), c.clone())).collect();
            TensorSeries::new(alpha.clone(), m, terms)
        })
        .collect())
}

/// Spanning set of `(L̂ + K[[z]])_m`: the Lyndon basis plus `z^{m/wt(z)}`.
pub fn lie_plus_powers(z: &TensorSeries, m: usize) -> Result<Vec<TensorSeries>> {
    let w = admissible(z)?;
    let alpha: Arc<Alphabet> = z.alphabet().clone();
    let mut out: Vec<TensorSeries> = lyndon_words_of_weight(&alpha, m)
        .iter()
        .map(|l| TensorSeries::new(alpha.clone(), m, (*lyndon_polynomial(&l.0)).clone()))
        .collect();
    if m % w == 0 {
        out.push(z.extend_cutoff(m).pow(m / w));
    }
    Ok(out)
}

/// Rank of a family of series, as vectors over words.
pub fn span_rank(family: &[TensorSeries]) -> usize {
    let mut coords = Coords::new();
    crate::linalg::rank(family.iter().map(|s| coords.vector(s.terms())))
}

/// Rank of a family of pair series.
pub fn pair_span_rank(family: &[PairSeries]) -> usize {
    let mut coords = Coords::new();
    crate::linalg::rank(family.iter().map(|s| coords.vector(s.terms())))
}

/// `b` with `a = [x, b]` for `x ∈ V`, after checking `|a x^l| = 0` for
/// `1 ≤ l ≤ l_max` within the cutoff.
pub fn solve_x_divisibility(x: &TensorSeries, a: &TensorSeries, l_max: usize) -> Result<TensorSeries> {
    if x.is_zero() || x.iter().any(|(w, _)| w.len() != 1) {
        return Err(Error::Precondition("x must be a nonzero linear element".into()));
    }
    let mut power = TensorSeries::one(x.alphabet(), a.cutoff());
    for l in 1..=l_max {
        power = &power * x;
        let t = trace(&(a * &power));
        if let Some(weight) = t.min_weight() {
            return Err(Error::HypothesisFails { power: l, weight });
        }
    }
    solve_ad(x, a, false)
}

/// Coefficients as a vector in a fixed basis order (used by tests and reports).
pub fn coefficient_vector(s: &TensorSeries, basis: &[Word]) -> Vec<Q> {
    basis.iter().map(|w| s.coeff(w)).collect()
}
