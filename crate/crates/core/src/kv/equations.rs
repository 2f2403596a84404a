//! Checkers for KV I, KV I′ and KV II′, and a degree-by-degree solver.

use std::sync::Arc;

use num_traits::Zero;

use crate::alphabet::{Alphabet, GeneratorKind, Letter, Word};
use crate::cyclic::{right_partial, trace, CyclicSeries};
use crate::error::{Error, Result};
use crate::lie::{bracket, lyndon_words_of_weight, LieElement};
use crate::lie::lyndon::lyndon_polynomial;
use crate::linalg::{ColumnReducer, Coords};
use crate::linear::LinComb;
use crate::necklace::SurfaceAlgebra;
use crate::rational::{q, Q};
use crate::series::TensorSeries;
use crate::symplectic::{normalize_conjugacy_linear, normalize_conjugacy_symplectic_to};

use super::{p_element, r_element, xi, Framing, TangentialAutomorphism, TangentialDerivation};

fn surface(f: &TangentialAutomorphism) -> Result<SurfaceAlgebra> {
    SurfaceAlgebra::of_alphabet(f.alphabet())
}

/// `F(ω) = ξ` through the cutoff of `F`.
pub fn check_kv1(f: &TangentialAutomorphism) -> Result<bool> {
    let s = surface(f)?;
    let n = f.cutoff();
    let lhs = f.apply(&s.omega(n));
    let rhs = xi(&s, n).into_series();
    let c = lhs.cutoff().min(rhs.cutoff());
    Ok(lhs.truncate(c) == rhs.truncate(c))
}

/// `ℓ₀` with `F(ω) = e^{-ℓ₀} ξ e^{ℓ₀}`.
pub fn check_kv1_prime(f: &TangentialAutomorphism) -> Result<LieElement> {
    let s = surface(f)?;
    let n = f.cutoff();
    let a = LieElement::new(f.apply(&s.omega(n)))?;
    let target = xi(&s, n);
    let g = if s.boundary_count() > 0 {
        normalize_conjugacy_linear(&target, &a)
    } else if s.genus() > 0 {
        normalize_conjugacy_symplectic_to(&target, &a)
    } else {
        return Ok(LieElement::trusted(TensorSeries::zero(s.alphabet(), n)));
    };
    let g = g.map_err(|e| match e {
        Error::TracesDiffer { weight } => Error::NotConjugate { weight },
        other => other,
    })?;
    Ok(LieElement::trusted(-g.log().series()))
}

/// Outcome of the KV II′ membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kv2Report {
    pub holds: bool,
    /// Lowest weight at which membership fails.
    pub failing_weight: Option<usize>,
    /// Weights tested: `0..=tested_through`.
    pub tested_through: usize,
    /// `h_j(s) = Σ_m h_j[m] s^m`.
    pub h_j: Vec<Vec<Q>>,
    /// `h(s) = Σ_m h[m] s^m`.
    pub h: Vec<Q>,
}

fn cyclic_power(s: &TensorSeries, m: usize) -> CyclicSeries {
    trace(&s.pow(m))
}

/// Solves `target = Σ_j |h_j(z_j)| - |h(ξ)|` over the truncation.
fn boundary_membership(s: &SurfaceAlgebra, target: &CyclicSeries, xi_s: &TensorSeries) -> Kv2Report {
    let n = target.cutoff();
    let top = n / 2;
    // columns: h[0..=top] then h_j[1..=top]
    let mut cols: Vec<CyclicSeries> = Vec::new();
    let xi_n = xi_s.truncate(n);
    for m in 0..=top {
        cols.push(cyclic_power(&xi_n, m).scale(&q(-1)));
    }
    for j in 1..=s.boundary_count() {
        for m in 1..=top {
            cols.push(cyclic_power(&s.z(j, n), m));
        }
    }
    let solve_at = |k: usize| -> Option<Vec<Q>> {
        let mut coords = Coords::new();
        let mut red = ColumnReducer::new();
        for c in &cols {
            red.push(coords.vector(c.truncate(k).terms()));
        }
        let x = red.solve(&coords.vector(target.truncate(k).terms()))?;
        Some((0..cols.len()).map(|i| x.get(&i).cloned().unwrap_or_else(Q::zero)).collect())
    };
    let unpack = |x: Vec<Q>| {
        let h = x[..=top].to_vec();
        let h_j = (0..s.boundary_count())
            .map(|j| {
                let mut v = vec![Q::zero()];
                v.extend_from_slice(&x[top + 1 + j * top..top + 1 + (j + 1) * top]);
                v
            })
            .collect();
        (h, h_j)
    };
    match solve_at(n) {
        Some(x) => {
            let (h, h_j) = unpack(x);
            Kv2Report { holds: true, failing_weight: None, tested_through: n, h_j, h }
        }
        None => {
            let failing = (0..=n).find(|&k| solve_at(k).is_none());
            Kv2Report { holds: false, failing_weight: failing, tested_through: n, h_j: Vec::new(), h: Vec::new() }
        }
    }
}

/// `ℓ₀` with its linear `z_j` terms removed.
fn strip_boundary_linear(ell: &TensorSeries) -> TensorSeries {
    let a = ell.alphabet();
    let terms = ell
        .iter()
        .filter(|(w, _)| !(w.len() == 1 && matches!(a.kind(w.0[0]), GeneratorKind::Z(_))))
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect();
    TensorSeries::new(a.clone(), ell.cutoff(), terms)
}

/// Tests `j_f(F) + rot(γ₀)|ℓ₀| - r - |p| ∈ span{|z_j^m|, |ξ^m|}` through the
/// weight to which `j_f(F)` is known.
pub fn check_kv2_prime(f: &TangentialAutomorphism, framing: &Framing, ell0: &LieElement) -> Result<Kv2Report> {
    let s = surface(f)?;
    framing.check_surface(s.alphabet())?;
    let jf = f.j_f(framing);
    let n = jf.cutoff().min(ell0.series().cutoff());
    let ell = trace(&strip_boundary_linear(ell0.series())).scale(&q(framing.rot_gamma0));
    let target = &(&(&jf.truncate(n) + &ell.truncate(n)) - &r_element(&s, n)) - &p_element(&s, framing, n)?;
    Ok(boundary_membership(&s, &target.truncate(n), xi(&s, n).series()))
}

/// Output of [`solve_kv`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KvSolution {
    pub automorphism: TangentialAutomorphism,
    /// `(weight, dimension of the affine solution space)` per step.
    pub solution_dims: Vec<(usize, usize)>,
    /// Boundary functions, when KV II was imposed.
    pub h_j: Vec<Vec<Q>>,
    pub h: Vec<Q>,
}

/// Tangential `F` with `F(ω) = ξ` through weight `cutoff`.
pub fn solve_kv1(s: &SurfaceAlgebra, cutoff: usize) -> Result<KvSolution> {
    solve_kv(s, cutoff, None)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Row {
    Tensor(Word),
    Cyclic(Word),
}

#[derive(Clone, Debug)]
enum Unknown {
    Image(Letter, Word),
    Generator(usize, Word),
    BoundaryFn(usize),
    XiFn,
}

/// Degree-by-degree solver for KV I, and for KV II as well when a framing
/// is given. At degree `d` the correction `δ` of `log F` solves
/// `δ(ω) = (ξ - F(ω))_{d+2}` (and the weight-`d` part of KV II); among all
/// solutions the one supported on pivot Lyndon words is taken.
pub fn solve_kv(s: &SurfaceAlgebra, cutoff: usize, framing: Option<&Framing>) -> Result<KvSolution> {
    let a = s.alphabet().clone();
    if let Some(fr) = framing {
        fr.check_surface(&a)?;
    }
    if s.genus() == 0 && s.boundary_count() == 0 {
        return Err(Error::Precondition("ω must be nonzero".into()));
    }
    let n = cutoff;
    let omega = s.omega(n);
    let xi_s = xi(s, n).into_series();
    let letters: Vec<Letter> = a.letters().filter(|&l| !matches!(a.kind(l), GeneratorKind::Z(_))).collect();
    let nz = s.boundary_count();
    let mut u = TangentialDerivation::zero(&a, n)?;
    let mut dims = Vec::new();
    let mut h_j: Vec<Vec<Q>> = vec![vec![Q::zero()]; nz];
    let mut h: Vec<Q> = vec![Q::zero()];
    let fixed = framing.map(|fr| {
        let r = r_element(s, n);
        let p = p_element(s, fr, n).expect("checked above");
        &r + &p
    });
    for d in 1..=n.saturating_sub(2) {
        let f = TangentialAutomorphism::exp(u.clone());
        let delta = &xi_s - &f.apply(&omega);
        if let Some(k) = delta.min_weight().filter(|&k| k < d + 2) {
            return Err(Error::NoSolutionAtWeight { weight: k });
        }
        let rhs_t = delta.component(d + 2);
        let mut unknowns = Vec::new();
        for &l in &letters {
            for w in lyndon_words_of_weight(&a, d + 1) {
                unknowns.push(Unknown::Image(l, w));
            }
        }
        for j in 0..nz {
            for w in lyndon_words_of_weight(&a, d) {
                unknowns.push(Unknown::Generator(j, w));
            }
        }
        let mut rhs: LinComb<Row> = rhs_t.iter().map(|(w, c)| (Row::Tensor(w.clone()), c.clone())).collect();
        if let Some(fr) = framing {
            if d % 2 == 0 {
                unknowns.extend((0..nz).map(Unknown::BoundaryFn));
                unknowns.push(Unknown::XiFn);
            }
            // R = j_f(F) - r - |p| - Σ|h_j(z_j)| + |h(ξ)| at weight d
            let mut r = &f.j_f(fr).truncate(d) - &fixed.as_ref().expect("framing given").truncate(d);
            for (j, hj) in h_j.iter().enumerate() {
                for (m, c) in hj.iter().enumerate() {
                    r = &r - &cyclic_power(&s.z(j + 1, d), m).scale(c);
                }
            }
            for (m, c) in h.iter().enumerate() {
                r = &r + &cyclic_power(&xi_s.truncate(d), m).scale(c);
            }
            let rd = r.weight_component(d)?;
            for (w, c) in rd.iter() {
                rhs.add_term(Row::Cyclic(w.clone()), -c.clone());
            }
        }
        let column = |x: &Unknown| -> LinComb<Row> {
            let mut col = LinComb::new();
            let mut cyc: Option<CyclicSeries> = None;
            match x {
                Unknown::Image(l, w) => {
                    let p = TensorSeries::new(a.clone(), d + 2, (*lyndon_polynomial(&w.0)).clone());
                    let t = ad_partner(&a, *l, &p, d + 2);
                    col.add_assign(&t.terms().iter().map(|(w, c)| (Row::Tensor(w.clone()), c.clone())).collect());
                    if framing.is_some() {
                        cyc = Some(trace(&right_partial(*l, &p).expect("no constant term")));
                    }
                }
                Unknown::Generator(j, w) => {
                    let p = TensorSeries::new(a.clone(), d + 2, (*lyndon_polynomial(&w.0)).clone());
                    let zl = a.z(j + 1);
                    let img = bracket(&TensorSeries::letter(&a, d + 2, zl), &p);
                    col.add_assign(&img.terms().iter().map(|(w, c)| (Row::Tensor(w.clone()), c.clone())).collect());
                    if let Some(fr) = framing {
                        let div = trace(&right_partial(zl, &img).expect("no constant term"));
                        cyc = Some(&div - &trace(&p).scale(&q(fr.rot_gamma[*j])));
                    }
                }
                Unknown::BoundaryFn(j) => {
                    cyc = Some(cyclic_power(&s.z(j + 1, d), d / 2).scale(&q(-1)));
                }
                Unknown::XiFn => {
                    cyc = Some(cyclic_power(&omega.truncate(d), d / 2));
                }
            }
            if let Some(c) = cyc {
                for (w, v) in c.iter() {
                    col.add_term(Row::Cyclic(w.clone()), v.clone());
                }
            }
            col
        };
        let mut coords = Coords::new();
        let mut red = ColumnReducer::new();
        for x in &unknowns {
            red.push(coords.vector(&column(x)));
        }
        let sol = red.solve(&coords.vector(&rhs)).ok_or(Error::NoSolutionAtWeight { weight: d + 2 })?;
        dims.push((d + 2, red.ncols() - red.rank()));
        let mut xy = vec![TensorSeries::zero(&a, n); letters.len()];
        let mut gens = vec![TensorSeries::zero(&a, n); nz];
        for (i, c) in sol.iter() {
            match &unknowns[*i] {
                Unknown::Image(l, w) => {
                    let idx = letters.iter().position(|x| x == l).expect("xy letter");
                    xy[idx] = &xy[idx] + &TensorSeries::new(a.clone(), n, lyndon_polynomial(&w.0).scaled(c));
                }
                Unknown::Generator(j, w) => {
                    gens[*j] = &gens[*j] + &TensorSeries::new(a.clone(), n, lyndon_polynomial(&w.0).scaled(c));
                }
                Unknown::BoundaryFn(j) => set_coeff(&mut h_j[*j], d / 2, c.clone()),
                Unknown::XiFn => set_coeff(&mut h, d / 2, c.clone()),
            }
        }
        if framing.is_some() && d % 2 == 0 {
            for hj in h_j.iter_mut() {
                hj.resize(hj.len().max(d / 2 + 1), Q::zero());
            }
            h.resize(h.len().max(d / 2 + 1), Q::zero());
        }
        let step = TangentialDerivation::new(&a, n, xy, gens)?;
        u = u.add(&step);
    }
    let automorphism = TangentialAutomorphism::exp(u);
    if !check_kv1(&automorphism)? {
        return Err(Error::NoSolutionAtWeight { weight: n });
    }
    Ok(KvSolution { automorphism, solution_dims: dims, h_j, h })
}

fn set_coeff(v: &mut Vec<Q>, m: usize, c: Q) {
    if v.len() <= m {
        v.resize(m + 1, Q::zero());
    }
    v[m] = c;
}

/// The change of `ω₀` when the image of `l` moves by `p`: `[p, y_i]` for
/// `l = x_i` and `[x_i, p]` for `l = y_i`.
fn ad_partner(a: &Arc<Alphabet>, l: Letter, p: &TensorSeries, cutoff: usize) -> TensorSeries {
    match a.kind(l) {
        GeneratorKind::X(i) => bracket(p, &TensorSeries::letter(a, cutoff, a.y(i))),
        GeneratorKind::Y(i) => bracket(&TensorSeries::letter(a, cutoff, a.x(i)), p),
        _ => TensorSeries::zero(a, cutoff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kv::Expansion;
    use crate::lie::bch;

    #[test]
    fn kv1_solver_genus_zero() {
        let s = SurfaceAlgebra::new(0, 2);
        let sol = solve_kv1(&s, 6).unwrap();
        let f = &sol.automorphism;
        assert!(check_kv1(f).unwrap());
        assert_eq!(f.apply(&s.omega(6)), bch(&s.z(1, 6), &s.z(2, 6)).unwrap());
        assert!(Expansion::twisted(f).unwrap().is_special());
    }

    #[test]
    fn kv1_solver_genus_one() {
        let s = SurfaceAlgebra::new(1, 0);
        let sol = solve_kv1(&s, 5).unwrap();
        assert!(check_kv1(&sol.automorphism).unwrap());
        assert!(Expansion::twisted(&sol.automorphism).unwrap().is_special());
    }

    #[test]
    fn identity_is_not_kv1_prime_in_genus_zero() {
        let s = SurfaceAlgebra::new(0, 2);
        let id = TangentialAutomorphism::identity(s.alphabet(), 8).unwrap();
        assert!(!check_kv1(&id).unwrap());
        // |exp(z1 + z2)| and |e^{z1} e^{z2}| first differ in |z1 z2 z1 z2|
        assert_eq!(check_kv1_prime(&id), Err(Error::NotConjugate { weight: 8 }));
    }

    #[test]
    fn classical_kv2_solution() {
        let s = SurfaceAlgebra::new(0, 2);
        let fr = Framing::new(vec![], vec![], vec![0, 0], 1).unwrap();
        let sol = solve_kv(&s, 6, Some(&fr)).unwrap();
        let f = &sol.automorphism;
        let ell0 = check_kv1_prime(f).unwrap();
        assert!(ell0.series().is_zero());
        let report = check_kv2_prime(f, &fr, &ell0).unwrap();
        assert!(report.holds, "{report:?}");
    }
}
