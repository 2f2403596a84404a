//! Degree-by-degree conjugacy normal forms: `a = g z g⁻¹` for `z` with a
//! nonzero linear part, and `a = g ω₀ g⁻¹`.

use std::ops::RangeInclusive;

use crate::cyclic::{exp_trace, trace};
use crate::error::{Error, Result};
use crate::lie::{bch, bracket, solve_ad, GroupLike, LieElement};
use crate::pbw::eulerian_projection;
use crate::series::{same_alphabet, TensorSeries};

use super::SymplecticSpace;

/// The `l` window used when the caller has no preference: `1 ..= m/2 + 3`.
pub fn default_l_window(m: usize) -> RangeInclusive<usize> {
    1..=m / 2 + 3
}

/// `b` of degree `m - 2` with `[ω₀, b] = a`, for `a` homogeneous of degree `m`.
///
/// `|a ω₀^l| = 0` is checked exactly for every `l` in `l_range`; `a` is
/// treated as an exact homogeneous polynomial.
pub fn solve_omega_bracket(a: &TensorSeries, l_range: RangeInclusive<usize>) -> Result<TensorSeries> {
    let space = SymplecticSpace::of_alphabet(a.alphabet())?;
    if a.is_zero() {
        return Ok(TensorSeries::zero(a.alphabet(), a.cutoff().saturating_sub(2)));
    }
    let m = a.homogeneous_weight().ok_or_else(|| Error::Precondition("a must be homogeneous".into()))?;
    for l in l_range {
        let d = m + 2 * l;
        let t = trace(&(&a.extend_cutoff(d) * &space.omega0_power(l).extend_cutoff(d)));
        if !t.is_zero() {
            return Err(Error::HypothesisFails { power: l, weight: d });
        }
    }
    let b = solve_ad(&space.omega0(m), &a.extend_cutoff(m), false)?;
    Ok(b.extend_cutoff(a.cutoff().saturating_sub(2)))
}

fn check_traces(z: &TensorSeries, a: &TensorSeries) -> Result<()> {
    let diff = &exp_trace(a)? - &exp_trace(z)?;
    match diff.min_weight() {
        Some(weight) => Err(Error::TracesDiffer { weight }),
        None => Ok(()),
    }
}

/// Conjugates `a` to `target` step by step; `solver` inverts `ad` of the
/// lowest-weight part of `target` on the current discrepancy.
/// Returns `v` with `e^v a e^{-v} = target` through the cutoff of `a`.
fn normalize_steps<F>(target: &TensorSeries, a: &TensorSeries, mut solver: F) -> Result<TensorSeries>
where
    F: FnMut(&TensorSeries, usize) -> Result<TensorSeries>,
{
    let n = a.cutoff();
    let w = target.min_weight().expect("target is nonzero");
    let mut cur = a.clone();
    let mut v = TensorSeries::zero(a.alphabet(), n);
    let mut last = w;
    loop {
        let d = &cur - &target.truncate(n);
        let Some(k) = d.min_weight() else { return Ok(v) };
        if k <= last {
            return Err(Error::SolveFailure { weight: k });
        }
        last = k;
        let b = d.component(k).with_cutoff(k);
        let u = solver(&b, k)?;
        if u.homogeneous_weight().is_some_and(|h| h != k - w) {
            return Err(Error::SolveFailure { weight: k });
        }
        // u is an exact homogeneous polynomial
        let u = u.extend_cutoff(n);
        let e = LieElement::new(u.clone()).map_err(|_| Error::SolveFailure { weight: k })?.exp();
        cur = e.conjugate(&cur);
        v = bch(&u, &v)?;
    }
}

fn linear_part(z: &TensorSeries) -> TensorSeries {
    let terms = z.iter().filter(|(w, _)| w.len() == 1).map(|(w, c)| (w.clone(), c.clone())).collect();
    TensorSeries::new(z.alphabet().clone(), z.cutoff(), terms)
}

/// `g` with `g⁻¹ a g = z` through the common cutoff.
///
/// The linear part `z₁` of `z` must be nonzero and homogeneous. When `z ≠ z₁`
/// the problem is first moved to `z₁` by the automorphism fixing every letter
/// except the first letter `c` of `z₁`, which goes to `c + (z - z₁)/λ`.
pub fn normalize_conjugacy_linear(z: &LieElement, a: &LieElement) -> Result<GroupLike> {
    let (z, a) = (z.series(), a.series());
    if !same_alphabet(z.alphabet(), a.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    let n = z.cutoff().min(a.cutoff());
    let (z, a) = (z.truncate(n), a.truncate(n));
    let z1 = linear_part(&z);
    if z1.homogeneous_weight().is_none() {
        return Err(Error::Precondition("the linear part of z must be nonzero and homogeneous".into()));
    }
    check_traces(&z, &a)?;
    let rest = &z - &z1;
    let alpha = z.alphabet().clone();
    let change = if rest.is_zero() {
        None
    } else {
        let (c_word, lambda) = z1.iter().next().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
        let c = c_word.0[0];
        let letters: Vec<TensorSeries> =
            (0..alpha.len()).map(|l| TensorSeries::letter(&alpha, n, l as u8)).collect();
        let shift = rest.scale(&lambda.recip());
        let mut phi = letters.clone();
        phi[c as usize] = &letters[c as usize] + &shift;
        let mut psi = letters.clone();
        for _ in 0..=n {
            let next = &letters[c as usize] - &shift.substitute(&psi)?;
            if next == psi[c as usize] {
                break;
            }
            psi[c as usize] = next;
        }
        Some((phi, psi))
    };
    let a_moved = match &change {
        Some((_, psi)) => a.substitute(psi)?,
        None => a.clone(),
    };
    let v = normalize_steps(&z1, &a_moved, |b, k| {
        solve_ad(&z1, b, true).map_err(|_| Error::SolveFailure { weight: k })
    })?;
    let log_g = match &change {
        Some((phi, _)) => (-&v).substitute(phi)?,
        None => -&v,
    };
    Ok(GroupLike::trusted(log_g.exp()?))
}

/// `g` with `g⁻¹ a g = ω₀` through the cutoff of `a`.
pub fn normalize_conjugacy_symplectic(a: &LieElement) -> Result<GroupLike> {
    let space = SymplecticSpace::of_alphabet(a.series().alphabet())?;
    let omega = LieElement::trusted(space.omega0(a.series().cutoff()));
    normalize_conjugacy_symplectic_to(&omega, a)
}

/// `g` with `g⁻¹ a g = z` for any `z` whose lowest-weight part is `ω₀`.
pub fn normalize_conjugacy_symplectic_to(z: &LieElement, a: &LieElement) -> Result<GroupLike> {
    let (z, a) = (z.series(), a.series());
    if !same_alphabet(z.alphabet(), a.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    let space = SymplecticSpace::of_alphabet(a.alphabet())?;
    let n = z.cutoff().min(a.cutoff());
    let (z, a) = (z.truncate(n), a.truncate(n));
    let omega = space.omega0(n);
    if space.genus() == 0 || z.min_weight() != Some(2) || z.component(2) != omega {
        return Err(Error::Precondition("the lowest part of the target must be ω₀ with g >= 1".into()));
    }
    check_traces(&z, &a)?;
    let v = normalize_steps(&z, &a, |b, k| {
        let window = 1..=(n.saturating_sub(k) / 2);
        let fail = |_| Error::SolveFailure { weight: k };
        let b_exact = b.extend_cutoff(k);
        let raw = solve_omega_bracket(&b_exact, window).map_err(fail)?;
        let u = eulerian_projection(&raw.with_cutoff(k - 2), 1);
        if bracket(&omega.truncate(k), &u.extend_cutoff(k)) == b_exact && u.is_primitive() {
            Ok(u)
        } else {
            solve_ad(&omega.truncate(k), &b_exact, true).map_err(fail)
        }
    })?;
    Ok(GroupLike::trusted((-&v).exp()?))
}

/// Whether `g⁻¹ a g = z` holds through the common cutoff.
pub fn conjugates_to(g: &GroupLike, a: &TensorSeries, z: &TensorSeries) -> bool {
    let lhs = &(&g.inverse().into_series() * a) * g.series();
    let n = lhs.cutoff().min(z.cutoff());
    lhs.truncate(n) == z.truncate(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::rational::q;

    #[test]
    fn omega_bracket_examples() {
        let s = SymplecticSpace::new(1);
        let w = s.omega0(4);
        assert!(solve_omega_bracket(&TensorSeries::zero(s.alphabet(), 4), 1..=2).unwrap().is_zero());
        assert_eq!(
            solve_omega_bracket(&w, 1..=2),
            Err(Error::HypothesisFails { power: 1, weight: 4 })
        );
        let x = TensorSeries::letter(s.alphabet(), 6, s.alphabet().x(1));
        let y = TensorSeries::letter(s.alphabet(), 6, s.alphabet().y(1));
        let b = &(&x * &y) + &(&y * &y).scale(&q(3));
        let a = bracket(&s.omega0(6), &b).with_cutoff(4);
        let b2 = solve_omega_bracket(&a, default_l_window(4)).unwrap();
        assert_eq!(bracket(&s.omega0(4), &b2.extend_cutoff(4)).with_cutoff(4), a);
    }

    #[test]
    fn symplectic_one_step() {
        let s = SymplecticSpace::new(1);
        let x = TensorSeries::letter(s.alphabet(), 3, s.alphabet().x(1));
        let w = s.omega0(3);
        let a = LieElement::new(&w + &bracket(&w, &x)).unwrap();
        let g = normalize_conjugacy_symplectic(&a).unwrap();
        assert_eq!(g.log().series(), &-&x);
        assert!(conjugates_to(&g, a.series(), &w));
        let trivial = normalize_conjugacy_symplectic(&LieElement::new(s.omega0(5)).unwrap()).unwrap();
        assert_eq!(trivial.series(), &TensorSeries::one(s.alphabet(), 5));
    }

    #[test]
    fn linear_round_trip_with_change_of_variables() {
        let alpha = Alphabet::surface(1, 1);
        let n = 5;
        let x = TensorSeries::letter(&alpha, n, alpha.x(1));
        let y = TensorSeries::letter(&alpha, n, alpha.y(1));
        let zl = TensorSeries::letter(&alpha, n, alpha.z(1));
        let z = LieElement::new(&zl + &bracket(&x, &y)).unwrap();
        let u = LieElement::new(&y + &bracket(&x, &zl).scale(&q(2))).unwrap();
        let a = LieElement::new(u.exp().conjugate(z.series())).unwrap();
        let g = normalize_conjugacy_linear(&z, &a).unwrap();
        assert!(conjugates_to(&g, a.series(), z.series()));
        let same = normalize_conjugacy_linear(&z, &z).unwrap();
        assert_eq!(same.series(), &TensorSeries::one(&alpha, n));
        let bad = LieElement::new(&zl + &x).unwrap();
        assert!(matches!(normalize_conjugacy_linear(&z, &bad), Err(Error::TracesDiffer { .. })));
    }
}
