//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints a single PASS/FAIL line; the process fails if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cyclie::cyclic::{power_trace, trace, CyclicSeries};
use cyclie::dbrackets::{partial_map, pi, schouten, PoissonComplex, SuperGenerator};
use cyclie::kv::{
    check_kv1, solve_kv1, theta_exp, xi, Expansion, Framing, FreeGroupWord, TangentialAutomorphism,
    TangentialDerivation,
};
use cyclie::lie::{bracket, GroupLike, LieElement};
use cyclie::necklace::{center_component, center_matches_prediction, goldman_bracket, same_span, SurfaceAlgebra};
use cyclie::pbw::eulerian_projection;
use cyclie::random;
use cyclie::rational::q;
use cyclie::symplectic::{
    conjugates_to, default_l_window, m0_closed_form, m1_closed_form, normalize_conjugacy_linear,
    normalize_conjugacy_symplectic, solve_omega_bracket, trace_contraction_m0, SymplecticSpace,
};
use cyclie::{Alphabet, Error, TensorSeries};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn letter(a: &Arc<Alphabet>, n: usize, l: u8) -> TensorSeries {
    TensorSeries::letter(a, n, l)
}

fn pbw_decomposition() -> Outcome {
    let mut r = random::rng(101);
    let alphabets = [vec![1, 1], vec![1, 2], vec![1, 1, 1], vec![1, 1, 2], vec![1, 1, 1, 1], vec![1, 1, 1, 2]];
    for t in 0..50 {
        let a = Alphabet::basis(&alphabets[t % alphabets.len()]).map_err(|e| e.to_string())?;
        let s = random::series(&mut r, &a, 6, 1, 6, 3);
        let comps: Vec<TensorSeries> = (0..=6).map(|m| eulerian_projection(&s, m)).collect();
        let sum = comps.iter().fold(TensorSeries::zero(&a, 6), |acc, c| &acc + c);
        ensure(sum == s, || format!("sample {t}: components do not sum to a"))?;
        ensure(comps[1].is_primitive(), || format!("sample {t}: e_1(a) is not primitive"))?;
        for (m, c) in comps.iter().enumerate() {
            for k in 1..=6 {
                let p = eulerian_projection(c, k);
                let expected = if k == m { c.clone() } else { TensorSeries::zero(&a, 6) };
                ensure(p == expected, || format!("sample {t}: e_{k} e_{m} != δ e_{m}"))?;
            }
        }
    }
    Ok("50 series".into())
}

fn conjugation_invariance() -> Outcome {
    let mut r = random::rng(202);
    let mut checks = 0;
    for t in 0..25 {
        let a = if t % 2 == 0 { Alphabet::surface(1, 1) } else { Alphabet::basis(&[1, 1, 2]).unwrap() };
        let min = 1 + t % 2;
        let u = random::series(&mut r, &a, 8, min, 4, 4);
        let Some(mw) = u.min_weight() else { continue };
        let g = random::group_like(&mut r, &a, 8, 3, 3);
        let v = g.conjugate(&u);
        for m in 1..=8 / mw {
            checks += 1;
            ensure(power_trace(&u, m) == power_trace(&v, m), || format!("sample {t}: |u^{m}| changed"))?;
        }
    }
    Ok(format!("{checks} power traces"))
}

fn conjugacy_round_trips() -> Outcome {
    let mut r = random::rng(303);
    let n = 6;
    for t in 0..25 {
        let g = t % 3;
        let a = Alphabet::surface(g, 1);
        let zl = letter(&a, n, a.z(1));
        let z = if g > 0 && t % 2 == 1 { &zl + &bracket(&letter(&a, n, a.x(1)), &letter(&a, n, a.y(1))) } else { zl };
        let z = LieElement::new(z).map_err(|e| e.to_string())?;
        let u = random::lie(&mut r, &a, n, 1, 3, 3);
        let conj = LieElement::new(u.exp().conjugate(z.series())).map_err(|e| e.to_string())?;
        let h = normalize_conjugacy_linear(&z, &conj).map_err(|e| format!("linear sample {t}: {e}"))?;
        ensure(conjugates_to(&h, conj.series(), z.series()), || format!("linear sample {t}: bad conjugator"))?;
        let bad = LieElement::new(z.series().scale(&q(2))).unwrap();
        let err = normalize_conjugacy_linear(&z, &bad);
        ensure(matches!(err, Err(Error::TracesDiffer { .. })), || format!("linear negative {t}: {err:?}"))?;
    }
    for t in 0..25 {
        let g = 1 + t % 2;
        let s = SymplecticSpace::new(g);
        let a = s.alphabet().clone();
        let u = random::lie(&mut r, &a, n, 1, 3, 2);
        let conj = LieElement::new(u.exp().conjugate(&s.omega0(n))).map_err(|e| e.to_string())?;
        let h = normalize_conjugacy_symplectic(&conj).map_err(|e| format!("symplectic sample {t}: {e}"))?;
        ensure(conjugates_to(&h, conj.series(), &s.omega0(n)), || format!("symplectic sample {t}: bad conjugator"))?;
        let bad = LieElement::new(s.omega0(n).scale(&q(1 + (t % 3) as i64 + 1))).unwrap();
        let err = normalize_conjugacy_symplectic(&bad);
        ensure(matches!(err, Err(Error::TracesDiffer { .. })), || format!("symplectic negative {t}: {err:?}"))?;
    }
    Ok("25 linear + 25 symplectic".into())
}

fn omega_bracket_solver() -> Outcome {
    let mut r = random::rng(404);
    for t in 0..25 {
        let g = 1 + t % 2;
        let m = 3 + t % 4;
        let s = SymplecticSpace::new(g);
        let a = s.alphabet().clone();
        let b = random::series(&mut r, &a, m - 2, m - 2, m - 2, 3);
        let lhs = bracket(&s.omega0(m), &b.extend_cutoff(m)).with_cutoff(m);
        let b2 = solve_omega_bracket(&lhs, default_l_window(m)).map_err(|e| format!("sample {t}: {e}"))?;
        let back = bracket(&s.omega0(m), &b2.extend_cutoff(m)).with_cutoff(m);
        ensure(back == lhs, || format!("sample {t}: [ω₀, b'] != a"))?;
    }
    for g in 1..=2 {
        let s = SymplecticSpace::new(g);
        let err = solve_omega_bracket(&s.omega0(2), default_l_window(2));
        ensure(matches!(err, Err(Error::HypothesisFails { .. })), || format!("a = ω₀ accepted for g = {g}"))?;
    }
    Ok("25 round trips, ω₀ rejected".into())
}

fn closed_forms() -> Outcome {
    for g in 1..=3 {
        for l in 1..=4 {
            let direct = trace_contraction_m0(g, l).map_err(|e| e.to_string())?;
            let expected = q(l as i64) * (q(2 * g as i64).pow(l as i32) + q(if l % 2 == 0 { 1 } else { -1 }) * q(2 * g as i64));
            ensure(direct == expected && m0_closed_form(g, l) == expected, || format!("m0 g={g} l={l}"))?;
        }
    }
    for g in 1..=2 {
        let s = SymplecticSpace::new(g);
        for l in 1..=4 {
            for v in s.basis() {
                let x = letter(s.alphabet(), 1, v);
                let c = s.trace_contraction_m1(&x, l).map_err(|e| e.to_string())?;
                ensure(c == x.scale(&m1_closed_form(g, l)), || format!("m1 g={g} l={l}"))?;
            }
        }
    }
    let mut r = random::rng(505);
    let s = SymplecticSpace::new(1);
    let basis = s.basis();
    for (m, l) in [(5, 3), (4, 2), (6, 3)] {
        for t in 0..10 {
            let u: Vec<TensorSeries> =
                (0..m).map(|_| letter(s.alphabet(), 1, basis[r.random_range(0..basis.len())])).collect();
            let ok = if m % 2 == 1 { s.verify_lemma_51(&u, l) } else { s.verify_lemma_52(&u, l) };
            ensure(ok == Ok(true), || format!("lemma (m={m}, l={l}) sample {t}: {ok:?}"))?;
        }
    }
    Ok("m0, m1, 30 lemma checks".into())
}

fn random_derivation(r: &mut ChaCha8Rng, a: &Arc<Alphabet>, n: usize) -> Result<TangentialDerivation, String> {
    let (g, nb) = a.surface_type().unwrap();
    let xy = (0..2 * g).map(|_| random::lie(r, a, n, 2, 3, 2).into_series()).collect();
    let gens = (0..nb).map(|_| random::lie(r, a, n, 1, 2, 2).into_series()).collect();
    TangentialDerivation::new(a, n, xy, gens).map_err(|e| e.to_string())
}

fn same_through(a: &CyclicSeries, b: &CyclicSeries) -> bool {
    let n = a.cutoff().min(b.cutoff());
    a.truncate(n) == b.truncate(n)
}

fn cocycles() -> Outcome {
    let mut r = random::rng(606);
    for (g, nb) in [(1, 0), (0, 2), (1, 1)] {
        let a = Alphabet::surface(g, nb);
        let chi = 1 - 2 * g as i64 - nb as i64;
        for t in 0..10 {
            let n = 6;
            let u = random_derivation(&mut r, &a, n)?;
            let v = random_derivation(&mut r, &a, n)?;
            let lhs = u.bracket(&v).divergence();
            let rhs = &u.apply_cyclic(&v.divergence()) - &v.apply_cyclic(&u.divergence());
            ensure(same_through(&lhs, &rhs), || format!("({g},{nb}) sample {t}: div cocycle"))?;

            let (f, h) = (TangentialAutomorphism::exp(u.truncate(5)), TangentialAutomorphism::exp(v.truncate(5)));
            let lhs = f.compose(&h).j();
            let rhs = &f.j() + &f.apply_cyclic(&h.j());
            ensure(same_through(&lhs, &rhs), || format!("({g},{nb}) sample {t}: j cocycle"))?;

            let ell = random::lie(&mut r, &a, 5, 1, 4, 3).into_series();
            let inner = TangentialDerivation::inner(&ell).map_err(|e| e.to_string())?;
            ensure(same_through(&inner.divergence(), &trace(&ell).scale(&q(chi))), || {
                format!("({g},{nb}) sample {t}: div(u_ℓ)")
            })?;
            let gammas: Vec<i64> = (0..nb).map(|_| r.random_range(-2..=2)).collect();
            let rot0 = gammas.iter().sum::<i64>() - chi;
            let fr = Framing::new(
                (0..g).map(|_| r.random_range(-2..=2)).collect(),
                (0..g).map(|_| r.random_range(-2..=2)).collect(),
                gammas,
                rot0,
            )
            .map_err(|e| e.to_string())?;
            let jf = TangentialAutomorphism::inner(&ell).map_err(|e| e.to_string())?.j_f(&fr);
            ensure(same_through(&jf, &trace(&ell).scale(&q(-rot0))), || format!("({g},{nb}) sample {t}: j_f(F_ℓ)"))?;
        }
    }
    Ok("3 surfaces x 10 samples".into())
}

// Test words run through weight max(6, k + 2): for (0,2) the word |z1 z1 z2|
// commutes with every cyclic word of weight <= 6 but not with weight 8.
fn center() -> Outcome {
    for (g, n) in [(1, 0), (0, 2), (1, 1)] {
        let s = SurfaceAlgebra::new(g, n);
        for k in 0..=6 {
            let tests: Vec<usize> = (1..=6.max(k + 2)).collect();
            ensure(center_matches_prediction(&s, k, &tests), || format!("({g},{n}) weight {k}"))?;
        }
    }
    Ok("weights 0..=6, test words through weight k+2".into())
}

fn goldman_cross_check() -> Outcome {
    let mut r = random::rng(808);
    for t in 0..50 {
        let (g, n) = [(1, 1), (0, 2), (1, 0), (2, 0)][t % 4];
        let a = Alphabet::surface(g, n);
        let p = pi(&a).map_err(|e| e.to_string())?;
        let x = random::cyclic(&mut r, &a, 6, 1, 4, 3);
        let y = random::cyclic(&mut r, &a, 6, 1, 4, 3);
        let direct = goldman_bracket(&x, &y).map_err(|e| e.to_string())?;
        let via = partial_map(&p, &[x.clone(), y.clone()]).map_err(|e| e.to_string())?;
        ensure(direct.terms() == via.terms(), || format!("sample {t}: splice and ∂(Π) differ"))?;
        let back = goldman_bracket(&y, &x).map_err(|e| e.to_string())?;
        ensure((&direct + &back).is_zero(), || format!("sample {t}: antisymmetry"))?;
    }
    for t in 0..20 {
        let a = Alphabet::surface(1, 1);
        let x = random::cyclic(&mut r, &a, 8, 1, 3, 2);
        let y = random::cyclic(&mut r, &a, 8, 1, 3, 2);
        let w = random::cyclic(&mut r, &a, 8, 1, 3, 2);
        let br = |u: &CyclicSeries, v: &CyclicSeries| goldman_bracket(u, v).unwrap();
        let jac = &(&br(&x, &br(&y, &w)) + &br(&y, &br(&w, &x))) + &br(&w, &br(&x, &y));
        ensure(jac.is_zero(), || format!("sample {t}: Jacobi"))?;
    }
    Ok("50 pairs, 20 triples".into())
}

fn poisson_cohomology() -> Outcome {
    for (g, n) in [(1, 0), (0, 2), (1, 1), (2, 0), (1, 2)] {
        let a = Alphabet::surface(g, n);
        let p = pi(&a).map_err(|e| e.to_string())?;
        ensure(schouten(&p, &p).map_err(|e| e.to_string())?.is_zero(), || format!("[Π,Π] != 0 for ({g},{n})"))?;
    }
    let a = Alphabet::surface(1, 1);
    let c = PoissonComplex::new(&a).map_err(|e| e.to_string())?;
    let s = SurfaceAlgebra::new(1, 1);
    for w in 0..=6 {
        let h = c.cohomology(0, w).map_err(|e| e.to_string())?;
        let h0: Vec<CyclicSeries> =
            h.classes.iter().map(|x| x.to_cyclic().unwrap().extend_cutoff(w as usize)).collect();
        let center = center_component(&s, w as usize, &[1, 2, 3, 4, 5, 6]);
        ensure(same_span(&h0, &center) && same_span(&h0, &s.predicted_center(w as usize)), || {
            format!("H⁰ weight {w}")
        })?;
    }
    let h = c.cohomology(1, -2).map_err(|e| e.to_string())?;
    ensure(h.dim_h == 1, || format!("dim H¹ at weight -2 is {}", h.dim_h))?;
    let dz = [SuperGenerator::Partial(a.z(1))];
    let rep = &h.classes[0];
    let diff = &rep.scale(&rep.coeff(&dz).recip()) - &cyclie::dbrackets::SuperCyclicSeries::word(&a, -2, &dz, q(1));
    ensure(c.in_ideal(&diff), || "H¹ representative is not the class of |∂z|".into())?;
    for w in -1..=2 {
        let h = c.cohomology(1, w).map_err(|e| e.to_string())?;
        ensure(h.dim_h == 0, || format!("dim H¹ at weight {w} is {}", h.dim_h))?;
    }
    Ok("H⁰ weights 0..=6, H¹ = span{|∂z|}".into())
}

fn perturbation(r: &mut ChaCha8Rng, s: &SurfaceAlgebra, n: usize, keep: bool) -> Result<TangentialAutomorphism, String> {
    if keep {
        let c = q(r.random_range(1..=3));
        TangentialAutomorphism::inner(&s.omega(n - 1).scale(&c)).map_err(|e| e.to_string())
    } else {
        Ok(TangentialAutomorphism::exp(random_derivation(r, s.alphabet(), n)?))
    }
}

fn kv_pipeline() -> Outcome {
    let mut r = random::rng(1010);
    let mut agree = 0;
    for (g, nb, n) in [(0, 2, 6), (1, 0, 5)] {
        let s = SurfaceAlgebra::new(g, nb);
        let sol = solve_kv1(&s, n).map_err(|e| format!("solve ({g},{nb}): {e}"))?;
        let f = sol.automorphism;
        ensure(check_kv1(&f) == Ok(true), || format!("check_kv1 fails on the ({g},{nb}) solution"))?;
        let theta = Expansion::twisted(&f).map_err(|e| e.to_string())?;
        ensure(theta.is_special(), || format!("θ_F is not special for ({g},{nb})"))?;
        for t in 0..5 {
            let p = perturbation(&mut r, &s, f.cutoff(), t % 2 == 0)?;
            let fp = f.compose(&p);
            let kv1 = check_kv1(&fp).map_err(|e| e.to_string())?;
            let special = Expansion::twisted(&fp).map_err(|e| e.to_string())?.is_special();
            ensure(kv1 == special, || format!("({g},{nb}) perturbation {t}: KV I = {kv1}, special = {special}"))?;
            agree += 1;
        }
    }
    Ok(format!("2 solutions, {agree} perturbations agree"))
}

fn gamma0_is_exp_xi() -> Outcome {
    let n = 6;
    for (g, nb) in [(1, 0), (0, 2), (1, 1)] {
        let s = SurfaceAlgebra::new(g, nb);
        let t = theta_exp(s.alphabet(), n, &FreeGroupWord::gamma0(g, nb)).map_err(|e| e.to_string())?;
        let e: GroupLike = xi(&s, n).exp();
        ensure(t.series() == e.series(), || format!("({g},{nb}): θ_exp(γ₀) != e^ξ"))?;
    }
    Ok("3 surfaces".into())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("PBW/trace decomposition", pbw_decomposition),
        ("conjugation invariance of power traces", conjugation_invariance),
        ("conjugacy round trips", conjugacy_round_trips),
        ("ω₀-bracket solver", omega_bracket_solver),
        ("contraction closed forms and lemmas", closed_forms),
        ("divergence and j cocycles", cocycles),
        ("center of the Goldman bracket", center),
        ("Goldman bracket cross-validation", goldman_cross_check),
        ("Poisson cohomology", poisson_cohomology),
        ("KV I pipeline", kv_pipeline),
        ("θ_exp(γ₀) = e^ξ", gamma0_is_exp_xi),
    ];
    let handles: Vec<_> = criteria
        .into_iter()
        .enumerate()
        .map(|(i, (name, f))| {
            std::thread::spawn(move || {
                let start = Instant::now();
                let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                (i + 1, name, out, start.elapsed())
            })
        })
        .collect();
    let mut failed = 0;
    for h in handles {
        let (i, name, out, dt) = h.join().expect("criterion thread");
        match out {
            Ok(detail) => println!("criterion {i:>2} PASS  {name} ({detail}) [{:.1}s]", dt.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {i:>2} FAIL  {name}: {why} [{:.1}s]", dt.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
