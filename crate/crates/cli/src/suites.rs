//! Seeded verification suites for `cyclie verify`.

use std::sync::Arc;

use cyclie::cyclic::{power_trace, trace, CyclicSeries};
use cyclie::dbrackets::{partial_map, pi, schouten, PoissonComplex};
use cyclie::kv::{check_kv1, solve_kv1, theta_exp, xi, Expansion, FreeGroupWord, TangentialAutomorphism, TangentialDerivation};
use cyclie::lie::{bracket, LieElement};
use cyclie::necklace::{center_component, goldman_bracket, same_span, SurfaceAlgebra};
use cyclie::pbw::eulerian_projection;
use cyclie::random::{self, SeededRng};
use cyclie::rational::q;
use cyclie::symplectic::{
    conjugates_to, default_l_window, m0_closed_form, m1_closed_form, normalize_conjugacy_linear,
    normalize_conjugacy_symplectic, solve_omega_bracket, trace_contraction_m0, verify_v3_splitting, SymplecticSpace,
};
use cyclie::{Alphabet, TensorSeries};

use crate::config::{usage, CliResult, RunConfig};
use crate::report::Report;

type Suite = fn(&RunConfig, &mut Report) -> CliResult<()>;

pub const SUITES: &[(&str, &[&str], Suite)] = &[
    ("contraction-odd", &["m", "l", "samples"], contraction_odd),
    ("contraction-even", &["m", "l", "samples"], contraction_even),
    ("closed-forms", &["l"], closed_forms),
    ("qhq", &["m", "l"], qhq),
    ("v3", &[], v3),
    ("pbw", &["samples", "letters"], pbw),
    ("conjugation", &["samples"], conjugation),
    ("conjugacy", &["samples"], conjugacy),
    ("omega-bracket", &["samples"], omega_bracket),
    ("goldman", &["samples"], goldman),
    ("cocycles", &["samples"], cocycles),
    ("center", &["k"], center),
    ("poisson", &["weights"], poisson),
    ("kv", &["samples"], kv),
    ("gamma0", &[], gamma0),
];

const ALIASES: &[(&str, &str)] = &[("lemma51", "contraction-odd"), ("lemma52", "contraction-even")];

pub fn run(name: &str, cfg: &RunConfig) -> CliResult<Report> {
    let name = ALIASES.iter().find(|a| a.0 == name).map_or(name, |a| a.1);
    let Some((_, keys, suite)) = SUITES.iter().find(|(n, _, _)| *n == name) else {
        let names: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
        return usage(format!("unknown suite {name:?}; available: {}", names.join(", ")));
    };
    cfg.allow(keys)?;
    let mut r = Report::new(format!("verify {name}"), cfg);
    suite(cfg, &mut r)?;
    Ok(r)
}

fn symplectic(cfg: &RunConfig) -> CliResult<SymplecticSpace> {
    if cfg.g == 0 {
        return usage("this suite needs g >= 1");
    }
    Ok(SymplecticSpace::new(cfg.g))
}

fn contraction(cfg: &RunConfig, r: &mut Report, odd: bool) -> CliResult<()> {
    let s = symplectic(cfg)?;
    let m: usize = cfg.get("m", if odd { 5 } else { 4 })?;
    let l: usize = cfg.get("l", if odd { 3 } else { 2 })?;
    let samples: usize = cfg.get("samples", 10)?;
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let w = random::word(&mut rng, s.alphabet(), m);
        let u: Vec<TensorSeries> = w.0.iter().map(|&l| TensorSeries::letter(s.alphabet(), 1, l)).collect();
        let ok = if odd { s.verify_lemma_51(&u, l)? } else { s.verify_lemma_52(&u, l)? };
        r.check(format!("sample {t}"), ok, format!("m = {m}, l = {l}, u = {}", s.alphabet().format_word(&w)));
    }
    Ok(())
}

fn contraction_odd(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    contraction(cfg, r, true)
}

fn contraction_even(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    contraction(cfg, r, false)
}

fn closed_forms(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let s = symplectic(cfg)?;
    let lmax: usize = cfg.get("l", 4)?;
    for l in 1..=lmax {
        let c = trace_contraction_m0(cfg.g, l)?;
        r.check(format!("m = 0, l = {l}"), c == m0_closed_form(cfg.g, l), format!("C^l|ω₀^l| = {c}"));
        let ok = s.basis().into_iter().all(|v| {
            let x = TensorSeries::letter(s.alphabet(), 1, v);
            s.trace_contraction_m1(&x, l).map(|c| c == x.scale(&m1_closed_form(cfg.g, l))).unwrap_or(false)
        });
        r.check(format!("m = 1, l = {l}"), ok, format!("coefficient {}", m1_closed_form(cfg.g, l)));
    }
    Ok(())
}

fn qhq(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let s = symplectic(cfg)?;
    let m: usize = cfg.get("m", 4)?;
    let l: usize = cfg.get("l", 2)?;
    let ls: Vec<usize> = (1..=l).collect();
    r.check(format!("Q⊗V^{}⊗Q injects, l = 1..={l}", m.saturating_sub(4)), s.qhq_injective(m, &ls)?, "");
    Ok(())
}

fn v3(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let sp = symplectic(cfg)?.v3_splitting();
    let detail = format!("dims {} + {} = {} of {}", sp.dim_bracket, sp.dim_vq, sp.dim_sum, sp.ambient);
    r.check("V^3 = [ω₀, V] ⊕ V⊗Q", verify_v3_splitting(cfg.g), detail);
    Ok(())
}

fn pbw(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let samples: usize = cfg.get("samples", 20)?;
    let k: usize = cfg.get("letters", 3)?;
    let a = Alphabet::basis(&vec![1; k])?;
    let n = cfg.cutoff;
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let s = random::series(&mut rng, &a, n, 1, n, 3);
        let comps: Vec<TensorSeries> = (0..=n).map(|m| eulerian_projection(&s, m)).collect();
        let sum = comps.iter().fold(TensorSeries::zero(&a, n), |acc, c| &acc + c);
        let idem = comps.iter().enumerate().all(|(m, c)| eulerian_projection(c, m) == *c);
        r.check(format!("sample {t}"), sum == s && comps[1].is_primitive() && idem, "");
    }
    Ok(())
}

fn conjugation(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let samples: usize = cfg.get("samples", 10)?;
    let a = cfg.alphabet();
    let n = cfg.cutoff;
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let u = random::lie(&mut rng, &a, n, 1, 3, 3).into_series();
        let g = random::group_like(&mut rng, &a, n, 3, 3);
        let v = g.conjugate(&u);
        let ok = (1..=n).all(|m| power_trace(&u, m) == power_trace(&v, m));
        r.check(format!("sample {t}"), ok, "|(gug⁻¹)^m| = |u^m|");
    }
    Ok(())
}

fn conjugacy(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let samples: usize = cfg.get("samples", 10)?;
    let a = cfg.alphabet();
    let n = cfg.cutoff;
    let mut rng = random::rng(cfg.seed);
    let z = if cfg.n > 0 {
        TensorSeries::letter(&a, n, a.z(1))
    } else {
        SymplecticSpace::of_alphabet(&a)?.omega0(n)
    };
    if z.is_zero() {
        return usage("conjugacy needs n >= 1 or g >= 1");
    }
    for t in 0..samples {
        let u = random::lie(&mut rng, &a, n, 1, 3, 3);
        let conj = LieElement::new(u.exp().conjugate(&z))?;
        let h = if cfg.n > 0 {
            normalize_conjugacy_linear(&LieElement::new(z.clone())?, &conj)
        } else {
            normalize_conjugacy_symplectic(&conj)
        };
        match h {
            Ok(h) => r.check(format!("sample {t}"), conjugates_to(&h, conj.series(), &z), ""),
            Err(e) => r.check(format!("sample {t}"), false, e.to_string()),
        }
    }
    Ok(())
}

fn omega_bracket(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let s = symplectic(cfg)?;
    let samples: usize = cfg.get("samples", 10)?;
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let m = 3 + t % (cfg.cutoff.max(3) - 2);
        let b = random::series(&mut rng, s.alphabet(), m - 2, m - 2, m - 2, 3);
        let lhs = bracket(&s.omega0(m), &b.extend_cutoff(m)).with_cutoff(m);
        let ok = match solve_omega_bracket(&lhs, default_l_window(m)) {
            Ok(b2) => bracket(&s.omega0(m), &b2.extend_cutoff(m)).with_cutoff(m) == lhs,
            Err(_) => false,
        };
        r.check(format!("sample {t}"), ok, format!("degree {m}"));
    }
    let rejected = solve_omega_bracket(&s.omega0(2), default_l_window(2)).is_err();
    r.check("a = ω₀ rejected", rejected, "");
    Ok(())
}

fn goldman(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let samples: usize = cfg.get("samples", 20)?;
    let a = cfg.alphabet();
    let p = pi(&a)?;
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let x = random::cyclic(&mut rng, &a, cfg.cutoff, 1, 4, 3);
        let y = random::cyclic(&mut rng, &a, cfg.cutoff, 1, 4, 3);
        let w = random::cyclic(&mut rng, &a, cfg.cutoff, 1, 3, 2);
        let br = |u: &CyclicSeries, v: &CyclicSeries| goldman_bracket(u, v);
        let direct = br(&x, &y)?;
        let via = partial_map(&p, &[x.clone(), y.clone()])?;
        let anti = (&direct + &br(&y, &x)?).is_zero();
        let jac = &(&br(&x, &br(&y, &w)?)? + &br(&y, &br(&w, &x)?)?) + &br(&w, &br(&x, &y)?)?;
        r.check(format!("sample {t}"), direct.terms() == via.terms() && anti && jac.is_zero(), "");
    }
    r.check("[Π, Π] = 0", schouten(&p, &p)?.is_zero(), "");
    Ok(())
}

fn derivation(rng: &mut SeededRng, a: &Arc<Alphabet>, n: usize) -> CliResult<TangentialDerivation> {
    let (g, nb) = a.surface_type().expect("surface alphabet");
    let xy = (0..2 * g).map(|_| random::lie(rng, a, n, 2, 3, 2).into_series()).collect();
    let gens = (0..nb).map(|_| random::lie(rng, a, n, 1, 2, 2).into_series()).collect();
    Ok(TangentialDerivation::new(a, n, xy, gens)?)
}

fn same_through(a: &CyclicSeries, b: &CyclicSeries) -> bool {
    let n = a.cutoff().min(b.cutoff());
    a.truncate(n) == b.truncate(n)
}

fn cocycles(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let samples: usize = cfg.get("samples", 10)?;
    let a = cfg.alphabet();
    let n = cfg.cutoff;
    let fr = cfg.framing_or_zero();
    let chi = 1 - 2 * cfg.g as i64 - cfg.n as i64;
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let u = derivation(&mut rng, &a, n)?;
        let v = derivation(&mut rng, &a, n)?;
        let lhs = u.bracket(&v).divergence();
        let rhs = &u.apply_cyclic(&v.divergence()) - &v.apply_cyclic(&u.divergence());
        let div_ok = same_through(&lhs, &rhs);
        let (f, h) = (TangentialAutomorphism::exp(u), TangentialAutomorphism::exp(v));
        let j_ok = same_through(&f.compose(&h).j(), &(&f.j() + &f.apply_cyclic(&h.j())));
        let ell = random::lie(&mut rng, &a, n - 1, 1, 4, 3).into_series();
        let inner = TangentialAutomorphism::inner(&ell)?;
        let div_inner = same_through(&inner.log().divergence(), &trace(&ell).scale(&q(chi)));
        let jf_inner = same_through(&inner.j_f(&fr), &trace(&ell).scale(&q(-fr.rot_gamma0)));
        let detail = format!("div {div_ok}, j {j_ok}, div(u_ℓ) {div_inner}, j_f(F_ℓ) {jf_inner}");
        r.check(format!("sample {t}"), div_ok && j_ok && div_inner && jf_inner, detail);
    }
    Ok(())
}

fn center(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let (lo, hi) = cfg.range("k", (0, 6))?;
    let s = SurfaceAlgebra::new(cfg.g, cfg.n);
    for k in lo.max(0) as usize..=hi.max(0) as usize {
        let tests: Vec<usize> = (1..=(k + 2).max(6)).collect();
        let basis = center_component(&s, k, &tests);
        r.check(format!("weight {k}"), same_span(&basis, &s.predicted_center(k)), format!("dim {}", basis.len()));
    }
    Ok(())
}

fn poisson(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let (lo, hi) = cfg.range("weights", (-2, 2))?;
    let a = cfg.alphabet();
    let c = PoissonComplex::new(&a)?;
    r.check("[Π, Π] = 0", schouten(c.pi(), c.pi())?.is_zero(), "");
    let s = SurfaceAlgebra::new(cfg.g, cfg.n);
    for w in lo.max(0)..=hi {
        let h0 = c.cohomology(0, w)?;
        let tests: Vec<usize> = (1..=(w as usize + 2).max(6)).collect();
        let dim = center_component(&s, w as usize, &tests).len();
        r.check(format!("H⁰ weight {w} = center"), h0.dim_h == dim, format!("dim {}", h0.dim_h));
    }
    for w in lo..=hi {
        let h1 = c.cohomology(1, w)?;
        r.line(format!("H¹ weight {w}: dim {} {}", h1.dim_h, h1.representatives.join("; ")));
    }
    Ok(())
}

fn kv(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let samples: usize = cfg.get("samples", 4)?;
    let s = SurfaceAlgebra::new(cfg.g, cfg.n);
    let f = solve_kv1(&s, cfg.cutoff)?.automorphism;
    r.check("solution satisfies KV I", check_kv1(&f)?, "");
    r.check("θ_F is special", Expansion::twisted(&f)?.is_special(), "");
    let mut rng = random::rng(cfg.seed);
    for t in 0..samples {
        let p = if t % 2 == 0 {
            TangentialAutomorphism::inner(&s.omega(f.cutoff() - 1).scale(&q(1 + t as i64)))?
        } else {
            TangentialAutomorphism::exp(derivation(&mut rng, s.alphabet(), f.cutoff())?)
        };
        let fp = f.compose(&p);
        let kv1 = check_kv1(&fp)?;
        let special = Expansion::twisted(&fp)?.is_special();
        r.check(format!("perturbation {t}"), kv1 == special, format!("KV I {kv1}, special {special}"));
    }
    Ok(())
}

fn gamma0(cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let s = SurfaceAlgebra::new(cfg.g, cfg.n);
    let t = theta_exp(s.alphabet(), cfg.cutoff, &FreeGroupWord::gamma0(cfg.g, cfg.n))?;
    r.check("θ_exp(γ₀) = e^ξ", t.series() == xi(&s, cfg.cutoff).exp().series(), "");
    Ok(())
}
