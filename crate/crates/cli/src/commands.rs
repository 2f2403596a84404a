use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use cyclie::dbrackets::PoissonComplex;
use cyclie::kv::{
    check_kv1, check_kv1_prime, check_kv2_prime, solve_kv, Expansion, Kv2Report, TangentialAutomorphism,
};
use cyclie::lie::{bch, GroupLike, LieElement};
use cyclie::necklace::{center_component, same_span, SurfaceAlgebra};
use cyclie::rational::format_q;
use cyclie::serial::{AutomorphismJson, SeriesJson};
use cyclie::symplectic::{conjugates_to, normalize_conjugacy_linear, normalize_conjugacy_symplectic, SymplecticSpace};
use cyclie::{Q, TensorSeries};

use crate::config::{read_json, usage, CliResult, RunConfig};
use crate::report::Report;

#[derive(Deserialize)]
struct BchInput {
    u: SeriesJson,
    v: SeriesJson,
}

pub fn cmd_bch(cfg: &RunConfig) -> CliResult<Report> {
    cfg.allow(&[])?;
    let a = cfg.alphabet();
    let (u, v) = match &cfg.input {
        Some(p) => {
            let inp: BchInput = read_json(p)?;
            (inp.u.to_tensor(&a)?.truncate(cfg.cutoff), inp.v.to_tensor(&a)?.truncate(cfg.cutoff))
        }
        None if a.len() >= 2 => (TensorSeries::letter(&a, cfg.cutoff, 0), TensorSeries::letter(&a, cfg.cutoff, 1)),
        None => return usage("the alphabet has fewer than two letters; pass --in"),
    };
    let w = bch(&u, &v)?;
    let mut r = Report::new("bch", cfg);
    r.line(format!("u = {u}"));
    r.line(format!("v = {v}"));
    r.line(format!("bch(u, v) = {w}"));
    if u.is_primitive() && v.is_primitive() {
        r.check("bch(u, v) is primitive", w.is_primitive(), "");
    }
    r.set("result", SeriesJson::from_tensor(&w));
    Ok(r)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Target {
    Named(String),
    Series(SeriesJson),
}

#[derive(Deserialize)]
struct NormalizeInput {
    #[serde(default)]
    target: Option<Target>,
    a: SeriesJson,
}

pub fn cmd_normalize(cfg: &RunConfig) -> CliResult<Report> {
    cfg.allow(&["target"])?;
    let alpha = cfg.alphabet();
    let inp: NormalizeInput = read_json(cfg.input_path()?)?;
    let a = LieElement::new(inp.a.to_tensor(&alpha)?.truncate(cfg.cutoff))?;
    let target = match (cfg.params.get("target"), inp.target) {
        (Some(t), _) => Target::Named(t.clone()),
        (None, Some(t)) => t,
        (None, None) => Target::Named("omega0".into()),
    };
    let (z, h): (TensorSeries, GroupLike) = match target {
        Target::Named(name) if name == "omega0" => {
            let z = SymplecticSpace::of_alphabet(&alpha)?.omega0(cfg.cutoff);
            let h = normalize_conjugacy_symplectic(&a)?;
            (z, h)
        }
        Target::Named(name) => return usage(format!("unknown target {name:?}; use omega0 or a series")),
        Target::Series(s) => {
            let z = LieElement::new(s.to_tensor(&alpha)?.truncate(cfg.cutoff))?;
            let h = normalize_conjugacy_linear(&z, &a)?;
            (z.into_series(), h)
        }
    };
    let mut r = Report::new("normalize", cfg);
    r.line(format!("a = {}", a.series()));
    r.line(format!("z = {z}"));
    r.line(format!("g = {}", h.series()));
    r.check("g⁻¹ a g = z", conjugates_to(&h, a.series(), &z), "");
    r.set("conjugator", SeriesJson::from_tensor(h.series()));
    r.set("log", SeriesJson::from_tensor(h.log().series()));
    Ok(r)
}

fn coeffs(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

fn kv2_json(k: &Kv2Report) -> Value {
    json!({
        "holds": k.holds,
        "failing_weight": k.failing_weight,
        "tested_through": k.tested_through,
        "h": coeffs(&k.h),
        "h_j": k.h_j.iter().map(|h| coeffs(h)).collect::<Vec<_>>(),
    })
}

/// Loads `F` from a bare automorphism file or from a saved `kv solve` report.
fn load_automorphism(cfg: &RunConfig) -> CliResult<TangentialAutomorphism> {
    let v: Value = read_json(cfg.input_path()?)?;
    let inner = match v.get("data").and_then(|d| d.get("automorphism")) {
        Some(a) => a.clone(),
        None => v,
    };
    let f: AutomorphismJson =
        serde_json::from_value(inner).map_err(|e| cyclie::Error::Parse(format!("automorphism: {e}")))?;
    if (f.g, f.n) != (cfg.g, cfg.n) {
        return usage(format!("automorphism is for (g, n) = ({}, {}), not ({}, {})", f.g, f.n, cfg.g, cfg.n));
    }
    Ok(f.to_automorphism()?)
}

fn kv_checks(r: &mut Report, cfg: &RunConfig, f: &TangentialAutomorphism, full: bool) -> CliResult<()> {
    let kv1 = check_kv1(f)?;
    r.check("KV I: F(ω) = ξ", kv1, format!("through weight {}", f.cutoff()));
    r.set("kv1", kv1);
    if !full {
        return Ok(());
    }
    let special = Expansion::twisted(f)?.is_special();
    r.line(format!("θ_F special: {special}"));
    r.set("special", special);
    match check_kv1_prime(f) {
        Ok(ell0) => {
            r.check("KV I′: F(ω) conjugate to ξ", true, format!("ℓ₀ = {}", ell0.series()));
            r.set("ell0", SeriesJson::from_tensor(ell0.series()));
            if let Some(fr) = &cfg.framing {
                let k = check_kv2_prime(f, fr, &ell0)?;
                let detail = match k.failing_weight {
                    Some(w) => format!("fails at weight {w}"),
                    None => format!("through weight {}", k.tested_through),
                };
                r.check("KV II′", k.holds, detail);
                r.set("kv2", kv2_json(&k));
            }
        }
        Err(e) => r.check("KV I′: F(ω) conjugate to ξ", false, e.to_string()),
    }
    Ok(())
}

pub fn cmd_kv(action: &str, cfg: &RunConfig) -> CliResult<Report> {
    cfg.allow(&[])?;
    let mut r = Report::new(format!("kv {action}"), cfg);
    match action {
        "solve" => {
            let s = SurfaceAlgebra::new(cfg.g, cfg.n);
            let sol = solve_kv(&s, cfg.cutoff, cfg.framing.as_ref())?;
            let f = &sol.automorphism;
            let s_omega = s.omega(cfg.cutoff);
            r.line(format!("F(ω) = {}", f.apply(&s_omega)));
            for (w, d) in &sol.solution_dims {
                r.line(format!("weight {w}: solution space of dimension {d}"));
            }
            r.set("automorphism", AutomorphismJson::from_automorphism(f)?);
            r.set("solution_dims", &sol.solution_dims);
            if cfg.framing.is_some() {
                r.set("h", coeffs(&sol.h));
                r.set("h_j", sol.h_j.iter().map(|h| coeffs(h)).collect::<Vec<_>>());
            }
            kv_checks(&mut r, cfg, f, cfg.framing.is_some())?;
        }
        "check-kv1" => {
            let f = load_automorphism(cfg)?;
            kv_checks(&mut r, cfg, &f, false)?;
        }
        "check" => {
            let f = load_automorphism(cfg)?;
            kv_checks(&mut r, cfg, &f, true)?;
        }
        other => return usage(format!("unknown kv action {other:?}; use solve, check-kv1 or check")),
    }
    Ok(r)
}

pub fn cmd_center(cfg: &RunConfig) -> CliResult<Report> {
    cfg.allow(&["k", "tests"])?;
    let (lo, hi) = cfg.range("k", (0, 6))?;
    if lo < 0 {
        return usage("k must be nonnegative");
    }
    let s = SurfaceAlgebra::new(cfg.g, cfg.n);
    let mut r = Report::new("center", cfg);
    let mut out = BTreeMap::new();
    for k in lo as usize..=hi as usize {
        let top = cfg.get("tests", (k + 2).max(6))?;
        let tests: Vec<usize> = (1..=top).collect();
        let basis = center_component(&s, k, &tests);
        let predicted = s.predicted_center(k);
        let shown: Vec<String> = basis.iter().map(|c| c.to_string()).collect();
        r.line(format!("weight {k}: dim {} {{{}}}", basis.len(), shown.join(", ")));
        r.check(format!("weight {k} center = span{{|ω^m|, |z_j^m|}}"), same_span(&basis, &predicted), "");
        out.insert(
            k.to_string(),
            json!({
                "test_weights": tests,
                "basis": basis.iter().map(SeriesJson::from_cyclic).collect::<Vec<_>>(),
                "predicted": predicted.iter().map(SeriesJson::from_cyclic).collect::<Vec<_>>(),
            }),
        );
    }
    r.set("components", out);
    Ok(r)
}

pub fn cmd_cohomology(cfg: &RunConfig) -> CliResult<Report> {
    cfg.allow(&["degree", "weights"])?;
    let degree: usize = cfg.require("degree")?;
    if degree > 1 {
        return usage("degree must be 0 or 1");
    }
    let (lo, hi) = cfg.range("weights", (-2, 2))?;
    let c = PoissonComplex::new(&cfg.alphabet())?;
    let mut r = Report::new("cohomology", cfg);
    r.line("weight  dim_ker  dim_im  dim_H  representatives");
    let mut table = Vec::new();
    for w in lo..=hi {
        let rep = c.cohomology(degree, w)?;
        r.line(format!(
            "{:>6}  {:>7}  {:>6}  {:>5}  {}",
            w,
            rep.dim_ker,
            rep.dim_im,
            rep.dim_h,
            rep.representatives.join("; ")
        ));
        table.push(rep);
    }
    r.set("table", table);
    Ok(r)
}
