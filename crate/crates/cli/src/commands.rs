use anyhow::{bail, Context};
use rayon::prelude::*;
use serde_json::{json, Value};

use fmodule::coeff::{KField, PrimeField, RingParams};
use fmodule::gpoly::{poly_from_json, poly_to_json, KPoly, Poly};
use fmodule::hopf::{
    conjugation_identity, coproduct_t, eta_r_closed, eta_r_v, hopf_axiom_suite, verify_invariance, CoproductRoute,
};
use fmodule::report::{Check, Report};
use fmodule::sequences::Seq;
use fmodule::stabilizer::{
    frobenius_check, reduction_consistency, stab_coassoc_check, stab_presentation, thickening_check,
};
use fmodule::universal::{araki_logs, closed_form_logs, logs, Convention};
use fmodule::witt::{congruence_sides, defining_identity_sides, witt_variables, WittEvaluator};

use crate::cache::{Cache, Entry};
use crate::config::Settings;

/// The result of one subcommand: rendered text, the JSON document, and whether every
/// verification it ran passed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

fn ring_json(params: &RingParams) -> Value {
    json!({"p": params.p(), "e": params.e(), "f": params.f(), "u": params.u()})
}

/// Polynomial-valued subcommands: computes (or loads) named entries.
fn polys(
    s: &Settings,
    subcommand: &str,
    config: Value,
    expected: Vec<(String, u64)>,
    compute: impl FnOnce() -> anyhow::Result<Vec<KPoly>>,
) -> anyhow::Result<Vec<Entry>> {
    let params = s.ring()?;
    let field = KField::new(params);
    let config = json!({"ring": ring_json(&params), "args": config});
    let cache = s.cache_dir().map(Cache::new);
    if let Some(hit) = cache.as_ref().and_then(|c| c.read(&field, subcommand, &config, &expected)) {
        return Ok(hit);
    }
    let values = compute()?;
    let entries: Vec<Entry> = expected
        .into_iter()
        .zip(values)
        .map(|((name, degree), poly)| Entry { name, degree, poly })
        .collect();
    if let Some(c) = &cache {
        if let Err(e) = c.write(subcommand, &config, &entries) {
            eprintln!("warning: could not write cache: {e}");
        }
    }
    Ok(entries)
}

fn render_polys(params: &RingParams, header: Value, entries: &[Entry]) -> Outcome {
    let text = entries.iter().map(|e| format!("{} = {}\n", e.name, e.poly)).collect();
    let items: Vec<Value> =
        entries.iter().map(|e| json!({"name": e.name, "degree": e.degree, "terms": poly_to_json(&e.poly)})).collect();
    let mut json = json!({"ring": ring_json(params), "values": items});
    if let (Value::Object(dst), Value::Object(src)) = (&mut json, header) {
        dst.extend(src);
    }
    Outcome { text, json, ok: true }
}

pub fn logs_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let n = Settings::positive("n", s.n, 2)?;
    let conv = s.convention();
    let expected = (0..=n).map(|h| (format!("l{h}"), params.gen_degree(h))).collect();
    let entries = polys(s, "logs", json!({"n": n, "convention": conv.name()}), expected, || {
        Ok(logs(&params, n, conv).coeffs().to_vec())
    })?;
    Ok(render_polys(&params, json!({"convention": conv.name()}), &entries))
}

pub fn right_unit_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let k = Settings::positive("k", s.k, 1)?;
    let conv = s.convention();
    let expected = vec![(format!("eta_R({})", conv.var(k)), params.gen_degree(k))];
    let entries = polys(s, "right-unit", json!({"k": k, "convention": conv.name()}), expected, || {
        Ok(vec![eta_r_v(&params, k, conv)?])
    })?;
    Ok(render_polys(&params, json!({"convention": conv.name()}), &entries))
}

pub fn coproduct_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let k = Settings::positive("k", s.k, 1)?;
    let d = s.d.unwrap_or_else(|| params.gen_degree(k));
    let route: CoproductRoute = s.route.map(Into::into).unwrap_or(CoproductRoute::Witt);
    let route_name = format!("{route:?}").to_lowercase();
    let expected = vec![(format!("Delta(t{k})"), params.gen_degree(k))];
    let entries = polys(s, "coproduct", json!({"k": k, "D": d, "route": route_name}), expected, || {
        Ok(vec![coproduct_t(&params, k, d, route)?])
    })?;
    Ok(render_polys(&params, json!({"D": d}), &entries))
}

pub fn witt_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let m = Settings::positive("m", s.m, 2)?;
    let field = KField::new(params);
    let (name, which) = match (&s.seq, s.classical) {
        (Some(_), Some(_)) => bail!("give either --seq or --classical, not both"),
        (Some(text), None) => {
            let seq: Seq = text.parse().context("parsing --seq")?;
            (format!("w{seq}"), Ok(seq))
        }
        (None, Some(j)) => (format!("w_{j}"), Err(j)),
        (None, None) => bail!("--seq or --classical is required"),
    };
    let config = match &which {
        Ok(seq) => json!({"m": m, "seq": seq.to_string()}),
        Err(j) => json!({"m": m, "classical": j}),
    };
    let entries = polys(s, "witt", config, vec![(name, 0)], || {
        let vars = witt_variables(m, 0).into_iter().map(|v| Poly::var(&field, v)).collect();
        let mut ev = WittEvaluator::new(&field, vars);
        Ok(vec![match &which {
            Ok(seq) => ev.w(seq)?,
            Err(j) => ev.classical(*j)?,
        }])
    })?;
    let mut out = render_polys(&params, json!({"m": m}), &entries);
    let integral = entries[0].poly.is_integral();
    out.text.push_str(&format!("integral: {integral}\n"));
    out.json["integral"] = json!(integral);
    out.ok = integral;
    Ok(out)
}

fn report_outcome(header: Value, report: Report) -> Outcome {
    let ok = report.all_passed();
    let failed = report.failures().count();
    let mut text = report.to_text();
    text.push_str(&format!("{}: {} checks, {failed} failed\n", if ok { "PASS" } else { "FAIL" }, report.checks.len()));
    let mut json = header;
    json["checks"] = report.to_json();
    json["pass"] = json!(ok);
    Outcome { text, json, ok }
}

pub fn invariance_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let h = Settings::positive("h", s.h, 1)?;
    let kmax = Settings::positive("kmax", s.kmax, h)?;
    let conv = s.convention();
    let report = verify_invariance(&params, h, kmax, conv)?;
    Ok(report_outcome(json!({"ring": ring_json(&params), "h": h, "kmax": kmax, "convention": conv.name()}), report))
}

pub fn stabilizer_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let h = Settings::positive("h", s.h, 1)?;
    let kmax = Settings::positive("kmax", s.kmax, h + 2)?;
    let (presentation, mut report) = stab_presentation(&params, h, kmax)?;
    report.extend(stab_coassoc_check(&params, h, kmax - h)?);
    let mut out = report_outcome(json!({"presentation": presentation.to_json()}), report);
    let mut text = format!("generators: {}\n", presentation.generators.join(", "));
    for r in &presentation.relations {
        text.push_str(&format!("relation: {r}\n"));
    }
    let fp = PrimeField::new(params);
    for (name, terms) in &presentation.coproducts {
        text.push_str(&format!("Delta({name}) = {}\n", poly_from_json(&fp, terms)?));
    }
    out.text = text + &out.text;
    Ok(out)
}

/// Highest generator index whose degree fits under `d`.
fn top_level(params: &RingParams, d: u64) -> u32 {
    (1..).take_while(|&k| params.gen_degree(k) <= d).last().unwrap_or(0)
}

type Suite = (&'static str, Box<dyn Fn() -> fmodule::Result<Report> + Send + Sync>);

fn suites(params: RingParams, d: u64) -> Vec<Suite> {
    let top = top_level(&params, d);
    vec![
        (
            "right unit: exact first generator and two routes",
            Box::new(move || {
                let k = KField::new(params);
                let t1 = KPoly::var(&k, fmodule::gpoly::Var::t(1, 0));
                let mut r = Report::new();
                let want = &KPoly::var(&k, Convention::Araki.var(1)) + &t1.scale(&k.pi_a(1));
                r.push(Check::equal("eta_R(v1)", json!({}), &eta_r_v(&params, 1, Convention::Araki)?, &want));
                let want = &KPoly::var(&k, Convention::Hazewinkel.var(1)) + &t1.scale(&k.pi());
                r.push(Check::equal("eta_R(V1)", json!({}), &eta_r_v(&params, 1, Convention::Hazewinkel)?, &want));
                let (a, c) = (araki_logs(&params, top + 1), closed_form_logs(&params, top + 1));
                for h in 1..=(top as usize + 1) {
                    r.push(Check::equal("logs: recursion vs closed form", json!({"h": h}), a.get(h), c.get(h)));
                }
                for h in 1..=top {
                    let x = eta_r_v(&params, h, Convention::Araki)?;
                    r.push(Check::equal("eta_R: triangular vs closed", json!({"h": h}), &x, &eta_r_closed(&params, h)?));
                    let x = coproduct_t(&params, h, params.gen_degree(h), CoproductRoute::Witt)?;
                    let y = coproduct_t(&params, h, params.gen_degree(h), CoproductRoute::Logmatch)?;
                    r.push(Check::equal("coproduct: witt vs logmatch", json!({"k": h}), &x, &y));
                }
                Ok(r)
            }),
        ),
        (
            "integrality",
            Box::new(move || {
                let mut r = Report::new();
                for k in 1..=top {
                    for conv in [Convention::Araki, Convention::Hazewinkel] {
                        let x = eta_r_v(&params, k, conv)?;
                        let name = format!("eta_R({}) integral", conv.var(k));
                        r.push(Check::new(name, json!({}), x.is_integral(), x.non_integral_term()));
                    }
                    let x = coproduct_t(&params, k, params.gen_degree(k), CoproductRoute::Witt)?;
                    r.push(Check::new(format!("Delta(t{k}) integral"), json!({}), x.is_integral(), x.non_integral_term()));
                }
                Ok(r)
            }),
        ),
        (
            "witt",
            Box::new(move || {
                let field = KField::new(params);
                let vars = witt_variables(2, 0).into_iter().map(|v| Poly::var(&field, v)).collect();
                let mut ev = WittEvaluator::new(&field, vars);
                let mut r = Report::new();
                for seq in Seq::up_to(top.min(3)) {
                    let at = json!({"I": seq.to_string(), "m": 2});
                    let w = ev.w(&seq)?;
                    r.push(Check::new("w_I integral", at.clone(), w.is_integral(), w.non_integral_term()));
                    let (lhs, rhs) = defining_identity_sides(&mut ev, &seq)?;
                    r.push(Check::equal("defining identity", at.clone(), &lhs, &rhs));
                    let (lhs, rhs) = congruence_sides(&mut ev, &seq)?;
                    r.push(Check::equal("mod-pi congruence", at, &lhs, &rhs));
                }
                Ok(r)
            }),
        ),
        ("hopf axioms", Box::new(move || hopf_axiom_suite(&params, d))),
        (
            "invariance",
            Box::new(move || {
                let mut r = Report::new();
                for h in 1..=top {
                    for conv in [Convention::Araki, Convention::Hazewinkel] {
                        r.extend(verify_invariance(&params, h, top, conv)?);
                    }
                }
                Ok(r)
            }),
        ),
        ("conjugation", Box::new(move || conjugation_identity(&params, d))),
        (
            "stabilizer",
            Box::new(move || {
                let mut r = Report::new();
                if top >= 2 {
                    r.extend(stab_presentation(&params, 1, top + 1)?.1);
                    r.extend(stab_coassoc_check(&params, 1, top)?);
                    r.extend(frobenius_check(&params, 1, 2, 2)?);
                    for k in 1..=top {
                        r.push(reduction_consistency(&params, 1, k)?);
                    }
                }
                Ok(r)
            }),
        ),
        (
            "thickening",
            Box::new(move || {
                let mut r = Report::new();
                for h in 1..=2 {
                    r.extend(thickening_check(&params, h, top.max(1))?);
                }
                Ok(r)
            }),
        ),
    ]
}

pub fn verify_all_cmd(s: &Settings) -> anyhow::Result<Outcome> {
    let params = s.ring()?;
    let d = s.d.unwrap_or_else(|| params.gen_degree(3));
    if top_level(&params, d) == 0 {
        bail!("--D {d} is below the degree of the first generator ({})", params.gen_degree(1));
    }
    let results: Vec<(&str, fmodule::Result<Report>)> =
        suites(params, d).into_par_iter().map(|(name, run)| (name, run())).collect();
    let mut text = String::new();
    let mut items = Vec::new();
    let mut ok = true;
    let mut total = 0;
    for (name, result) in results {
        let report = match result {
            Ok(r) => r,
            Err(e) => Report::from_iter([Check::fail(name, json!({}), e.to_string())]),
        };
        let pass = report.all_passed();
        ok &= pass;
        total += report.checks.len();
        text.push_str(&format!("== {name}: {} ({} checks)\n", if pass { "PASS" } else { "FAIL" }, report.checks.len()));
        for c in report.failures() {
            text.push_str(&format!("  FAIL {} {}: {}\n", c.check, c.params, c.witness.as_deref().unwrap_or("")));
        }
        items.push(json!({"suite": name, "pass": pass, "checks": report.to_json()}));
    }
    text.push_str(&format!("verify-all: {} ({total} checks)\n", if ok { "PASS" } else { "FAIL" }));
    let json = json!({"ring": ring_json(&params), "D": d, "pass": ok, "suites": items});
    Ok(Outcome { text, json, ok })
}
