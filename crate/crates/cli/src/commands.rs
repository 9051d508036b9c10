//! One function per subcommand. Each returns the JSON document together with
//! its text and CSV renderings; printing happens in the caller.

use std::collections::BTreeMap;

use divint::antichain::{self, IntersectingAntichain};
use divint::conformance::{self, Fault};
use divint::extremal::{self, Regime};
use divint::matching;
use divint::openprob::{self, Maximality, Mode, OpenProblemResult, TableRow};
use divint::oracle::{self, Method};
use divint::{Divisor, DivisorFamily, Error, Mask, Signature};
use serde_json::{json, Value};

use crate::cache;
use crate::config::{
    AntichainArgs, Command, ExtremalArgs, MatchingArgs, MaximalityArg, MethodArg, ModeArg,
    OpenprobArgs, OracleArgs, RunConfig, SigArgs, VerifyArgs,
};
use crate::error::{CliError, CliResult};
use crate::input::parse_family;
use crate::report::ReportDocument;

/// Largest ground set accepted by `matching --k`.
pub const MAX_UPSET_GROUND: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub doc: ReportDocument,
    pub text: String,
    pub table: Table,
    /// Printed to stderr, never part of the document.
    pub notices: Vec<String>,
    /// Failed claim checks; any makes the process exit with code 4.
    pub failed: usize,
}

pub fn execute(command: &Command, cfg: &RunConfig) -> CliResult<Outcome> {
    match command {
        Command::Bound(a) => bound(a),
        Command::Extremal(a) => extremal(a, cfg),
        Command::Count(a) => count(a, cfg),
        Command::Antichains(a) => antichains(a, cfg),
        Command::Oracle(a) => oracle(a, cfg),
        Command::Matching(a) => matching(a, cfg),
        Command::Openprob(a) => openprob(a, cfg),
        Command::Verify(a) => verify(a, cfg),
    }
}

fn signature_json(sig: &Signature) -> Value {
    json!({
        "exponents": sig.alphas(),
        "labels": sig.labels(),
        "u": sig.u(),
        "divisor_count": sig.divisor_count(),
        "regime": Regime::of(sig).tag(),
    })
}

fn members(sig: &Signature, f: &DivisorFamily) -> Vec<String> {
    f.iter().map(|d| sig.show(d)).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn show_mask(sig: &Signature, m: Mask) -> String {
    sig.show(&Divisor::squarefree(sig.n(), m))
}

/// Ground-set members written 1-based.
fn show_set(m: Mask) -> String {
    let items: Vec<String> = m.indices().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn reorder_notice(sig: &Signature) -> Vec<String> {
    if sig.was_reordered() {
        vec![format!("note: exponents reordered to {sig}")]
    } else {
        Vec::new()
    }
}

fn outcome(doc: ReportDocument, text: String, table: Table, notices: Vec<String>) -> Outcome {
    Outcome {
        doc,
        text,
        table,
        notices,
        failed: 0,
    }
}

fn bound(a: &SigArgs) -> CliResult<Outcome> {
    let sig = a.resolve()?;
    let b = sig.min_size_bound()?;
    let doc = ReportDocument::new(
        "bound",
        a.params(),
        json!({ "signature": signature_json(&sig), "min_size": b }),
    );
    let table = Table {
        header: vec!["signature", "min_size"],
        rows: vec![vec![sig.to_string(), b.to_string()]],
    };
    Ok(outcome(doc, format!("{b}\n"), table, reorder_notice(&sig)))
}

fn count(a: &SigArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let sig = a.resolve()?;
    let h = extremal::count_h(&sig, &cfg.limits)?;
    let doc = ReportDocument::new(
        "count",
        a.params(),
        json!({ "signature": signature_json(&sig), "h_count": h }),
    );
    let table = Table {
        header: vec!["signature", "h_count"],
        rows: vec![vec![sig.to_string(), h.to_string()]],
    };
    Ok(outcome(doc, format!("{h}\n"), table, reorder_notice(&sig)))
}

fn extremal(a: &ExtremalArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let sig = a.input.resolve()?;
    let limits = &cfg.limits;
    let r = extremal::extremal_families(&sig, limits)?;
    let mut text = format!(
        "N ~ {sig}, {} regime, u = {}\nmin size {}, {} extremal N-sets\n",
        r.regime.tag(),
        sig.u(),
        r.min_size,
        r.h_count
    );
    let mut generators = Vec::new();
    let mut table = Table {
        header: vec!["index", "generator", "closure_size"],
        rows: Vec::new(),
    };
    for (i, g) in r.generators.iter().enumerate() {
        let closure = g.upward_closure(&sig, limits)?;
        if closure.len() as u64 != r.min_size {
            return Err(Error::TheoremViolation(format!(
                "closure of {} has {} members, expected {}",
                braces(&members(&sig, g)),
                closure.len(),
                r.min_size
            ))
            .into());
        }
        let gm = members(&sig, g);
        text += &format!(
            "T{} = {}  closure size {}\n",
            i + 1,
            braces(&gm),
            closure.len()
        );
        let mut entry = json!({ "generator": gm.clone(), "closure_size": closure.len() });
        if a.list {
            let cm = members(&sig, &closure);
            text += &format!("    {}\n", braces(&cm));
            entry["closure"] = json!(cm);
        }
        generators.push(entry);
        table.rows.push(vec![
            (i + 1).to_string(),
            braces(&gm),
            closure.len().to_string(),
        ]);
    }
    let mut result = json!({
        "signature": signature_json(&sig),
        "regime": r.regime.tag(),
        "min_size": r.min_size,
        "h_count": r.h_count,
        "generators": generators,
    });
    let mut params = a.input.params();
    if let Some(listed) = &a.classify {
        params["classify"] = json!(listed);
        let f = parse_family(&sig, listed)?;
        let v = extremal::classify_with(&f, &sig, &r.generators, limits)?;
        let tags = v.matched.tags();
        text += &format!(
            "family {}: {}, {}, characterizations [{}]\n",
            braces(&members(&sig, &f)),
            if v.is_maximal {
                "maximal"
            } else {
                "not maximal"
            },
            if v.is_extremal {
                "extremal"
            } else {
                "not extremal"
            },
            tags.join(" ")
        );
        if let Some(w) = &v.failure_witness {
            text += &format!("    {w}\n");
        }
        result["classification"] = json!({
            "family": members(&sig, &f),
            "is_maximal": v.is_maximal,
            "is_extremal": v.is_extremal,
            "characterizations": tags,
            "failure_witness": v.failure_witness,
        });
    }
    let doc = ReportDocument::new("extremal", params, result);
    Ok(outcome(doc, text, table, reorder_notice(&sig)))
}

/// The antichain list for `k`, from the cache when one is configured and valid.
/// A cached list is only trusted if its length matches a fresh count.
pub fn cached_antichains(
    k: usize,
    cfg: &RunConfig,
    notices: &mut Vec<String>,
) -> CliResult<Vec<IntersectingAntichain>> {
    if let Some(dir) = &cfg.cache_dir {
        let loaded = cache::load(dir, k).and_then(|list| {
            let expected = antichain::count_families(k, &cfg.limits).map_err(|e| e.to_string())?;
            if list.len() as u64 == expected {
                Ok(list)
            } else {
                Err(format!(
                    "holds {} antichains, expected {expected}",
                    list.len()
                ))
            }
        });
        match loaded {
            Ok(list) => return Ok(list),
            Err(reason) if cache::path_for(dir, k).exists() => {
                notices.push(format!("note: ignoring cache entry for k = {k} ({reason})"))
            }
            Err(_) => {}
        }
    }
    let list = antichain::enumerate_antichains(k, &cfg.limits)?;
    if let Some(dir) = &cfg.cache_dir {
        if let Err(e) = cache::store(dir, k, &list) {
            notices.push(format!("warning: cache not written: {e}"));
        }
    }
    Ok(list)
}

fn antichains(a: &AntichainArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let mut notices = Vec::new();
    let list = cached_antichains(a.k, cfg, &mut notices)?;
    let mut text = format!("{}\n", list.len());
    let mut result = json!({ "k": a.k, "count": list.len() });
    let mut table = Table {
        header: vec!["k", "count"],
        rows: vec![vec![a.k.to_string(), list.len().to_string()]],
    };
    if a.list {
        let masks: Vec<Vec<u32>> = list
            .iter()
            .map(|t| t.sets().iter().map(|m| m.0).collect())
            .collect();
        result["antichains"] = json!(masks);
        table = Table {
            header: vec!["index", "antichain"],
            rows: Vec::new(),
        };
        for (i, t) in list.iter().enumerate() {
            let sets: Vec<String> = t.sets().into_iter().map(show_set).collect();
            text += &format!("{}\n", sets.join(" "));
            table.rows.push(vec![(i + 1).to_string(), sets.join(" ")]);
        }
    }
    let doc = ReportDocument::new("antichains", json!({ "k": a.k, "list": a.list }), result);
    Ok(outcome(doc, text, table, notices))
}

fn oracle(a: &OracleArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let sig = a.input.resolve()?;
    let method = match a.method {
        MethodArg::RadicalLift => Method::RadicalLift,
        MethodArg::DirectClique => Method::DirectClique,
    };
    let r = oracle::enumerate_maximal_nsets(&sig, method, &cfg.limits)?;
    let bound = sig.min_size_bound()?;
    if r.min_size != bound {
        return Err(Error::TheoremViolation(format!(
            "least maximal N-set for {sig} has {} members, bound is {bound}",
            r.min_size
        ))
        .into());
    }
    let sizes: BTreeMap<String, u64> = r.sizes.iter().map(|(s, c)| (s.to_string(), *c)).collect();
    let mut text = format!(
        "min_size {}\nmin_count {}\ntotal_maximal {}\nsizes {}\n",
        r.min_size,
        r.min_count,
        r.total_maximal,
        r.sizes
            .iter()
            .map(|(s, c)| format!("{s}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let mut result = json!({
        "signature": signature_json(&sig),
        "method": method.tag(),
        "bound": bound,
        "min_size": r.min_size,
        "min_count": r.min_count,
        "total_maximal": r.total_maximal,
        "sizes": sizes,
    });
    let mut table = Table {
        header: vec!["size", "count"],
        rows: r
            .sizes
            .iter()
            .map(|(s, c)| vec![s.to_string(), c.to_string()])
            .collect(),
    };
    let mut notices = reorder_notice(&sig);
    if a.list {
        match &r.families {
            Some(fams) => {
                let listed: Vec<Vec<String>> = fams.iter().map(|f| members(&sig, f)).collect();
                table = Table {
                    header: vec!["index", "size", "members"],
                    rows: Vec::new(),
                };
                for (i, m) in listed.iter().enumerate() {
                    text += &format!("{:>4} {}\n", m.len(), braces(m));
                    table
                        .rows
                        .push(vec![(i + 1).to_string(), m.len().to_string(), m.join(" ")]);
                }
                result["families"] = json!(listed);
            }
            None => notices.push(String::from(
                "note: N-sets not listed, their total size reaches --max-materialize",
            )),
        }
    }
    let mut params = a.input.params();
    params["method"] = json!(method.tag());
    params["list"] = json!(a.list);
    Ok(outcome(
        ReportDocument::new("oracle", params, result),
        text,
        table,
        notices,
    ))
}

fn matching(a: &MatchingArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    if let Some(k) = a.k {
        return up_set_matchings(k, a.list);
    }
    let sig = a
        .input
        .resolve()?
        .ok_or_else(|| CliError::Usage("matching needs --k, --sig or --n".into()))?;
    let limits = &cfg.limits;
    let ext = extremal::extremal_families(&sig, limits)?;
    let mut text = String::new();
    let mut table = Table {
        header: vec!["family", "d", "partner", "cofactor", "weight"],
        rows: Vec::new(),
    };
    let mut families = Vec::new();
    for (i, g) in ext.generators.iter().enumerate() {
        let f = g.upward_closure(&sig, limits)?;
        let p = matching::cofactor_pairing(&f, &sig, limits)?;
        if let Some(j) = p
            .cofactor_weights
            .iter()
            .position(|&w| w != sig.last_alpha() as u64)
        {
            return Err(Error::TheoremViolation(format!(
                "alpha({}) = {} in {}, expected {}",
                show_mask(&sig, p.cofactors[j]),
                p.cofactor_weights[j],
                braces(&members(&sig, &f)),
                sig.last_alpha()
            ))
            .into());
        }
        text += &format!(
            "T{}: {} pairs, every alpha(e) = {}\n",
            i + 1,
            p.members.len(),
            sig.last_alpha()
        );
        let mut pairs = Vec::new();
        for j in 0..p.members.len() {
            let (d, partner, e) = (
                show_mask(&sig, p.members[j]),
                show_mask(&sig, p.partners[j]),
                show_mask(&sig, p.cofactors[j]),
            );
            if a.list {
                text += &format!("    {d} <-> {partner}  e = {e}\n");
            }
            table.rows.push(vec![
                (i + 1).to_string(),
                d.clone(),
                partner.clone(),
                e.clone(),
                p.cofactor_weights[j].to_string(),
            ]);
            pairs.push(json!({ "d": d, "partner": partner, "cofactor": e, "weight": p.cofactor_weights[j] }));
        }
        families.push(json!({ "generator": members(&sig, g), "sigma": p.sigma, "pairs": pairs }));
    }
    let result = json!({ "signature": signature_json(&sig), "families": families });
    let mut params = a.input.params();
    params["list"] = json!(a.list);
    Ok(outcome(
        ReportDocument::new("matching", params, result),
        text,
        table,
        reorder_notice(&sig),
    ))
}

fn up_set_matchings(k: usize, list: bool) -> CliResult<Outcome> {
    if k == 0 || k > MAX_UPSET_GROUND {
        return Err(CliError::Usage(format!(
            "--k must lie in 1..={MAX_UPSET_GROUND}"
        )));
    }
    let fams = matching::nontrivial_up_sets(k);
    let mut text = String::new();
    let mut witnesses = Vec::new();
    let mut rows = Vec::new();
    for f in &fams {
        let w = matching::complement_permutation(f)?;
        if !w.verify(f) {
            return Err(Error::TheoremViolation(format!(
                "matching {:?} fails its own certificate",
                w.sigma
            ))
            .into());
        }
        let sets: Vec<String> = f.members().iter().map(|&m| show_set(m)).collect();
        let images: Vec<String> = w.sigma.iter().map(|&j| show_set(f.members()[j])).collect();
        if list {
            text += &format!("{}  ->  {}\n", sets.join(" "), images.join(" "));
        }
        rows.push(vec![sets.join(" "), images.join(" ")]);
        let masks: Vec<u32> = f.members().iter().map(|m| m.0).collect();
        witnesses.push(json!({ "family": masks, "sigma": w.sigma }));
    }
    text += &format!("{} up-sets on {k} elements, all matched\n", fams.len());
    let mut result = json!({ "ground": k, "families": fams.len(), "certified": fams.len() });
    if list {
        result["matchings"] = json!(witnesses);
    }
    let table = Table {
        header: vec!["family", "image"],
        rows,
    };
    Ok(outcome(
        ReportDocument::new("matching", json!({ "k": k, "list": list }), result),
        text,
        table,
        Vec::new(),
    ))
}

fn cell_json(row: &TableRow, list: bool) -> Value {
    let mut v = json!({
        "signature": row.signature,
        "mode": row.mode.tag(),
        "t": row.t,
        "maximality": row.maximality.tag(),
        "status": row.status(),
    });
    if let Ok(r) = &row.outcome {
        v["value"] = json!(r.value);
        v["attaining_count"] = json!(r.attaining_count);
        v["total_maximal"] = json!(r.total_maximal);
        v["universe_size"] = json!(r.universe_size);
        if list {
            v["witnesses"] = witnesses_json(&row.signature, r);
        }
    }
    v
}

fn witnesses_json(exps: &[u32], r: &OpenProblemResult) -> Value {
    let sig = Signature::new(exps).expect("row signature");
    match &r.witnesses {
        Some(ws) => json!(ws.iter().map(|w| members(&sig, w)).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn openprob(a: &OpenprobArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    if let Some(&t) = a.t.iter().find(|&&t| t == 0 || (t == 1 && !a.allow_t1)) {
        return Err(CliError::Usage(format!(
            "--t {t} is not allowed; t must be at least 2 (--allow-t1 admits 1)"
        )));
    }
    let single = a.input.resolve()?;
    let mut notices = single.as_ref().map(reorder_notice).unwrap_or_default();
    if a.t.contains(&1) {
        notices.push(String::from("note: t = 1 lies outside the posed problems"));
    }
    let sigs = match single {
        Some(s) => vec![s],
        None => conformance::signature_grid(a.max_n, a.max_exp),
    };
    let modes = match a.mode {
        Some(ModeArg::Omega) => vec![Mode::Omega],
        Some(ModeArg::Bigomega) => vec![Mode::BigOmega],
        None => vec![Mode::Omega, Mode::BigOmega],
    };
    let maximality = match a.maximality {
        MaximalityArg::Restricted => Maximality::Restricted,
        MaximalityArg::Global => Maximality::Global,
    };
    let rows: Vec<TableRow> = modes
        .iter()
        .flat_map(|&m| openprob::sweep_tables(&sigs, &a.t, m, maximality, a.allow_t1, &cfg.limits))
        .collect();

    let mut table = Table {
        header: vec![
            "signature",
            "mode",
            "t",
            "maximality",
            "status",
            "value",
            "attaining_count",
            "total_maximal",
            "universe_size",
        ],
        rows: Vec::new(),
    };
    let mut text = String::new();
    let mut failed = 0;
    for row in &rows {
        let sig = Signature::new(&row.signature)
            .expect("row signature")
            .to_string();
        let name = match row.mode {
            Mode::Omega => "m",
            Mode::BigOmega => "M",
        };
        match &row.outcome {
            Ok(r) => {
                text += &format!(
                    "{sig:<12} {name}(N,{}) = {:<4} attained by {}, {} maximal, universe {}\n",
                    row.t, r.value, r.attaining_count, r.total_maximal, r.universe_size
                );
                table.rows.push(vec![
                    sig,
                    row.mode.tag().into(),
                    row.t.to_string(),
                    row.maximality.tag().into(),
                    row.status(),
                    r.value.to_string(),
                    r.attaining_count.to_string(),
                    r.total_maximal.to_string(),
                    r.universe_size.to_string(),
                ]);
            }
            Err(e) => {
                if matches!(e, Error::TheoremViolation(_)) {
                    failed += 1;
                }
                text += &format!("{sig:<12} {name}(N,{}) {}\n", row.t, row.status());
                let mut cells = vec![
                    sig,
                    row.mode.tag().into(),
                    row.t.to_string(),
                    row.maximality.tag().into(),
                    row.status(),
                ];
                cells.extend(std::iter::repeat_n(String::new(), 4));
                table.rows.push(cells);
            }
        }
    }
    let errors = rows.iter().filter(|r| r.outcome.is_err()).count();
    let result = json!({
        "cells": rows.len(),
        "errors": errors,
        "rows": rows.iter().map(|r| cell_json(r, a.list)).collect::<Vec<_>>(),
    });
    let mut params = a.input.params();
    if params.as_object().is_some_and(|o| o.is_empty()) {
        params = json!({ "max_n": a.max_n, "max_exp": a.max_exp });
    }
    params["t"] = json!(a.t);
    params["modes"] = json!(modes.iter().map(|m| m.tag()).collect::<Vec<_>>());
    params["maximality"] = json!(maximality.tag());
    params["allow_t1"] = json!(a.allow_t1);
    params["list"] = json!(a.list);
    let mut out = outcome(
        ReportDocument::new("openprob", params, result),
        text,
        table,
        notices,
    );
    out.failed = failed;
    Ok(out)
}

fn verify(a: &VerifyArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    if a.max_n == 0 || a.max_exp == 0 {
        return Err(CliError::Usage(
            "--max-n and --max-exp must be positive".into(),
        ));
    }
    let fault = match &a.inject_fault {
        Some(name) => Some(
            Fault::parse(name).ok_or_else(|| CliError::Usage(format!("unknown claim {name:?}")))?,
        ),
        None => None,
    };
    let grid = conformance::signature_grid(a.max_n, a.max_exp);
    let grounds: Vec<usize> = (1..=a.max_n.min(4)).collect();
    let report = conformance::run(&grid, &grounds, &cfg.limits, fault)?;

    let mut text = String::new();
    let mut table = Table {
        header: vec!["claim", "subject", "passed", "checked", "counterexample"],
        rows: Vec::new(),
    };
    let mut claims = Vec::new();
    for r in &report.rows {
        match &r.counterexample {
            None => {
                text += &format!(
                    "ok    {:<28} {:<12} {} checked\n",
                    r.claim, r.subject, r.checked
                )
            }
            Some(c) => text += &format!("FAIL  {:<28} {:<12} {c}\n", r.claim, r.subject),
        }
        table.rows.push(vec![
            r.claim.to_string(),
            r.subject.clone(),
            r.passed.to_string(),
            r.checked.to_string(),
            r.counterexample.clone().unwrap_or_default(),
        ]);
        claims.push(json!({
            "claim": r.claim,
            "subject": r.subject,
            "passed": r.passed,
            "checked": r.checked,
            "counterexample": r.counterexample,
        }));
    }
    let failed = report.failures().count();
    text += &format!("{} rows, {failed} failed\n", report.rows.len());
    let result = json!({
        "all_passed": failed == 0,
        "failed": failed,
        "signatures": grid.len(),
        "ground_sizes": grounds,
        "claims": claims,
    });
    let mut params = json!({ "max_n": a.max_n, "max_exp": a.max_exp });
    if let Some(name) = &a.inject_fault {
        params["inject_fault"] = json!(name);
    }
    let mut out = outcome(
        ReportDocument::new("verify", params, result),
        text,
        table,
        Vec::new(),
    );
    out.failed = failed;
    Ok(out)
}
