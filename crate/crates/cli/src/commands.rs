use std::sync::Arc;

use perpcat::derived::{telescope_check, triangle_check, FormalComplex};
use perpcat::homalg::{ext_dim, ext_space, hom_dim, hom_space, ProjMap};
use perpcat::io;
use perpcat::orthopair::{
    adjunction_counts, five_term as five_term_seq, make_pair, membership_x, membership_y, second_five_term, splice, wide_closure_check,
    FiveTermSequence, OrthoPair, DEFAULT_ITERATIONS,
};
use perpcat::perpalg::{sigma_characterizes, sigma_inverts_over_b, universal_localization_data, verify_homological_epi};
use perpcat::quiverrep::{Quiver, Representation};
use perpcat::valuation::{keller_hypotheses, IdealDesc, KellerReport, Status, ValueModel, ValueVector, Witness};
use perpcat::{Error, Result};
use serde_json::{json, Value};

use crate::input;
use crate::render::{self, dims, matrix, morphism, pass, rep_dims, vector, yes, Report};
use crate::Options;

fn pair_for(o: &Options, quiver: &str, x: &str) -> Result<(Arc<Quiver>, Arc<OrthoPair>)> {
    let q = input::quiver(quiver)?;
    let x = input::module(&q, o.field, x)?;
    Ok((q, make_pair(&x)?))
}

/// Checks that fail by verdict rather than by bad input.
fn is_verdict(e: &Error) -> bool {
    matches!(crate::exit_code(e), 3 | 4)
}

pub fn hom(o: &Options, quiver: &str, m: &str, n: &str) -> Result<Report> {
    let q = input::quiver(quiver)?;
    let (m, n) = (input::module(&q, o.field, m)?, input::module(&q, o.field, n)?);
    let hs = hom_space(&m, &n)?;
    let mut text = vec![format!("Hom(M, N) with M = {}, N = {}: dimension {}", rep_dims(&m), rep_dims(&n), hs.dim())];
    text.extend(hs.basis().iter().enumerate().map(|(k, f)| format!("  basis {}: {}", k + 1, morphism(f))));
    let json = json!({
        "command": "hom",
        "dimension": hs.dim(),
        "basis": hs.basis().iter().map(io::morphism_to_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text))
}

pub fn ext(o: &Options, quiver: &str, m: &str, n: &str) -> Result<Report> {
    let q = input::quiver(quiver)?;
    let (m, n) = (input::module(&q, o.field, m)?, input::module(&q, o.field, n)?);
    let es = ext_space(&m, &n)?;
    let label = |zeta: &[perpcat::exactlin::Matrix]| -> Vec<(String, String, Value)> {
        q.arrows().iter().zip(zeta).map(|(a, z)| (a.id.clone(), matrix(z), io::matrix_to_json(z))).collect()
    };
    let mut text =
        vec![format!("Ext^1(M, N) with M = {}, N = {}: dimension {}", rep_dims(&m), rep_dims(&n), es.basis().len())];
    let mut basis = Vec::new();
    for (k, zeta) in es.basis().iter().enumerate() {
        let parts = label(zeta);
        text.push(format!(
            "  cocycle {}: {}",
            k + 1,
            parts.iter().map(|(id, t, _)| format!("{id}: {t}")).collect::<Vec<_>>().join("  ")
        ));
        basis.push(Value::Object(parts.into_iter().map(|(id, _, v)| (id, v)).collect()));
    }
    let json = json!({"command": "ext", "dimension": es.basis().len(), "basis": basis});
    Ok(Report::new(json, text))
}

const TERM_LABELS: [&str; 5] = ["Y_M", "X_M", "M", "Y^M", "X^M"];

pub fn five_term(o: &Options, quiver: &str, x: &str, m: &str) -> Result<Report> {
    let (q, pair) = pair_for(o, quiver, x)?;
    let m = input::module(&q, o.field, m)?;
    let eps = five_term_seq(&pair, &m)?;
    let sp = splice(&pair, &eps)?;
    let mut text = vec![
        format!("generator X = {}", rep_dims(pair.generator())),
        "0 -> Y_M -> X_M -> M -> Y^M -> X^M -> 0".to_string(),
    ];
    for (label, d) in TERM_LABELS.iter().zip(eps.dims()) {
        text.push(format!("  {label:<4} {}", dims(&d)));
    }
    text.push(format!("route A = route B: {}", yes(eps.routes_compared)));
    text.push(format!(
        "splice: M' = {}, M'' = {}, cover in X: {}, target in Y: {}, reassembles: {}, trace exhausts M': {}",
        rep_dims(&sp.m_prime),
        rep_dims(&sp.m_double_prime),
        yes(sp.cover_in_x),
        yes(sp.target_in_y),
        yes(sp.reassembles),
        yes(sp.trace_exhausts),
    ));
    let mut json = io::five_term_to_json(&eps);
    json["routesAgree"] = json!(eps.routes_compared);
    json["splice"] = json!({
        "Mprime": io::rep_to_json(&sp.m_prime),
        "Mdoubleprime": io::rep_to_json(&sp.m_double_prime),
        "coverInX": sp.cover_in_x,
        "targetInY": sp.target_in_y,
        "reassembles": sp.reassembles,
        "traceExhausts": sp.trace_exhausts,
    });
    let mut report = Report::new(json, text);
    if !(sp.cover_in_x && sp.target_in_y && sp.reassembles) {
        report.failure = Some("splice".into());
    }
    Ok(report)
}

fn sigma_lines(q: &Quiver, sigma: &[ProjMap]) -> Vec<String> {
    let sum = |vs: &[usize]| {
        if vs.is_empty() {
            "0".to_string()
        } else {
            vs.iter().map(|v| format!("P({})", v + 1)).collect::<Vec<_>>().join(" + ")
        }
    };
    let mut out = Vec::new();
    for (k, s) in sigma.iter().enumerate() {
        out.push(format!("  sigma {}: {} -> {}", k + 1, sum(&s.source), sum(&s.target)));
        for t in &s.terms {
            out.push(format!(
                "    ({}, {}): {} {}",
                t.row + 1,
                t.col + 1,
                t.coeff,
                q.path_label(s.target[t.row], &t.path)
            ));
        }
    }
    out
}

pub fn perp(o: &Options, quiver: &str, x: &str) -> Result<Report> {
    let (q, pair) = pair_for(o, quiver, x)?;
    let pa = pair.perp_algebra()?;
    let relations = pa.check_relations()?;
    let epi = verify_homological_epi(pa)?;
    let data = universal_localization_data(&pair)?;
    let inverted = match sigma_inverts_over_b(pa, &data) {
        Ok(b) => b,
        Err(e) if is_verdict(&e) => false,
        Err(e) => return Err(e),
    };
    let structure = pa.structure_constants();
    let entries = structure.iter().flatten().flatten().count();
    let nonzero = structure.iter().flatten().flatten().filter(|c| !c.is_zero()).count();
    let mut json = io::perp_algebra_to_json(pa);
    let digest = render::digest(&json["structure"].to_string());

    let mut text = vec![
        format!("generator X = {}", rep_dims(pair.generator())),
        format!("dim B = {}", pa.dim()),
        format!("structure constants: {entries} entries, {nonzero} nonzero, digest {digest}"),
        format!("L = {}", rep_dims(&pa.l().sum)),
    ];
    let (fv, fa) = pa.f_images();
    for (i, e) in fv.iter().enumerate() {
        text.push(format!("f(e_{}) = {}", i + 1, vector(e)));
    }
    for (a, x) in q.arrows().iter().zip(fa) {
        text.push(format!("f({}) = {}", a.id, vector(x)));
    }
    text.push(format!("sigma: {} map(s)", data.sigma.len()));
    text.extend(sigma_lines(&q, &data.sigma));
    let checks = [
        ("algebra relations", relations.holds()),
        ("homological epimorphism", epi.holds()),
        ("sigma inverted over B", inverted),
    ];
    text.push("checks:".into());
    for (name, ok) in checks {
        text.push(format!("  {name:<24} {}", pass(ok)));
    }
    json["structureDigest"] = json!(digest);
    json["sigma"] = io::localization_to_json(&q, &data);
    json["checks"] = json!({
        "algebraRelations": relations.holds(),
        "homologicalEpi": {
            "passed": epi.holds(),
            "dimB": epi.dim_b,
            "tor1": epi.tor_dim,
            "tensor": epi.tensor_dim,
            "multiplicationIso": epi.multiplication_iso,
        },
        "sigmaInverted": inverted,
    });
    let mut report = Report::new(json, text);
    report.failure = checks.iter().find(|(_, ok)| !ok).map(|(name, _)| name.to_string());
    Ok(report)
}

pub fn sigma(o: &Options, quiver: &str, x: &str, probes: &str) -> Result<Report> {
    let (q, pair) = pair_for(o, quiver, x)?;
    let probes = input::probes(&q, o.field, probes)?;
    let data = universal_localization_data(&pair)?;
    let mut text = vec![format!("generator X = {}", rep_dims(pair.generator()))];
    text.extend(sigma_lines(&q, &data.sigma));
    text.push("probe          Hom(sigma, M) invertible   in perpendicular category".into());
    let mut rows = Vec::new();
    let mut failure = None;
    for (k, m) in probes.iter().enumerate() {
        let member = membership_y(&pair, m)?;
        let (inverted, agrees) = match sigma_characterizes(&pair, &data, m) {
            Ok(b) => (b, true),
            Err(e) if is_verdict(&e) => {
                failure.get_or_insert_with(|| format!("sigma characterization on probe {}", k + 1));
                (!member, false)
            }
            Err(e) => return Err(e),
        };
        text.push(format!("  {:<12} {:<26} {}", rep_dims(m), yes(inverted), yes(member)));
        rows.push(json!({"dims": m.dims(), "inverted": inverted, "member": member, "agrees": agrees}));
    }
    let json = json!({"sigma": io::localization_to_json(&q, &data), "probes": rows});
    let mut report = Report::new(json, text);
    report.failure = failure;
    Ok(report)
}

struct Row {
    name: &'static str,
    cells: Vec<bool>,
    notes: Vec<String>,
}

impl Row {
    fn new(name: &'static str) -> Row {
        Row { name, cells: Vec::new(), notes: Vec::new() }
    }

    /// Records one cell; verdict errors count as failures with a note.
    fn push(&mut self, outcome: Result<bool>) -> Result<()> {
        match outcome {
            Ok(b) => self.cells.push(b),
            Err(e) if is_verdict(&e) => {
                self.notes.push(format!("probe {}: {e}", self.cells.len() + 1));
                self.cells.push(false);
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn passed(&self) -> bool {
        self.cells.iter().all(|&b| b)
    }
}

fn euler_holds(m: &Representation, probes: &[Representation]) -> Result<bool> {
    let q = m.quiver();
    for n in probes {
        let lhs = hom_dim(m, n)? as i64 - ext_dim(m, n)? as i64;
        if lhs != q.euler_form(m.dims(), n.dims())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn in_classes(pair: &OrthoPair, e: &FiveTermSequence) -> Result<bool> {
    Ok(membership_y(pair, &e.y_lower)?
        && membership_y(pair, &e.y_upper)?
        && membership_x(pair, &e.x_lower)?
        && membership_x(pair, &e.x_upper)?)
}

pub fn verify(o: &Options, quiver: &str, x: &str, probes: &str) -> Result<Report> {
    let (q, pair) = pair_for(o, quiver, x)?;
    let probes = input::probes(&q, o.field, probes)?;
    for p in &probes {
        pair.check_same_category(p)?;
    }
    let xs: Vec<_> = probes.iter().filter(|p| membership_x(&pair, p).unwrap_or(false)).cloned().collect();
    let ys: Vec<_> = probes.iter().filter(|p| membership_y(&pair, p).unwrap_or(false)).cloned().collect();
    let data = universal_localization_data(&pair)?;

    let mut euler = Row::new("euler_identity");
    let mut five = Row::new("five_term");
    let mut adj = Row::new("adjunction");
    let mut spl = Row::new("splice");
    let mut second = Row::new("second_pair");
    let mut sig = Row::new("sigma");
    let mut tri = Row::new("triangle");
    for m in &probes {
        euler.push(euler_holds(m, &probes))?;
        let eps = match five_term_seq(&pair, m) {
            Ok(e) => Some(e),
            Err(e) if is_verdict(&e) => {
                five.push(Err(e))?;
                None
            }
            Err(e) => return Err(e),
        };
        match &eps {
            Some(e) => {
                five.push(in_classes(&pair, e))?;
                adj.push(adjunction_counts(&pair, e, &xs, &ys).map(|r| r.holds()))?;
                spl.push(splice(&pair, e).map(|s| s.cover_in_x && s.target_in_y && s.reassembles))?;
            }
            None => {
                adj.push(Ok(false))?;
                spl.push(Ok(false))?;
            }
        }
        second.push(second_five_term(&pair, m).map(|_| true))?;
        sig.push(sigma_characterizes(&pair, &data, m).map(|_| true))?;
        tri.push(triangle_check(&pair, m).map(|r| r.holds()))?;
    }

    let mut tel = Row::new("telescope");
    let complexes: Vec<FormalComplex> = probes
        .iter()
        .flat_map(|m| {
            let c = FormalComplex::concentrated(m, 0);
            [c.shift(1), c]
        })
        .collect();
    match telescope_check(&pair, &complexes) {
        Ok(r) => {
            for k in 0..probes.len() {
                let ok = (2 * k..2 * k + 2).all(|j| {
                    r.verdicts[j].trichotomy()
                        && r.verdicts[j].idempotent
                        && r.sums_distribute.get(j).copied().unwrap_or(true)
                });
                tel.push(Ok(ok && r.generator_in_kernel))?;
            }
        }
        Err(e) if is_verdict(&e) => {
            tel.notes.push(e.to_string());
            tel.cells = vec![false; probes.len()];
        }
        Err(e) => return Err(e),
    }

    let mut closure = Row::new("wide_closure");
    match wide_closure_check(pair.generator(), &probes, o.cap as usize, DEFAULT_ITERATIONS) {
        Ok(r) => {
            for v in &r.verdicts {
                closure.push(Ok(v.agrees()))?;
            }
            if !r.saturated {
                closure.notes.push(format!("closure not saturated under cap {}", r.cap));
            }
        }
        Err(e) => closure.push(Err(e))?,
    }

    let rows = [euler, five, adj, spl, second, sig, tri, tel, closure];
    let mut text = vec![
        format!("generator X = {}, {} probes", rep_dims(pair.generator()), probes.len()),
        format!("probes: {}", probes.iter().map(rep_dims).collect::<Vec<_>>().join(" ")),
        format!("{:<16} {:<6} per probe", "invariant", "result"),
    ];
    for r in &rows {
        let marks: String = r.cells.iter().map(|&b| if b { '+' } else { '-' }).collect();
        text.push(format!("{:<16} {:<6} {marks}", r.name, pass(r.passed())));
        text.extend(r.notes.iter().map(|n| format!("    {n}")));
    }
    let passed = rows.iter().all(Row::passed);
    text.push(format!("suite: {}", pass(passed)));
    let json = json!({
        "generator": pair.generator().dims(),
        "probes": probes.iter().map(|p| p.dims().to_vec()).collect::<Vec<_>>(),
        "invariants": rows.iter().map(|r| json!({
            "name": r.name,
            "passed": r.passed(),
            "cells": r.cells,
            "notes": r.notes,
        })).collect::<Vec<_>>(),
        "passed": passed,
    });
    let mut report = Report::new(json, text);
    report.failure = rows.iter().find(|r| !r.passed()).map(|r| r.name.to_string());
    Ok(report)
}

fn complex_dims(c: &FormalComplex) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.dims().iter().map(|(n, d)| format!("{n}:{}", dims(d))).collect::<Vec<_>>().join(" ")
}

pub fn telescope(o: &Options, quiver: &str, x: &str, probes: &str) -> Result<Report> {
    let (q, pair) = pair_for(o, quiver, x)?;
    let base = input::complex_probes(&q, o.field, probes)?;
    let complexes: Vec<FormalComplex> = base.iter().flat_map(|c| [c.clone(), c.shift(1), c.shift(-1)]).collect();
    let (report, failure) = match telescope_check(&pair, &complexes) {
        Ok(r) => (r, None),
        Err(e) if is_verdict(&e) => return Ok(Report { json: json!({"passed": false}), text: vec![e.to_string()], failure: Some(e.to_string()) }),
        Err(e) => return Err(e),
    };
    let mut text = vec![
        format!("generator X = {}, {} complexes", rep_dims(pair.generator()), complexes.len()),
        format!("generator presentation in kernel: {}", yes(report.generator_in_kernel)),
        format!("{:<24} {:<6} {:<6} {:<6} {:<6} {}", "complex", "LC=0", "in X", "killed", "LL=L", "sum"),
    ];
    let mut rows = Vec::new();
    for (k, (c, v)) in complexes.iter().zip(&report.verdicts).enumerate() {
        let sum = report.sums_distribute.get(k).copied().unwrap_or(true);
        text.push(format!(
            "{:<24} {:<6} {:<6} {:<6} {:<6} {}",
            complex_dims(c),
            yes(v.localizes_to_zero),
            yes(v.cohomology_in_x),
            yes(v.reflection_kills),
            yes(v.idempotent),
            yes(sum)
        ));
        rows.push(json!({
            "complex": io::formal_complex_to_json(c),
            "localizesToZero": v.localizes_to_zero,
            "cohomologyInX": v.cohomology_in_x,
            "reflectionKills": v.reflection_kills,
            "idempotent": v.idempotent,
            "sumDistributes": sum,
        }));
    }
    text.push(format!("telescope: {}", pass(report.holds())));
    let json = json!({"generatorInKernel": report.generator_in_kernel, "complexes": rows, "passed": report.holds()});
    let mut out = Report::new(json, text);
    out.failure = failure.or_else(|| (!report.holds()).then(|| "telescope".to_string()));
    Ok(out)
}

pub fn parse_model(s: &str) -> std::result::Result<ValueModel, String> {
    if s == "countable" {
        return Ok(ValueModel::Countable);
    }
    s.strip_prefix('z')
        .and_then(|r| r.parse::<u32>().ok())
        .filter(|&r| r >= 1)
        .map(|r| ValueModel::Rank { r })
        .ok_or_else(|| format!("expected countable or zR with R >= 1, got {s:?}"))
}

fn model_name(m: ValueModel) -> String {
    match m {
        ValueModel::Countable => "Z^(N)".into(),
        ValueModel::Rank { r } => format!("Z^{r}"),
    }
}

fn default_value_probes() -> Vec<ValueVector> {
    let mut probes: Vec<_> = (1..=10).map(ValueVector::unit).collect();
    probes.extend([
        ValueVector::from_pairs([(1, 1), (2, -3)]),
        ValueVector::from_pairs([(2, 2), (5, -1)]),
        ValueVector::from_pairs([(3, 1), (4, 7), (9, -2)]),
        ValueVector::from_pairs([(1, 2)]),
    ]);
    probes
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Generator { generator } => format!(">= {generator}"),
        Witness::Sum { a, b, .. } => format!(">= ({a}) + ({b})"),
    }
}

fn failed_hypotheses(r: &KellerReport) -> Vec<&str> {
    r.hypotheses
        .iter()
        .filter(|h| matches!(h.status, Status::MachineChecked { passed: false }))
        .map(|h| h.name.as_str())
        .collect()
}

pub fn valuation(model: ValueModel, probes: Option<&str>) -> Result<Report> {
    let probes = match probes {
        Some(path) => input::value_probes(path)?,
        None => default_value_probes(),
    };
    let ideal = IdealDesc::CanonicalFamily;
    let primary = keller_hypotheses(model, &ideal, &probes)?;
    let contrast_models: Vec<_> = [ValueModel::Countable, ValueModel::Rank { r: 1 }, ValueModel::Rank { r: 2 }]
        .into_iter()
        .filter(|&m| m != model)
        .collect();
    let contrasts =
        contrast_models.iter().map(|&m| keller_hypotheses(m, &ideal, &probes)).collect::<Result<Vec<_>>>()?;

    let mut text = vec![format!("model {}, ideal P = (e1, e2, e3, ...) read in the model", model_name(model))];
    text.push("machine-checked:".into());
    for h in &primary.hypotheses {
        if let Status::MachineChecked { passed } = h.status {
            text.push(format!("  {:<32} {}", h.name, pass(passed)));
        }
    }
    text.push("theory-cited:".into());
    for h in &primary.hypotheses {
        if let Status::TheoryCited { reason } = &h.status {
            text.push(format!("  {:<32} {reason}", h.name));
        }
    }
    let lp = &primary.least_positive;
    text.push(match &lp.witness {
        Some(w) => format!("least positive value: {w}"),
        None => format!(
            "least positive value: none; descending chain {} ({})",
            lp.descending_chain.iter().map(ToString::to_string).collect::<Vec<_>>().join(" > "),
            if lp.chain_verified { "verified" } else { "not verified" }
        ),
    });
    text.push("P = P^2 witnesses:".into());
    for (v, w) in &primary.idempotence.witnesses {
        text.push(format!("  {:<16} {}", v.to_string(), w.as_ref().map_or("none".to_string(), witness_text)));
    }
    text.push(format!("hypotheses: {}", if primary.satisfied() { "satisfied" } else { "not satisfied" }));
    text.push("contrast models:".into());
    for (m, r) in contrast_models.iter().zip(&contrasts) {
        let failed = failed_hypotheses(r);
        let shape = if r.least_positive.exists { "principal" } else { "non-principal" };
        text.push(if failed.is_empty() {
            format!("  {:<8} {shape}, hypotheses satisfied", model_name(*m))
        } else {
            format!("  {:<8} {shape}, hypotheses fail ({})", model_name(*m), failed.join(", "))
        });
    }
    let to_json = |r: &KellerReport| serde_json::to_value(r).expect("reports serialize");
    let json = json!({
        "report": to_json(&primary),
        "satisfied": primary.satisfied(),
        "contrasts": contrasts.iter().map(to_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text))
}
