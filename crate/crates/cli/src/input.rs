//! Quiver, module and probe arguments: a JSON file or an `@name` builtin.

use std::path::Path;
use std::sync::Arc;

use perpcat::derived::{cohomology, FormalComplex};
use perpcat::exactlin::Field;
use perpcat::io;
use perpcat::quiverrep::corpus::{
    a2, a3_linear, a3_sink, d4, intervals, kronecker, kronecker_preinjective, kronecker_preprojective, random_rep,
};
use perpcat::quiverrep::{injective, projective, simple, Quiver, Representation};
use perpcat::valuation::ValueVector;
use perpcat::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn parse_field(s: &str) -> std::result::Result<Field, String> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(Field::Rationals),
        other => {
            let p = other
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("expected q or fp:P, got {s:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{path}: line {}, column {}: {e}", e.line(), e.column())))
}

fn in_file(path: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{path}: {m}")),
        other => Error::Parse(format!("{path}: {other}")),
    }
}

pub fn quiver(arg: &str) -> Result<Arc<Quiver>> {
    match arg {
        "@A2" => Ok(a2()),
        "@A3" => Ok(a3_linear()),
        "@A3sink" => Ok(a3_sink()),
        "@D4" => Ok(d4()),
        "@Kronecker" => Ok(kronecker()),
        b if b.starts_with('@') => Err(Error::Parse(format!("unknown builtin quiver {b}"))),
        path => io::quiver_from_json(&read_json(path)?).map_err(|e| in_file(path, e)),
    }
}

fn vertex(q: &Quiver, s: &str, arg: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(v) if (1..=q.vertex_count()).contains(&v) => Ok(v - 1),
        _ => Err(Error::Parse(format!("{arg}: vertex must lie in 1..={}", q.vertex_count()))),
    }
}

/// A representation value, checked against an optional embedded quiver.
fn rep_value(q: &Arc<Quiver>, v: &Value) -> Result<Representation> {
    if let Some(embedded) = v.get("quiver") {
        if *io::quiver_from_json(embedded)? != **q {
            return Err(Error::Parse("quiver: module is over a different quiver".into()));
        }
    }
    io::rep_from_json(q, v)
}

pub fn module(q: &Arc<Quiver>, field: Field, arg: &str) -> Result<Representation> {
    if let Some(name) = arg.strip_prefix('@') {
        if name == "0" {
            return Ok(Representation::zero(q, field));
        }
        let (kind, rest) = name.split_at(1);
        return match kind {
            "S" => simple(q, field, vertex(q, rest, arg)?),
            "P" => projective(q, field, vertex(q, rest, arg)?),
            "I" => injective(q, field, vertex(q, rest, arg)?),
            _ => Err(Error::Parse(format!("unknown builtin module {arg}"))),
        };
    }
    rep_value(q, &read_json(arg)?).map_err(|e| in_file(arg, e))
}

fn count(arg: &str, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("{arg}: expected a count")))
}

/// `@intervals`, `@preprojectives:N`, `@preinjectives:N`, `@random:N`, or a
/// file holding a list of modules (or an object with a `probes` list).
pub fn probes(q: &Arc<Quiver>, field: Field, arg: &str) -> Result<Vec<Representation>> {
    let (name, param) = arg.split_once(':').unwrap_or((arg, ""));
    let need_kronecker = || {
        if **q == *kronecker() {
            Ok(())
        } else {
            Err(Error::Parse(format!("{arg}: only defined on the Kronecker quiver")))
        }
    };
    match name {
        "@intervals" => intervals(q, field),
        "@preprojectives" => {
            need_kronecker()?;
            (0..=count(arg, param)?).map(|n| kronecker_preprojective(field, n)).collect()
        }
        "@preinjectives" => {
            need_kronecker()?;
            (0..=count(arg, param)?).map(|n| kronecker_preinjective(field, n)).collect()
        }
        "@random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            Ok((0..count(arg, param)?).map(|_| random_rep(q, field, 3, &mut rng)).collect())
        }
        b if b.starts_with('@') => Err(Error::Parse(format!("unknown builtin probe set {b}"))),
        _ => {
            let v = read_json(arg)?;
            let list = probe_list(&v).map_err(|e| in_file(arg, e))?;
            list.iter()
                .enumerate()
                .map(|(k, p)| rep_value(q, p).map_err(|e| in_file(arg, prefix(&format!("probes[{k}]"), e))))
                .collect()
        }
    }
}

fn prefix(at: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{at}.{m}")),
        other => Error::Parse(format!("{at}: {other}")),
    }
}

fn probe_list(v: &Value) -> Result<&Vec<Value>> {
    let list = v.get("probes").unwrap_or(v);
    list.as_array().ok_or_else(|| Error::Parse("expected a list of probes".into()))
}

/// Complex probes for the telescope. File entries may be modules (placed in
/// degree 0), formal complexes (`terms`) or raw complexes (`objects`).
pub fn complex_probes(q: &Arc<Quiver>, field: Field, arg: &str) -> Result<Vec<FormalComplex>> {
    if arg.starts_with('@') {
        return Ok(probes(q, field, arg)?.iter().map(|m| FormalComplex::concentrated(m, 0)).collect());
    }
    let v = read_json(arg)?;
    let list = probe_list(&v).map_err(|e| in_file(arg, e))?;
    list.iter()
        .enumerate()
        .map(|(k, p)| {
            let c = if p.get("terms").is_some() {
                io::formal_complex_from_json(q, field, p)
            } else if p.get("objects").is_some() {
                io::raw_complex_from_json(q, p).and_then(|raw| cohomology(&raw))
            } else {
                rep_value(q, p).map(|m| FormalComplex::concentrated(&m, 0))
            };
            c.map_err(|e| in_file(arg, prefix(&format!("probes[{k}]"), e)))
        })
        .collect()
}

pub fn value_probes(arg: &str) -> Result<Vec<ValueVector>> {
    let v = read_json(arg)?;
    let list = probe_list(&v).map_err(|e| in_file(arg, e))?;
    list.iter()
        .enumerate()
        .map(|(k, p)| {
            serde_json::from_value(p.clone()).map_err(|e| Error::Parse(format!("{arg}: probes[{k}]: {e}")))
        })
        .collect()
}
