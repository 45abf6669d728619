use perpcat::exactlin::Matrix;
use perpcat::quiverrep::{Morphism, Representation};
use serde_json::Value;

/// A finished report. `failure` names the first failed check and makes the
/// process exit with status 4 after the report is written.
pub struct Report {
    pub json: Value,
    pub text: Vec<String>,
    pub failure: Option<String>,
}

impl Report {
    pub fn new(json: Value, text: Vec<String>) -> Report {
        Report { json, text, failure: None }
    }
}

pub fn dims(d: &[usize]) -> String {
    if d.iter().all(|&x| x == 0) {
        return "0".into();
    }
    format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

pub fn rep_dims(m: &Representation) -> String {
    dims(m.dims())
}

pub fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn vector(m: &Matrix) -> String {
    format!("({})", m.column(0).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn morphism(f: &Morphism) -> String {
    f.maps()
        .iter()
        .enumerate()
        .map(|(v, m)| format!("{}: {}", v + 1, matrix(m)))
        .collect::<Vec<_>>()
        .join("  ")
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

/// 64-bit FNV-1a of a string, printed as 16 hex digits.
pub fn digest(s: &str) -> String {
    let h = s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3));
    format!("{h:016x}")
}
