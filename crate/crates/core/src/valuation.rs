//! Value-group arithmetic for a valuation domain with value group
//! `Z^(N)` under the lexicographic order, and the ideal calculus showing
//! that its maximal ideal `P` satisfies `P^2 = P` without being principal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely supported integer sequence indexed from 1, zeros dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, i64>", into = "BTreeMap<String, i64>")]
pub struct ValueVector(BTreeMap<u32, i64>);

impl ValueVector {
    pub fn zero() -> ValueVector {
        ValueVector::default()
    }

    /// The basis vector `e_j`.
    pub fn unit(j: u32) -> ValueVector {
        ValueVector::from_pairs([(j, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, i64)>) -> ValueVector {
        let mut v = ValueVector::zero();
        for (j, x) in pairs {
            assert!(j >= 1, "positions start at 1");
            *v.0.entry(j).or_insert(0) += x;
        }
        v.0.retain(|_, x| *x != 0);
        v
    }

    /// `dense[k]` at position `k + 1`.
    pub fn from_dense(dense: &[i64]) -> ValueVector {
        ValueVector::from_pairs(dense.iter().enumerate().map(|(k, &x)| (k as u32 + 1, x)))
    }

    pub fn get(&self, j: u32) -> i64 {
        self.0.get(&j).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<u32, i64> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Last position in the support, 0 for the zero vector.
    pub fn support_end(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn first_nonzero(&self) -> Option<(u32, i64)> {
        self.0.iter().next().map(|(&j, &x)| (j, x))
    }

    pub fn is_positive(&self) -> bool {
        self.first_nonzero().is_some_and(|(_, x)| x > 0)
    }

    pub fn add(&self, other: &ValueVector) -> ValueVector {
        ValueVector::from_pairs(self.0.iter().chain(&other.0).map(|(&j, &x)| (j, x)))
    }

    pub fn neg(&self) -> ValueVector {
        ValueVector(self.0.iter().map(|(&j, &x)| (j, -x)).collect())
    }

    pub fn sub(&self, other: &ValueVector) -> ValueVector {
        self.add(&other.neg())
    }
}

impl Ord for ValueVector {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self, other)
    }
}

impl PartialOrd for ValueVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&j, &x) in &self.0 {
            let sign = if x < 0 { "-" } else if first { "" } else { "+" };
            let mag = x.unsigned_abs();
            let coeff = if mag == 1 { String::new() } else { mag.to_string() };
            write!(f, "{sign}{coeff}e{j}")?;
            first = false;
        }
        Ok(())
    }
}

impl TryFrom<BTreeMap<String, i64>> for ValueVector {
    type Error = String;

    fn try_from(map: BTreeMap<String, i64>) -> std::result::Result<Self, String> {
        let mut pairs = Vec::with_capacity(map.len());
        for (k, x) in map {
            let j: u32 = k.parse().map_err(|_| format!("position {k:?} is not a positive integer"))?;
            if j == 0 {
                return Err("positions start at 1".into());
            }
            pairs.push((j, x));
        }
        Ok(ValueVector::from_pairs(pairs))
    }
}

impl From<ValueVector> for BTreeMap<String, i64> {
    fn from(v: ValueVector) -> Self {
        v.0.into_iter().map(|(j, x)| (j.to_string(), x)).collect()
    }
}

/// Compares at the first position where `v` and `w` differ.
pub fn lex_compare(v: &ValueVector, w: &ValueVector) -> Ordering {
    match v.sub(w).first_nonzero() {
        None => Ordering::Equal,
        Some((_, x)) if x > 0 => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

/// An ideal of the valuation domain, described by values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum IdealDesc {
    /// Generated by elements with the given positive values.
    Finite { generators: Vec<ValueVector> },
    /// Generated by `e_1, e_2, e_3, ...`: the maximal ideal.
    CanonicalFamily,
    Product { left: Box<IdealDesc>, right: Box<IdealDesc> },
}

impl IdealDesc {
    pub fn principal(v: ValueVector) -> IdealDesc {
        IdealDesc::Finite { generators: vec![v] }
    }

    pub fn product(left: IdealDesc, right: IdealDesc) -> IdealDesc {
        IdealDesc::Product { left: Box::new(left), right: Box::new(right) }
    }

    pub fn square(&self) -> IdealDesc {
        IdealDesc::product(self.clone(), self.clone())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            IdealDesc::Finite { generators } => match generators.iter().find(|g| !g.is_positive()) {
                Some(g) => Err(Error::Parse(format!("generator {g} is not positive"))),
                None => Ok(()),
            },
            IdealDesc::CanonicalFamily => Ok(()),
            IdealDesc::Product { left, right } => {
                left.validate()?;
                right.validate()
            }
        }
    }

    /// The same ideal read in `model`: in `Z^r` the positive values are
    /// generated by the least one, `e_r`.
    pub fn in_model(&self, model: ValueModel) -> IdealDesc {
        match (self, model) {
            (IdealDesc::CanonicalFamily, ValueModel::Rank { r }) => IdealDesc::principal(ValueVector::unit(r.max(1))),
            (IdealDesc::Product { left, right }, _) => IdealDesc::product(left.in_model(model), right.in_model(model)),
            _ => self.clone(),
        }
    }

    /// Finitely many generators relevant to values supported before `bound`.
    fn generators_up_to(&self, bound: u32) -> Vec<ValueVector> {
        match self {
            IdealDesc::Finite { generators } => generators.clone(),
            IdealDesc::CanonicalFamily => (1..=bound).map(ValueVector::unit).collect(),
            IdealDesc::Product { left, right } => {
                let (l, r) = (left.generators_up_to(bound), right.generators_up_to(bound));
                l.iter().flat_map(|a| r.iter().map(move |b| a.add(b))).collect()
            }
        }
    }
}

/// Why a value lies in an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Witness {
    /// `v >= generator`.
    Generator { generator: ValueVector },
    /// `v >= a + b` with `a` in the left factor and `b` in the right.
    Sum { a: ValueVector, b: ValueVector, left: Box<Witness>, right: Box<Witness> },
}

impl Witness {
    /// Re-validates the witness against `v` and `ideal` from scratch.
    pub fn certifies(&self, ideal: &IdealDesc, v: &ValueVector) -> bool {
        match (self, ideal) {
            (Witness::Generator { generator }, IdealDesc::Finite { generators }) => {
                generators.contains(generator) && v >= generator
            }
            (Witness::Generator { generator }, IdealDesc::CanonicalFamily) => {
                generator.entries().len() == 1 && generator.first_nonzero().is_some_and(|(_, x)| x == 1) && v >= generator
            }
            (Witness::Sum { a, b, left: wa, right: wb }, IdealDesc::Product { left, right }) => {
                *v >= a.add(b) && wa.certifies(left, a) && wb.certifies(right, b)
            }
            _ => false,
        }
    }
}

/// Membership of a value in an ideal, with a witness when it holds.
pub fn ideal_contains(ideal: &IdealDesc, v: &ValueVector) -> Option<Witness> {
    match ideal {
        IdealDesc::Finite { generators } => {
            generators.iter().find(|g| v >= *g).map(|g| Witness::Generator { generator: g.clone() })
        }
        IdealDesc::CanonicalFamily => {
            let (j, _) = v.first_nonzero().filter(|_| v.is_positive())?;
            let ej = ValueVector::unit(j);
            let generator = if *v >= ej { ej } else { ValueVector::unit(j + 1) };
            Some(Witness::Generator { generator })
        }
        IdealDesc::Product { left, right } => {
            let k = ValueVector::unit(v.support_end() + 1);
            let a = v.sub(&k);
            if let (Some(wa), Some(wb)) = (ideal_contains(left, &a), ideal_contains(right, &k)) {
                return Some(Witness::Sum { a, b: k, left: Box::new(wa), right: Box::new(wb) });
            }
            let bound = v.support_end() + 2;
            for a in left.generators_up_to(bound) {
                for b in right.generators_up_to(bound) {
                    if *v >= a.add(&b) {
                        let wa = ideal_contains(left, &a)?;
                        let wb = ideal_contains(right, &b)?;
                        return Some(Witness::Sum { a, b, left: Box::new(wa), right: Box::new(wb) });
                    }
                }
            }
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdempotenceReport {
    /// Per probe, a witness that it lies in `I^2`.
    pub witnesses: Vec<(ValueVector, Option<Witness>)>,
    pub idempotent_on_probes: bool,
    /// Exact answer where decidable: a finitely generated ideal is
    /// principal, and a nonzero principal ideal is never idempotent.
    pub exact: Option<bool>,
}

impl IdempotenceReport {
    pub fn idempotent(&self) -> bool {
        self.idempotent_on_probes && self.exact != Some(false)
    }
}

pub fn is_idempotent(ideal: &IdealDesc, probes: &[ValueVector]) -> Result<IdempotenceReport> {
    ideal.validate()?;
    for p in probes {
        if ideal_contains(ideal, p).is_none() {
            return Err(Error::ProbeNotInIdeal(p.to_string()));
        }
    }
    let square = ideal.square();
    let witnesses: Vec<_> = probes.iter().map(|p| (p.clone(), ideal_contains(&square, p))).collect();
    let idempotent_on_probes = witnesses.iter().all(|(p, w)| w.as_ref().is_some_and(|w| w.certifies(&square, p)));
    let exact = match ideal {
        IdealDesc::Finite { generators } => match generators.iter().min() {
            None => Some(true),
            Some(g) => Some(ideal_contains(&square, g).is_some()),
        },
        _ => None,
    };
    Ok(IdempotenceReport { witnesses, idempotent_on_probes, exact })
}

/// `Tor_1(A/I, A/I) = I/I^2` vanishes on the probes.
pub fn tor1_selfquotient_vanishes(ideal: &IdealDesc, probes: &[ValueVector]) -> Result<bool> {
    Ok(is_idempotent(ideal, probes)?.idempotent())
}

/// A value group: `Z^(N)` or `Z^r`, both ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ValueModel {
    Countable,
    Rank { r: u32 },
}

impl ValueModel {
    pub fn contains(&self, v: &ValueVector) -> bool {
        match self {
            ValueModel::Countable => true,
            ValueModel::Rank { r } => v.support_end() <= *r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LeastPositive {
    pub exists: bool,
    pub witness: Option<ValueVector>,
    /// A strictly decreasing chain of positive values when none exists.
    pub descending_chain: Vec<ValueVector>,
    pub chain_verified: bool,
}

pub const CHAIN_LENGTH: u32 = 10;

pub fn least_positive_exists(model: ValueModel) -> LeastPositive {
    match model {
        ValueModel::Countable => {
            let chain: Vec<_> = (1..=CHAIN_LENGTH).map(ValueVector::unit).collect();
            let chain_verified = chain.iter().all(ValueVector::is_positive) && chain.windows(2).all(|w| w[0] > w[1]);
            LeastPositive { exists: false, witness: None, descending_chain: chain, chain_verified }
        }
        ValueModel::Rank { r } => {
            let witness = (r >= 1).then(|| ValueVector::unit(r));
            LeastPositive { exists: r >= 1, witness, descending_chain: Vec::new(), chain_verified: true }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Status {
    /// Decided by computation on the probe set.
    MachineChecked { passed: bool },
    /// Supplied by a theorem, not by computation.
    TheoryCited { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KellerReport {
    pub model: ValueModel,
    pub ideal: IdealDesc,
    pub hypotheses: Vec<Hypothesis>,
    pub idempotence: IdempotenceReport,
    pub least_positive: LeastPositive,
}

impl KellerReport {
    /// All machine-checked hypotheses pass.
    pub fn satisfied(&self) -> bool {
        self.hypotheses.iter().all(|h| !matches!(h.status, Status::MachineChecked { passed: false }))
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

/// The hypotheses that make `P` a counterexample: `Tor_1(A/P, A/P) = 0`,
/// `P` inside the Jacobson radical and `P` not principal.
pub fn keller_hypotheses(model: ValueModel, ideal: &IdealDesc, probes: &[ValueVector]) -> Result<KellerReport> {
    ideal.validate()?;
    let effective = ideal.in_model(model);
    let probes: Vec<_> = probes.iter().filter(|p| model.contains(p)).cloned().collect();
    let members: Vec<_> = probes.iter().filter(|p| ideal_contains(&effective, p).is_some()).cloned().collect();
    let idempotence = is_idempotent(&effective, &members)?;
    let least_positive = least_positive_exists(model);
    let principal = match &effective {
        IdealDesc::Finite { .. } => true,
        IdealDesc::CanonicalFamily => least_positive.exists,
        IdealDesc::Product { .. } => false,
    };
    let in_radical = members.iter().all(ValueVector::is_positive);
    let hypotheses = vec![
        Hypothesis { name: "tor1_vanishes".into(), status: Status::MachineChecked { passed: idempotence.idempotent() } },
        Hypothesis { name: "jacobson_radical".into(), status: Status::MachineChecked { passed: in_radical } },
        Hypothesis {
            name: "non_principal".into(),
            status: Status::MachineChecked { passed: !principal && least_positive.chain_verified },
        },
        Hypothesis {
            name: "higher_tor_vanishes".into(),
            status: Status::TheoryCited { reason: "valuation domains have weak global dimension at most one".into() },
        },
        Hypothesis {
            name: "no_perfect_complexes_in_kernel".into(),
            status: Status::TheoryCited {
                reason: "a nonzero perfect complex has nonzero tensor product with the residue field".into(),
            },
        },
    ];
    Ok(KellerReport { model, ideal: ideal.clone(), hypotheses, idempotence, least_positive })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(dense: &[i64]) -> ValueVector {
        ValueVector::from_dense(dense)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&ValueVector::unit(1), &ValueVector::unit(2)), Ordering::Greater);
        assert_eq!(lex_compare(&v(&[0, 1, -5]), &v(&[0, 1])), Ordering::Less);
        assert_eq!(lex_compare(&v(&[3, 0, 2]), &v(&[3, 0, 2, 0])), Ordering::Equal);
    }

    #[test]
    fn membership_examples() {
        let p = IdealDesc::CanonicalFamily;
        assert_eq!(ideal_contains(&p, &ValueVector::unit(3)), Some(Witness::Generator { generator: ValueVector::unit(3) }));
        assert!(ideal_contains(&p, &v(&[0, -1])).is_none());
        let w = ideal_contains(&p.square(), &ValueVector::unit(1)).unwrap();
        match &w {
            Witness::Sum { a, b, .. } => {
                assert_eq!(*a, v(&[1, -1]));
                assert_eq!(*b, ValueVector::unit(2));
            }
            _ => panic!("expected a sum witness"),
        }
        assert!(w.certifies(&p.square(), &ValueVector::unit(1)));
        let odd = v(&[1, -5]);
        assert!(ideal_contains(&p, &odd).unwrap().certifies(&p, &odd));
    }

    #[test]
    fn idempotence_examples() {
        let p = IdealDesc::CanonicalFamily;
        let probes = [ValueVector::unit(1), ValueVector::unit(2), v(&[1, 1]), v(&[0, 0, 7])];
        let r = is_idempotent(&p, &probes).unwrap();
        assert!(r.idempotent() && r.witnesses.len() == 4);
        let g = v(&[0, 2]);
        let r = is_idempotent(&IdealDesc::principal(g.clone()), &[g.clone()]).unwrap();
        assert!(!r.idempotent_on_probes && r.exact == Some(false));
        assert!(matches!(is_idempotent(&p, &[v(&[-1])]), Err(Error::ProbeNotInIdeal(_))));
        assert!(tor1_selfquotient_vanishes(&p, &[ValueVector::unit(5)]).unwrap());
    }

    #[test]
    fn least_positive() {
        let c = least_positive_exists(ValueModel::Countable);
        assert!(!c.exists && c.chain_verified);
        assert_eq!(least_positive_exists(ValueModel::Rank { r: 1 }).witness, Some(ValueVector::unit(1)));
        assert_eq!(least_positive_exists(ValueModel::Rank { r: 2 }).witness, Some(v(&[0, 1])));
    }

    #[test]
    fn keller_reports() {
        let probes: Vec<_> = (1..=10).map(ValueVector::unit).collect();
        let r = keller_hypotheses(ValueModel::Countable, &IdealDesc::CanonicalFamily, &probes).unwrap();
        assert!(r.satisfied());
        let r = keller_hypotheses(ValueModel::Countable, &IdealDesc::principal(ValueVector::unit(1)), &probes).unwrap();
        assert!(!r.satisfied());
        let r = keller_hypotheses(ValueModel::Rank { r: 1 }, &IdealDesc::CanonicalFamily, &probes).unwrap();
        assert!(!r.satisfied());
    }

    #[test]
    fn json_round_trip() {
        let x = v(&[1, 0, 0, -2]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"1":1,"4":-2}"#);
        assert_eq!(serde_json::from_str::<ValueVector>(&s).unwrap(), x);
        let i = IdealDesc::product(IdealDesc::CanonicalFamily, IdealDesc::principal(x));
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(serde_json::from_str::<IdealDesc>(&s).unwrap(), i);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vector() -> impl Strategy<Value = ValueVector> {
            prop::collection::vec((1u32..8, -4i64..=4), 0..5).prop_map(ValueVector::from_pairs)
        }

        fn positive() -> impl Strategy<Value = ValueVector> {
            (1u32..6, 1i64..=3, vector()).prop_map(|(lead, c, tail)| {
                let rest = tail.entries().iter().map(|(&j, &x)| (j + lead, x));
                ValueVector::from_pairs(std::iter::once((lead, c)).chain(rest))
            })
        }

        proptest! {
            #[test]
            fn order_is_translation_invariant(a in vector(), b in vector(), c in vector()) {
                prop_assert_eq!(lex_compare(&a, &b), lex_compare(&a.add(&c), &b.add(&c)));
                prop_assert_eq!(lex_compare(&a, &b), lex_compare(&b, &a).reverse());
                prop_assert_eq!(a.sub(&b).is_positive(), lex_compare(&a, &b) == Ordering::Greater);
            }

            #[test]
            fn positives_are_closed_under_addition(a in positive(), b in positive()) {
                prop_assert!(a.is_positive() && b.is_positive());
                prop_assert!(a.add(&b).is_positive());
            }

            #[test]
            fn canonical_ideal_equals_its_square(v in positive()) {
                let ideal = IdealDesc::CanonicalFamily;
                let w = ideal_contains(&ideal, &v).expect("every positive value lies in the maximal ideal");
                prop_assert!(w.certifies(&ideal, &v));
                let square = ideal.square();
                let w2 = ideal_contains(&square, &v).expect("and in its square");
                prop_assert!(w2.certifies(&square, &v));
            }
        }
    }
}

