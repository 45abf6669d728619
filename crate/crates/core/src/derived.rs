//! Bounded complexes in the derived category, kept in canonical form as
//! families of shifted cohomology, with the localization `- (x)^L B` and the
//! colocalization attached to an orthogonal pair.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homalg::projective_presentation;
use crate::orthopair::{five_term_with, tor_and_tensor, FiveTermOptions, OrthoPair};
use crate::perpalg::{tensor_with_b, PerpAlgebra};
use crate::quiverrep::{
    cokernel, direct_sum_in, factor_through_mono, is_isomorphic, kernel, IsoVerdict, Morphism, Quiver, Representation,
};

/// `(+)_n H^n[-n]`; zero terms are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalComplex {
    quiver: Arc<Quiver>,
    field: Field,
    terms: BTreeMap<i32, Representation>,
}

impl FormalComplex {
    pub fn zero(quiver: &Arc<Quiver>, field: Field) -> FormalComplex {
        FormalComplex { quiver: quiver.clone(), field, terms: BTreeMap::new() }
    }

    /// `m` in degree `n`.
    pub fn concentrated(m: &Representation, n: i32) -> FormalComplex {
        let mut c = FormalComplex::zero(m.quiver(), m.field());
        if !m.is_zero() {
            c.terms.insert(n, m.clone());
        }
        c
    }

    pub fn from_terms(
        quiver: &Arc<Quiver>,
        field: Field,
        terms: impl IntoIterator<Item = (i32, Representation)>,
    ) -> Result<FormalComplex> {
        let mut c = FormalComplex::zero(quiver, field);
        for (n, m) in terms {
            c.add_at(n, m)?;
        }
        Ok(c)
    }

    fn add_at(&mut self, n: i32, m: Representation) -> Result<()> {
        Representation::zero(&self.quiver, self.field).same_category(&m)?;
        if m.is_zero() {
            return Ok(());
        }
        let merged = match self.terms.remove(&n) {
            Some(old) => direct_sum_in(&self.quiver, self.field, &[old, m])?.sum,
            None => m,
        };
        self.terms.insert(n, merged);
        Ok(())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<i32, Representation> {
        &self.terms
    }

    pub fn get(&self, n: i32) -> Option<&Representation> {
        self.terms.get(&n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `C[k]`, whose degree `n` term is `H^{n+k}(C)`.
    pub fn shift(&self, k: i32) -> FormalComplex {
        let terms = self.terms.iter().map(|(n, m)| (n - k, m.clone())).collect();
        FormalComplex { quiver: self.quiver.clone(), field: self.field, terms }
    }

    pub fn direct_sum(&self, other: &FormalComplex) -> Result<FormalComplex> {
        let mut out = self.clone();
        for (&n, m) in &other.terms {
            out.add_at(n, m.clone())?;
        }
        Ok(out)
    }

    pub fn dims(&self) -> BTreeMap<i32, Vec<usize>> {
        self.terms.iter().map(|(&n, m)| (n, m.dims().to_vec())).collect()
    }
}

/// Degreewise isomorphism, which is isomorphism in the derived category.
pub fn complexes_isomorphic(a: &FormalComplex, b: &FormalComplex) -> Result<bool> {
    if a.terms.keys().ne(b.terms.keys()) {
        return Ok(false);
    }
    for (n, m) in &a.terms {
        match is_isomorphic(m, &b.terms[n])? {
            IsoVerdict::IsoWitness(_) => {}
            IsoVerdict::NotIso(_) => return Ok(false),
            IsoVerdict::Inconclusive => return Err(Error::IsoInconclusive(format!("degree {n}"))),
        }
    }
    Ok(true)
}

/// `C^start -> C^{start+1} -> ...` with `d^{n+1} d^n = 0`.
#[derive(Clone, Debug)]
pub struct RawComplex {
    start: i32,
    objects: Vec<Representation>,
    differentials: Vec<Morphism>,
}

impl RawComplex {
    /// `differentials[k]` goes from `objects[k]` to `objects[k + 1]`.
    pub fn new(start: i32, objects: Vec<Representation>, differentials: Vec<Morphism>) -> Result<RawComplex> {
        if objects.is_empty() {
            return Err(Error::InvalidShape("complex needs at least one object".into()));
        }
        if differentials.len() + 1 != objects.len() {
            return Err(Error::InvalidShape(format!(
                "{} objects need {} differentials, got {}",
                objects.len(),
                objects.len() - 1,
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source() != &objects[k] || d.target() != &objects[k + 1] {
                return Err(Error::InvalidChain(k));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k].compose(&differentials[k - 1])?.is_zero() {
                return Err(Error::NotAComplex(start + k as i32 - 1));
            }
        }
        Ok(RawComplex { start, objects, differentials })
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn objects(&self) -> &[Representation] {
        &self.objects
    }

    pub fn differentials(&self) -> &[Morphism] {
        &self.differentials
    }

    pub fn object(&self, n: i32) -> Option<&Representation> {
        usize::try_from(n - self.start).ok().and_then(|k| self.objects.get(k))
    }
}

pub fn cohomology(c: &RawComplex) -> Result<FormalComplex> {
    let first = &c.objects[0];
    let mut out = FormalComplex::zero(first.quiver(), first.field());
    for (k, obj) in c.objects.iter().enumerate() {
        let (ker, incl) = match c.differentials.get(k) {
            Some(d) => kernel(d)?,
            None => (obj.clone(), Morphism::identity(obj)),
        };
        let h = match k.checked_sub(1).map(|j| &c.differentials[j]) {
            Some(d) => {
                let into = factor_through_mono(&incl, d)?.ok_or(Error::NotAComplex(c.start + k as i32 - 1))?;
                cokernel(&into)?.0
            }
            None => ker,
        };
        out.add_at(c.start + k as i32, h)?;
    }
    Ok(out)
}

/// `[P1 -> P0]` in degrees `-1, 0`.
pub fn perfect_presentation(m: &Representation) -> Result<RawComplex> {
    let pres = projective_presentation(m)?;
    let sigma = pres.sequence.iota().clone();
    RawComplex::new(-1, vec![pres.p1.sum.clone(), pres.p0.sum.clone()], vec![sigma])
}

/// `H^n (x) B` in degree `n` and `Tor_1(H^n, B)` in degree `n - 1`.
pub fn localize(pair: &OrthoPair, c: &FormalComplex) -> Result<FormalComplex> {
    localize_with(&mut TensorMemo::new(pair.perp_algebra()?), c)
}

fn localize_with(memo: &mut TensorMemo, c: &FormalComplex) -> Result<FormalComplex> {
    let mut out = FormalComplex::zero(&c.quiver, c.field);
    for (&n, h) in &c.terms {
        let (tor, tensor) = memo.get(h)?;
        out.add_at(n, tensor)?;
        out.add_at(n - 1, tor)?;
    }
    Ok(out)
}

/// `(Tor_1(M, B), M (x) B)` remembered per module, since shifted and summed
/// probes share their cohomology.
struct TensorMemo<'a> {
    pa: &'a PerpAlgebra,
    seen: Vec<(Representation, Representation, Representation)>,
}

impl<'a> TensorMemo<'a> {
    fn new(pa: &'a PerpAlgebra) -> TensorMemo<'a> {
        TensorMemo { pa, seen: Vec::new() }
    }

    fn get(&mut self, m: &Representation) -> Result<(Representation, Representation)> {
        if let Some((_, tor, tensor)) = self.seen.iter().find(|(k, _, _)| k == m) {
            return Ok((tor.clone(), tensor.clone()));
        }
        let (tor, tensor) = tensor_with_b(self.pa, m)?;
        self.seen.push((m.clone(), tor.clone(), tensor.clone()));
        Ok((tor, tensor))
    }
}

/// `X_{H^n}` in degree `n` and `X^{H^n}` in degree `n + 1`.
pub fn colocalize(pair: &OrthoPair, c: &FormalComplex) -> Result<FormalComplex> {
    let mut out = FormalComplex::zero(&c.quiver, c.field);
    let opts = FiveTermOptions { skip_route_b: true, ..Default::default() };
    for (&n, h) in &c.terms {
        let eps = five_term_with(pair, h, opts)?;
        out.add_at(n, eps.x_lower)?;
        out.add_at(n + 1, eps.x_upper)?;
    }
    Ok(out)
}

/// Cohomology of `Gamma M -> M -> L M ->` against the five-term sequence.
#[derive(Clone, Debug)]
pub struct TriangleReport {
    pub gamma: FormalComplex,
    pub local: FormalComplex,
    /// `H^0 Gamma = X_M`, `H^1 Gamma = X^M`, `H^-1 L = Y_M`, `H^0 L = Y^M`.
    pub matches: [bool; 4],
    pub no_other_degrees: bool,
}

impl TriangleReport {
    pub fn holds(&self) -> bool {
        self.matches.iter().all(|&b| b) && self.no_other_degrees
    }
}

fn term_matches(c: &FormalComplex, n: i32, m: &Representation) -> Result<bool> {
    match c.get(n) {
        None => Ok(m.is_zero()),
        Some(h) => match is_isomorphic(h, m)? {
            IsoVerdict::IsoWitness(_) => Ok(true),
            IsoVerdict::NotIso(_) => Ok(false),
            IsoVerdict::Inconclusive => Err(Error::IsoInconclusive(format!("triangle term in degree {n}"))),
        },
    }
}

pub fn triangle_check(pair: &OrthoPair, m: &Representation) -> Result<TriangleReport> {
    let c = FormalComplex::concentrated(m, 0);
    let gamma = colocalize(pair, &c)?;
    let local = localize(pair, &c)?;
    let eps = five_term_with(pair, m, FiveTermOptions::default())?;
    let matches = [
        term_matches(&gamma, 0, &eps.x_lower)?,
        term_matches(&gamma, 1, &eps.x_upper)?,
        term_matches(&local, -1, &eps.y_lower)?,
        term_matches(&local, 0, &eps.y_upper)?,
    ];
    let no_other_degrees =
        gamma.terms.keys().all(|n| (0..=1).contains(n)) && local.terms.keys().all(|n| (-1..=0).contains(n));
    let report = TriangleReport { gamma, local, matches, no_other_degrees };
    if !report.holds() {
        return Err(Error::VerificationFailed(format!("triangle does not match the five-term sequence: {:?}", report.matches)));
    }
    Ok(report)
}

/// The three kernel verdicts for one probe and the idempotence of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVerdict {
    /// `L C = 0`.
    pub localizes_to_zero: bool,
    /// Every cohomology lies in the left class.
    pub cohomology_in_x: bool,
    /// Every cohomology is killed by the reflection: `Y_H = 0 = Y^H`.
    pub reflection_kills: bool,
    /// `L L C = L C`.
    pub idempotent: bool,
}

impl KernelVerdict {
    pub fn trichotomy(&self) -> bool {
        self.localizes_to_zero == self.cohomology_in_x && self.cohomology_in_x == self.reflection_kills
    }
}

#[derive(Clone, Debug)]
pub struct TelescopeReport {
    pub verdicts: Vec<KernelVerdict>,
    /// The presentation of the generator lies in the kernel of `L`.
    pub generator_in_kernel: bool,
    /// `L(C_k (+) C_{k+1}) = L C_k (+) L C_{k+1}` for consecutive probes.
    pub sums_distribute: Vec<bool>,
}

impl TelescopeReport {
    pub fn holds(&self) -> bool {
        self.generator_in_kernel
            && self.verdicts.iter().all(|v| v.trichotomy() && v.idempotent)
            && self.sums_distribute.iter().all(|&b| b)
    }
}

pub fn telescope_check(pair: &OrthoPair, probes: &[FormalComplex]) -> Result<TelescopeReport> {
    let real = pair.reflected_projectives()?;
    let mut memo = TensorMemo::new(pair.perp_algebra()?);
    let mut verdicts = Vec::with_capacity(probes.len());
    let mut locals = Vec::with_capacity(probes.len());
    for c in probes {
        let local = localize_with(&mut memo, c)?;
        let mut in_x = true;
        let mut killed = true;
        for h in c.terms.values() {
            let (tor, tensor) = memo.get(h)?;
            in_x &= tor.is_zero() && tensor.is_zero();
            let (tor, tensor) = tor_and_tensor(&projective_presentation(h)?, real)?;
            killed &= tor.is_zero() && tensor.is_zero();
        }
        let idempotent = complexes_isomorphic(&localize_with(&mut memo, &local)?, &local)?;
        verdicts.push(KernelVerdict {
            localizes_to_zero: local.is_zero(),
            cohomology_in_x: in_x,
            reflection_kills: killed,
            idempotent,
        });
        locals.push(local);
    }
    let generator = cohomology(&perfect_presentation(pair.generator())?)?;
    let generator_in_kernel = localize_with(&mut memo, &generator)?.is_zero();
    let mut sums_distribute = Vec::new();
    if probes.len() > 1 {
        for k in 0..probes.len() {
            let j = (k + 1) % probes.len();
            let joint = localize_with(&mut memo, &probes[k].direct_sum(&probes[j])?)?;
            sums_distribute.push(complexes_isomorphic(&joint, &locals[k].direct_sum(&locals[j])?)?);
        }
    }
    let report = TelescopeReport { verdicts, generator_in_kernel, sums_distribute };
    if !report.holds() {
        return Err(Error::VerificationFailed("telescope check failed".into()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopair::make_pair;
    use crate::quiverrep::corpus::{a2, kronecker};
    use crate::quiverrep::{projective, simple};

    const Q: Field = Field::Rationals;

    #[test]
    fn cohomology_examples() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let c = cohomology(&perfect_presentation(&s1).unwrap()).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(0, vec![1, 0])]));

        let p1 = projective(&q, Q, 0).unwrap();
        let id = Morphism::identity(&p1);
        let c = cohomology(&RawComplex::new(3, vec![p1.clone(), p1.clone()], vec![id]).unwrap()).unwrap();
        assert!(c.is_zero());

        let z = Morphism::zero(&p1, &s1);
        let c = cohomology(&RawComplex::new(0, vec![p1.clone(), s1.clone()], vec![z]).unwrap()).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(0, vec![1, 1]), (1, vec![1, 0])]));

        let kr = kronecker();
        let r = perfect_presentation(&simple(&kr, Q, 0).unwrap()).unwrap();
        assert_eq!(r.objects()[0].dims(), &[0, 2]);
    }

    #[test]
    fn not_a_complex() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let id = Morphism::identity(&s1);
        let err = RawComplex::new(0, vec![s1.clone(), s1.clone(), s1.clone()], vec![id.clone(), id]).unwrap_err();
        assert_eq!(err, Error::NotAComplex(0));
    }

    #[test]
    fn localization_examples() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let s2 = simple(&q, Q, 1).unwrap();
        let p1 = projective(&q, Q, 0).unwrap();
        let pair = make_pair(&s1).unwrap();
        let l = localize(&pair, &FormalComplex::concentrated(&s2, 0)).unwrap();
        assert!(complexes_isomorphic(&l, &FormalComplex::concentrated(&p1, 0)).unwrap());
        let pair = make_pair(&s2).unwrap();
        assert!(localize(&pair, &FormalComplex::concentrated(&s2, 0)).unwrap().is_zero());

        for (x, m) in [(&s1, &s2), (&s2, &p1), (&s2, &s2)] {
            triangle_check(&make_pair(x).unwrap(), m).unwrap();
        }
        let pair = make_pair(&s2).unwrap();
        let probes = vec![
            FormalComplex::concentrated(&s2, -3).direct_sum(&FormalComplex::concentrated(&s2, 5)).unwrap(),
            FormalComplex::concentrated(&s1, 0),
            FormalComplex::concentrated(&p1, 2).shift(1),
        ];
        let r = telescope_check(&pair, &probes).unwrap();
        assert!(r.verdicts[0].localizes_to_zero && !r.verdicts[1].localizes_to_zero);
    }
}
