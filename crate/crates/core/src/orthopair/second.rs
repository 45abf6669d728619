use super::{membership_y, reflect, OrthoPair};
use crate::error::{Error, Result};
use crate::homalg::{check_exact, from_zero, to_zero, ExactnessReport};
use crate::perpalg::hom_from_b;
use crate::quiverrep::{cokernel, is_isomorphic, kernel, IsoVerdict, Morphism, Representation};

/// `0 -> Z_M -> Hom_A(B, M) -> M -> Z^M -> Ext^1_A(B, M) -> 0` for the pair
/// whose left class is the perpendicular category and whose right class is
/// `L^perp`.
#[derive(Clone, Debug)]
pub struct SecondFiveTerm {
    pub module: Representation,
    pub z_lower: Representation,
    pub hom: Representation,
    pub z_upper: Representation,
    pub ext1: Representation,
    pub maps: [Morphism; 4],
    /// Both `Z`-terms lie in `L^perp`.
    pub z_terms_in_perp: bool,
    /// `Hom_A(B, M)` and `Ext^1_A(B, M)` lie in the perpendicular category.
    pub b_terms_in_y: bool,
}

impl SecondFiveTerm {
    pub fn chain(&self) -> Vec<Morphism> {
        let mut chain = vec![from_zero(&self.z_lower)];
        chain.extend(self.maps.iter().cloned());
        chain.push(to_zero(&self.ext1));
        chain
    }

    pub fn exactness(&self) -> Result<ExactnessReport> {
        check_exact(&self.chain())
    }

    pub fn dims(&self) -> [Vec<usize>; 5] {
        [
            self.z_lower.dims().to_vec(),
            self.hom.dims().to_vec(),
            self.module.dims().to_vec(),
            self.z_upper.dims().to_vec(),
            self.ext1.dims().to_vec(),
        ]
    }
}

pub fn second_five_term(pair: &OrthoPair, m: &Representation) -> Result<SecondFiveTerm> {
    pair.check_same_category(m)?;
    let pa = pair.perp_algebra()?;
    let hb = hom_from_b(pa, m)?;
    let (z_lower, z_incl) = kernel(&hb.evaluation)?;
    let lpair = pa.perp_pair()?;
    let unit = reflect(&lpair, m)?.unit;
    let (coker, proj) = cokernel(&unit)?;
    let w = match is_isomorphic(&coker, &hb.ext1)? {
        IsoVerdict::IsoWitness(w) => w,
        IsoVerdict::NotIso(why) => {
            return Err(Error::VerificationFailed(format!("cokernel of the reflection is not Ext^1(B, M): {why}")))
        }
        IsoVerdict::Inconclusive => return Err(Error::IsoInconclusive("cokernel of the reflection vs Ext^1(B, M)".into())),
    };
    let z_upper = unit.target().clone();
    let seq = SecondFiveTerm {
        z_terms_in_perp: membership_y(&lpair, &z_lower)? && membership_y(&lpair, &z_upper)?,
        b_terms_in_y: membership_y(pair, &hb.hom)? && membership_y(pair, &hb.ext1)?,
        module: m.clone(),
        maps: [z_incl, hb.evaluation, unit, w.compose(&proj)?],
        z_lower,
        hom: hb.hom,
        z_upper,
        ext1: hb.ext1,
    };
    if let Some(at) = seq.exactness()?.first_failure() {
        return Err(Error::VerificationFailed(format!("second five-term sequence not exact at joint {at}")));
    }
    if !seq.z_terms_in_perp || !seq.b_terms_in_y {
        return Err(Error::VerificationFailed("second five-term terms outside their classes".into()));
    }
    Ok(seq)
}
