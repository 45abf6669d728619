use super::PerpAlgebra;
use crate::error::{Error, Result};
use crate::homalg::{hom_into, projective_presentation, realize, ProjMap};
use crate::orthopair::{membership_y, OrthoPair};
use crate::quiverrep::Representation;

/// The maps `sigma` between sums of projectives that `f` inverts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationData {
    pub sigma: Vec<ProjMap>,
}

/// One `sigma`: the presentation map of the generator.
pub fn universal_localization_data(pair: &OrthoPair) -> Result<LocalizationData> {
    let pres = projective_presentation(pair.generator())?;
    Ok(LocalizationData { sigma: vec![pres.sigma] })
}

/// Whether `Hom(sigma, M)` is invertible for every `sigma`, checked
/// against membership in the perpendicular category.
pub fn sigma_characterizes(pair: &OrthoPair, data: &LocalizationData, m: &Representation) -> Result<bool> {
    let mut inverted = true;
    for s in &data.sigma {
        inverted &= hom_into(s, m)?.is_invertible();
    }
    let member = membership_y(pair, m)?;
    if inverted != member {
        return Err(Error::EquivalenceViolation(format!(
            "Hom(sigma, M) invertible = {inverted}, membership = {member} for dims {:?}",
            m.dims()
        )));
    }
    Ok(inverted)
}

/// Whether every `sigma (x) B` is an isomorphism.
pub fn sigma_inverts_over_b(pa: &PerpAlgebra, data: &LocalizationData) -> Result<bool> {
    for (k, s) in data.sigma.iter().enumerate() {
        if !realize(pa.tensor_projectives(), s)?.map.is_iso() {
            return Err(Error::VerificationFailed(format!("sigma {k} is not inverted over B")));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::orthopair::make_pair;
    use crate::quiverrep::corpus::{a2, kronecker};
    use crate::quiverrep::{projective, simple};

    const Q: Field = Field::Rationals;

    #[test]
    fn a2_sigma() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let s2 = simple(&q, Q, 1).unwrap();
        let p1 = projective(&q, Q, 0).unwrap();

        let pair = make_pair(&s2).unwrap();
        let data = universal_localization_data(&pair).unwrap();
        assert_eq!(data.sigma[0].source, Vec::<usize>::new());
        assert_eq!(data.sigma[0].target, vec![1]);
        assert!(sigma_characterizes(&pair, &data, &s1).unwrap());
        assert!(sigma_inverts_over_b(pair.perp_algebra().unwrap(), &data).unwrap());

        let pair = make_pair(&s1).unwrap();
        let data = universal_localization_data(&pair).unwrap();
        assert_eq!((data.sigma[0].source.clone(), data.sigma[0].target.clone()), (vec![1], vec![0]));
        assert!(sigma_characterizes(&pair, &data, &p1).unwrap());
        assert!(!sigma_characterizes(&pair, &data, &s1).unwrap());
        assert!(sigma_inverts_over_b(pair.perp_algebra().unwrap(), &data).unwrap());
    }

    #[test]
    fn kronecker_simple_sigma() {
        let q = kronecker();
        let s1 = simple(&q, Q, 0).unwrap();
        let pair = make_pair(&s1).unwrap();
        let data = universal_localization_data(&pair).unwrap();
        assert_eq!(data.sigma[0].source, vec![1, 1]);
        assert_eq!(data.sigma[0].target, vec![0]);
    }
}
