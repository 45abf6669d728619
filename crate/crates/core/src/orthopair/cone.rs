use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homalg::{realize, ProjectivePresentation, ProjectiveRealization, StandardProjectives};
use crate::quiverrep::{
    cokernel, descend_through_epi, direct_sum, factor_through_mono, kernel, DirectSum, Morphism, Quiver, Representation,
};

/// The indecomposable projectives pushed through a functor `F`, with units
/// `P(i) -> F P(i)` natural in the arrow maps.
#[derive(Clone, Debug)]
pub struct RealizedProjectives {
    quiver: Arc<Quiver>,
    field: Field,
    objects: Vec<Representation>,
    units: Vec<Morphism>,
    arrows: Vec<Morphism>,
}

impl RealizedProjectives {
    /// Builds from units; each arrow map is the unique `g` with
    /// `g ∘ u_t = u_s ∘ rho_a`, found by `lift`.
    pub fn from_units(
        std: &StandardProjectives,
        units: Vec<Morphism>,
        lift: impl Fn(&Morphism, &Morphism) -> Result<Option<Morphism>>,
    ) -> Result<RealizedProjectives> {
        let quiver = std.quiver().clone();
        let objects: Vec<Representation> = units.iter().map(|u| u.target().clone()).collect();
        let arrows = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let h = units[a.source].compose(std.arrow_map(idx))?;
                lift(&units[a.target], &h)?
                    .ok_or_else(|| Error::VerificationFailed(format!("arrow {} does not lift through the unit", a.id)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RealizedProjectives { quiver, field: std.field(), objects, units, arrows })
    }

    pub fn from_parts(std: &StandardProjectives, units: Vec<Morphism>, arrows: Vec<Morphism>) -> RealizedProjectives {
        let objects = units.iter().map(|u| u.target().clone()).collect();
        RealizedProjectives { quiver: std.quiver().clone(), field: std.field(), objects, units, arrows }
    }

    pub fn unit(&self, i: usize) -> &Morphism {
        &self.units[i]
    }

    pub fn objects(&self) -> &[Representation] {
        &self.objects
    }

    pub fn arrow_maps(&self) -> &[Morphism] {
        &self.arrows
    }

    /// The block-diagonal unit `(+) P(v_k) -> (+) F P(v_k)`.
    fn sum_unit(&self, source: &DirectSum, target: &DirectSum, vertices: &[usize]) -> Result<Morphism> {
        let entries: Vec<(usize, usize, Morphism)> =
            vertices.iter().enumerate().map(|(k, &v)| (k, k, self.units[v].clone())).collect();
        DirectSum::matrix_morphism(source, target, &entries)
    }
}

impl ProjectiveRealization for RealizedProjectives {
    fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    fn field(&self) -> Field {
        self.field
    }

    fn object(&self, i: usize) -> &Representation {
        &self.objects[i]
    }

    fn arrow_map(&self, a: usize) -> &Morphism {
        &self.arrows[a]
    }
}

/// The long exact cohomology sequence of the cone of `u: P -> F P`, where
/// `P = [P1 -> P0]` presents `M`:
/// `0 -> ker F sigma -> H^-1(cone) -> M -> coker F sigma -> H^0(cone) -> 0`.
#[derive(Clone, Debug)]
pub struct ConeSequence {
    pub y_lower: Representation,
    pub x_lower: Representation,
    pub y_upper: Representation,
    pub x_upper: Representation,
    pub maps: [Morphism; 4],
}

pub fn cone_sequence(pres: &ProjectivePresentation, real: &RealizedProjectives) -> Result<ConeSequence> {
    let sigma = pres.sequence.iota();
    let pi = pres.sequence.pi();
    let f = realize(real, &pres.sigma)?;
    let f_sigma = &f.map;
    let u0 = real.sum_unit(&pres.p0, &f.target, &pres.sigma.target)?;
    let u1 = real.sum_unit(&pres.p1, &f.source, &pres.sigma.source)?;

    let c = direct_sum(&[pres.p0.sum.clone(), f.source.sum.clone()])?;
    let d1 = c.copair(&[u0.clone(), f_sigma.clone()])?;
    let d2 = c.injection(0).compose(&sigma.neg())?.add(&c.injection(1).compose(&u1)?)?;

    let (_, k_incl) = kernel(&d1)?;
    let d2k = factor_through_mono(&k_incl, &d2)?.ok_or_else(|| Error::VerificationFailed("cone differentials do not compose to zero".into()))?;
    let (x_lower, x_proj) = cokernel(&d2k)?;
    let to_m = pi.compose(&c.projection(0))?.compose(&k_incl)?;
    let c_map = descend_through_epi(&x_proj, &to_m)?.ok_or_else(|| Error::VerificationFailed("cone cohomology does not map to M".into()))?;

    let (y_lower, y_incl) = kernel(f_sigma)?;
    let into_c = c.injection(1).compose(&y_incl)?;
    let j = x_proj.compose(&factor_through_mono(&k_incl, &into_c)?.ok_or_else(|| Error::VerificationFailed("ker F sigma is not a cycle".into()))?)?;

    let (y_upper, y_proj) = cokernel(f_sigma)?;
    let eta = descend_through_epi(pi, &y_proj.compose(&u0)?)?
        .ok_or_else(|| Error::VerificationFailed("unit does not descend to M".into()))?;
    let (x_upper, x_up) = cokernel(&d1)?;
    let p = descend_through_epi(&y_proj, &x_up)?.ok_or_else(|| Error::VerificationFailed("coker F sigma does not map to H^0".into()))?;

    Ok(ConeSequence { y_lower, x_lower, y_upper, x_upper, maps: [j, c_map, eta, p] })
}

/// `ker F sigma` and `coker F sigma` only.
pub fn tor_and_tensor(pres: &ProjectivePresentation, real: &RealizedProjectives) -> Result<(Representation, Representation)> {
    let f = realize(real, &pres.sigma)?;
    let (tor, _) = kernel(&f.map)?;
    let (tensor, _) = cokernel(&f.map)?;
    Ok((tor, tensor))
}
