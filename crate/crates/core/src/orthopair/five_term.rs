use super::cone::cone_sequence;
use super::{membership_x, membership_y, reflect_with, reflected_projectives, OrthoPair};
use crate::error::{Error, Result};
use crate::homalg::{
    check_exact, factor_through_unit, from_zero, hom_dim, hom_space, projective_presentation, solve_in_hom, to_zero,
    trace_quotient, BasisOrder, ExactnessReport, ShortExactSequence,
};
use crate::quiverrep::{cokernel, descend_through_epi, factor_through_mono, image, is_isomorphic, IsoVerdict, Morphism, Representation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FiveTermOptions {
    pub order: BasisOrder,
    /// Skip the comparison against the construction through `B`.
    pub skip_route_b: bool,
}

/// `0 -> Y_M -> X_M -> M -> Y^M -> X^M -> 0`.
#[derive(Clone, Debug)]
pub struct FiveTermSequence {
    pub module: Representation,
    pub y_lower: Representation,
    pub x_lower: Representation,
    pub y_upper: Representation,
    pub x_upper: Representation,
    /// `Y_M -> X_M`, `X_M -> M`, `M -> Y^M`, `Y^M -> X^M`.
    pub maps: [Morphism; 4],
    pub routes_compared: bool,
}

impl FiveTermSequence {
    pub fn chain(&self) -> Vec<Morphism> {
        let mut chain = vec![from_zero(&self.y_lower)];
        chain.extend(self.maps.iter().cloned());
        chain.push(to_zero(&self.x_upper));
        chain
    }

    pub fn exactness(&self) -> Result<ExactnessReport> {
        check_exact(&self.chain())
    }

    pub fn unit(&self) -> &Morphism {
        &self.maps[2]
    }

    pub fn terms(&self) -> [&Representation; 4] {
        [&self.y_lower, &self.x_lower, &self.y_upper, &self.x_upper]
    }

    pub fn dims(&self) -> [Vec<usize>; 5] {
        [
            self.y_lower.dims().to_vec(),
            self.x_lower.dims().to_vec(),
            self.module.dims().to_vec(),
            self.y_upper.dims().to_vec(),
            self.x_upper.dims().to_vec(),
        ]
    }
}

pub const TERM_NAMES: [&str; 4] = ["Y_M", "X_M", "Y^M", "X^M"];

pub fn five_term(pair: &OrthoPair, m: &Representation) -> Result<FiveTermSequence> {
    five_term_with(pair, m, FiveTermOptions::default())
}

/// The right half comes from the reflection `M -> Y^M` and its cokernel;
/// the left half from the cone of the presentation of `M` mapped to its
/// reflection. Unless skipped, all four outer terms are compared with the
/// same cone built from the perpendicular algebra.
pub fn five_term_with(pair: &OrthoPair, m: &Representation, opts: FiveTermOptions) -> Result<FiveTermSequence> {
    pair.check_same_category(m)?;
    let x = pair.generator();
    let pres = projective_presentation(m)?;
    let owned;
    let real = if opts.order == BasisOrder::Canonical {
        pair.reflected_projectives()?
    } else {
        owned = reflected_projectives(x, opts.order)?;
        &owned
    };
    let cone = cone_sequence(&pres, real)?;
    let eta = reflect_with(x, m, opts.order)?.unit;
    let (x_upper, p) = cokernel(&eta)?;
    let [j, c, _, _] = cone.maps;
    let seq = FiveTermSequence {
        module: m.clone(),
        y_lower: cone.y_lower,
        x_lower: cone.x_lower,
        y_upper: eta.target().clone(),
        x_upper,
        maps: [j, c, eta, p],
        routes_compared: !opts.skip_route_b,
    };
    if let Some(at) = seq.exactness()?.first_failure() {
        return Err(Error::VerificationFailed(format!("five-term sequence not exact at joint {at}")));
    }
    if !opts.skip_route_b {
        let pa = pair.perp_algebra()?;
        let other = cone_sequence(&pres, pa.tensor_projectives())?;
        let theirs = [&other.y_lower, &other.x_lower, &other.y_upper, &other.x_upper];
        for ((name, ours), theirs) in TERM_NAMES.iter().zip(seq.terms()).zip(theirs) {
            match is_isomorphic(ours, theirs)? {
                IsoVerdict::IsoWitness(_) => {}
                IsoVerdict::NotIso(why) => return Err(Error::RouteDisagreement(format!("{name}: {why}"))),
                IsoVerdict::Inconclusive => return Err(Error::IsoInconclusive(format!("{name} across routes"))),
            }
        }
    }
    Ok(seq)
}

/// A morphism of five-term sequences over `phi: M -> N`:
/// components on `Y_M`, `X_M`, `M`, `Y^M`, `X^M`.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub maps: [Morphism; 5],
}

impl Ladder {
    pub fn is_invertible(&self) -> bool {
        self.maps.iter().all(Morphism::is_iso)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Morphism::is_zero)
    }
}

fn missing(what: &str) -> Error {
    Error::VerificationFailed(format!("no {what} component extending the morphism"))
}

/// The unique ladder over `phi`, found by solving the lifting problems
/// and verified square by square.
pub fn extend_morphism(phi: &Morphism, em: &FiveTermSequence, en: &FiveTermSequence) -> Result<Ladder> {
    let up = factor_through_unit(em.unit(), &en.unit().compose(phi)?)?.ok_or_else(|| missing("Y^M"))?;
    let xup = descend_through_epi(&em.maps[3], &en.maps[3].compose(&up)?)?.ok_or_else(|| missing("X^M"))?;
    let target = phi.compose(&em.maps[1])?;
    let space = hom_space(&em.x_lower, &en.x_lower)?;
    let xlow = solve_in_hom(&space, |g| en.maps[1].compose(g), &target)?.ok_or_else(|| missing("X_M"))?;
    let ylow = factor_through_mono(&en.maps[0], &xlow.compose(&em.maps[0])?)?.ok_or_else(|| missing("Y_M"))?;
    let ladder = Ladder { maps: [ylow, xlow, phi.clone(), up, xup] };
    for i in 0..4 {
        let left = en.maps[i].compose(&ladder.maps[i])?;
        let right = ladder.maps[i + 1].compose(&em.maps[i])?;
        if left != right {
            return Err(Error::VerificationFailed(format!("ladder square {i} does not commute")));
        }
    }
    Ok(ladder)
}

/// Paired dimensions `dim Hom(X', X_M) = dim Hom(X', M)` and
/// `dim Hom(Y^M, Y') = dim Hom(M, Y')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub x_counts: Vec<(usize, usize)>,
    pub y_counts: Vec<(usize, usize)>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.x_counts.iter().chain(&self.y_counts).all(|(a, b)| a == b)
    }
}

pub fn adjunction_counts(
    pair: &OrthoPair,
    eps: &FiveTermSequence,
    x_probes: &[Representation],
    y_probes: &[Representation],
) -> Result<AdjunctionReport> {
    let mut x_counts = Vec::with_capacity(x_probes.len());
    for (k, xp) in x_probes.iter().enumerate() {
        if !membership_x(pair, xp)? {
            return Err(Error::ProbeNotInClass(format!("X-probe {k}")));
        }
        x_counts.push((hom_dim(xp, &eps.x_lower)?, hom_dim(xp, &eps.module)?));
    }
    let mut y_counts = Vec::with_capacity(y_probes.len());
    for (k, yp) in y_probes.iter().enumerate() {
        if !membership_y(pair, yp)? {
            return Err(Error::ProbeNotInClass(format!("Y-probe {k}")));
        }
        y_counts.push((hom_dim(&eps.y_upper, yp)?, hom_dim(&eps.module, yp)?));
    }
    Ok(AdjunctionReport { x_counts, y_counts })
}

/// `alpha: 0 -> M' -> M -> M'' -> 0`, `beta: 0 -> Y_M -> X_M -> M' -> 0`,
/// `gamma: 0 -> M'' -> Y^M -> X^M -> 0`, with the witnesses that `M'` is a
/// quotient of an object of `X` and `M''` a subobject of one of `Y`.
#[derive(Clone, Debug)]
pub struct TorsionSplice {
    pub m_prime: Representation,
    pub m_double_prime: Representation,
    pub alpha: ShortExactSequence,
    pub beta: ShortExactSequence,
    pub gamma: ShortExactSequence,
    /// `X_M ->> M'` with `X_M` in the left class.
    pub fac_cover: Morphism,
    pub cover_in_x: bool,
    /// `M'' >-> Y^M` with `Y^M` in the right class.
    pub sub_embedding: Morphism,
    pub target_in_y: bool,
    /// Whether the iterated trace of the generator in `M` is all of `M'`.
    pub trace_exhausts: bool,
    /// Splicing the three sequences gives back the four maps.
    pub reassembles: bool,
}

pub fn splice(pair: &OrthoPair, eps: &FiveTermSequence) -> Result<TorsionSplice> {
    let [j, c, eta, p] = &eps.maps;
    let left = image(c)?;
    let right = image(eta)?;
    let alpha = ShortExactSequence::new(left.mono.clone(), right.epi.clone())?;
    let beta = ShortExactSequence::new(j.clone(), left.epi.clone())?;
    let gamma = ShortExactSequence::new(right.mono.clone(), p.clone())?;
    let reassembles = left.mono.compose(&left.epi)? == *c && right.mono.compose(&right.epi)? == *eta;
    let trace = trace_quotient(pair.generator(), &eps.module)?;
    Ok(TorsionSplice {
        trace_exhausts: trace.sub.dims() == left.image.dims(),
        cover_in_x: membership_x(pair, &eps.x_lower)?,
        target_in_y: membership_y(pair, &eps.y_upper)?,
        m_prime: left.image,
        m_double_prime: right.image,
        fac_cover: left.epi,
        sub_embedding: right.mono,
        alpha,
        beta,
        gamma,
        reassembles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Field, Matrix};
    use crate::orthopair::make_pair;
    use crate::quiverrep::corpus::a2;
    use crate::quiverrep::{projective, simple};

    const Q: Field = Field::Rationals;

    #[test]
    fn a2_sequences() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let s2 = simple(&q, Q, 1).unwrap();
        let p1 = projective(&q, Q, 0).unwrap();

        let pair = make_pair(&s2).unwrap();
        let e = five_term(&pair, &p1).unwrap();
        assert_eq!(e.dims(), [vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0], vec![0, 0]]);
        let e = five_term(&pair, &s2).unwrap();
        assert_eq!(e.dims(), [vec![0, 0], vec![0, 1], vec![0, 1], vec![0, 0], vec![0, 0]]);

        let pair = make_pair(&s1).unwrap();
        let e = five_term(&pair, &s2).unwrap();
        assert_eq!(e.dims(), [vec![0, 0], vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn a2_splice_and_ladder() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let s2 = simple(&q, Q, 1).unwrap();
        let p1 = projective(&q, Q, 0).unwrap();
        let pair = make_pair(&s2).unwrap();
        let e = five_term(&pair, &p1).unwrap();
        let sp = splice(&pair, &e).unwrap();
        assert_eq!(sp.m_prime.dims(), &[0, 1]);
        assert_eq!(sp.m_double_prime.dims(), &[1, 0]);
        assert!(sp.reassembles && sp.cover_in_x && sp.target_in_y && sp.trace_exhausts);

        let phi = Morphism::new(&p1, &s1, vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 1)]).unwrap();
        let es = five_term(&pair, &s1).unwrap();
        let ladder = extend_morphism(&phi, &e, &es).unwrap();
        assert!(ladder.maps[3].is_iso());
        assert!(ladder.maps[1].is_zero());
        let id = extend_morphism(&Morphism::identity(&p1), &e, &e).unwrap();
        assert!(id.is_invertible());
        let zero = extend_morphism(&Morphism::zero(&p1, &s1), &e, &es).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn permuted_recomputation_is_isomorphic() {
        let q = crate::quiverrep::corpus::kronecker();
        let x = crate::quiverrep::corpus::kronecker_preprojective(Q, 1).unwrap();
        let pair = make_pair(&x).unwrap();
        let m = crate::quiverrep::corpus::kronecker_preinjective(Q, 2).unwrap();
        let e = five_term(&pair, &m).unwrap();
        let opts = FiveTermOptions { order: BasisOrder::Permuted(11), skip_route_b: true };
        let e2 = five_term_with(&pair, &m, opts).unwrap();
        let ladder = extend_morphism(&Morphism::identity(&m), &e, &e2).unwrap();
        assert!(ladder.is_invertible());
        let _ = q;
    }
}
