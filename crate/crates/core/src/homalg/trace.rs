use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::exact::ShortExactSequence;
use super::ext::{ext_dim, ext_space, realize_extension};
use super::hom::hom_space;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::quiverrep::{cokernel, direct_sum_in, image, kernel, Morphism, Representation};

/// Order in which internal bases are consumed. Results agree up to unique
/// isomorphism for every choice; non-canonical orders exist to test that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BasisOrder {
    #[default]
    Canonical,
    Reversed,
    /// Seeded shuffle with random nonzero rescaling.
    Permuted(u64),
}

impl BasisOrder {
    /// Index order and scale factor for a basis of length `n`.
    pub fn arrange(&self, field: Field, n: usize) -> Vec<(usize, Scalar)> {
        match *self {
            BasisOrder::Canonical => (0..n).map(|i| (i, field.one())).collect(),
            BasisOrder::Reversed => (0..n).rev().map(|i| (i, field.one())).collect(),
            BasisOrder::Permuted(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let mut idx: Vec<usize> = (0..n).collect();
                idx.shuffle(&mut rng);
                idx.into_iter()
                    .map(|i| {
                        let s = field.from_i64(rng.gen_range(1..=4));
                        (i, if s.is_zero() { field.one() } else { s })
                    })
                    .collect()
            }
        }
    }
}

/// One step of the iterated trace: `X^power ->> image` inside the current quotient.
#[derive(Clone, Debug)]
pub struct TraceLayer {
    pub power: usize,
    pub image: Representation,
    pub cover: Morphism,
}

#[derive(Clone, Debug)]
pub struct TraceQuotient {
    pub sub: Representation,
    pub inclusion: Morphism,
    pub quotient: Representation,
    pub projection: Morphism,
    pub layers: Vec<TraceLayer>,
}

/// Iterated trace of `X` in `M`: quotient by the images of all maps from
/// `X` until `Hom(X, M / M') = 0`.
pub fn trace_quotient(x: &Representation, m: &Representation) -> Result<TraceQuotient> {
    trace_quotient_with(x, m, BasisOrder::Canonical)
}

pub fn trace_quotient_with(x: &Representation, m: &Representation, order: BasisOrder) -> Result<TraceQuotient> {
    x.same_category(m)?;
    let mut cur = m.clone();
    let mut projection = Morphism::identity(m);
    let mut layers = Vec::new();
    loop {
        let h = hom_space(x, &cur)?;
        if h.dim() == 0 {
            break;
        }
        let maps: Vec<Morphism> =
            order.arrange(x.field(), h.dim()).into_iter().map(|(i, s)| h.basis()[i].scale(&s)).collect();
        let power = direct_sum_in(x.quiver(), x.field(), &vec![x.clone(); maps.len()])?;
        let cover = power.copair(&maps)?;
        let im = image(&cover)?;
        let (next, p) = cokernel(&im.mono)?;
        layers.push(TraceLayer { power: maps.len(), image: im.image, cover: im.epi });
        projection = p.compose(&projection)?;
        cur = next;
    }
    let (sub, inclusion) = kernel(&projection)?;
    Ok(TraceQuotient { sub, inclusion, quotient: cur, projection, layers })
}

/// `0 -> N -> E -> X^e -> 0` realizing the diagonal class of a basis of
/// `Ext(X, N)`, so that `Ext(X, E) = 0` when `X` is exceptional.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub power: usize,
    pub sequence: ShortExactSequence,
}

pub fn universal_extension(x: &Representation, n: &Representation) -> Result<UniversalExtension> {
    universal_extension_with(x, n, BasisOrder::Canonical)
}

pub fn universal_extension_with(x: &Representation, n: &Representation, order: BasisOrder) -> Result<UniversalExtension> {
    let ext = ext_space(x, n)?;
    let e = ext.dim();
    let field = x.field();
    let q = x.quiver();
    let power = direct_sum_in(q, field, &vec![x.clone(); e])?;
    let arranged = order.arrange(field, e);
    let zeta: Vec<Matrix> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let blocks: Vec<Matrix> = arranged.iter().map(|(i, s)| ext.basis()[*i][idx].scale(s)).collect();
            Matrix::hstack(field, n.dim(a.target), &blocks.iter().collect::<Vec<_>>())
        })
        .collect::<Result<_>>()?;
    let sequence = realize_extension(&power.sum, n, &zeta)?;
    let remaining = ext_dim(x, sequence.middle())?;
    if remaining != 0 {
        return Err(Error::VerificationFailed(format!("universal extension leaves Ext of dimension {remaining}")));
    }
    Ok(UniversalExtension { power: e, sequence })
}
