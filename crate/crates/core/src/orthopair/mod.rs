//! Ext-orthogonal pairs generated by an exceptional representation `X`:
//! `Y = X^perp` and `X = ^perp Y`, the reflection into `Y`, and the
//! five-term approximation sequences.

mod closure;
mod cone;
mod five_term;
mod second;

use std::sync::{Arc, OnceLock};

pub use closure::{
    brute_force_closure, generator_from_cogenerator, wide_closure_check, CandidateVerdict, ClosureReport, CogeneratorReport,
    DEFAULT_CAP, DEFAULT_ITERATIONS,
};
pub use cone::{cone_sequence, tor_and_tensor, ConeSequence, RealizedProjectives};
pub use five_term::{
    adjunction_counts, extend_morphism, five_term, five_term_with, splice, AdjunctionReport, FiveTermOptions,
    FiveTermSequence, Ladder, TorsionSplice, TERM_NAMES,
};
pub use second::{second_five_term, SecondFiveTerm};

use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homalg::{
    ext_dim, factor_through_unit, hom_dim, trace_quotient_with, universal_extension_with, BasisOrder, ProjectiveRealization,
    StandardProjectives,
    TraceQuotient, UniversalExtension,
};
use crate::perpalg::{compute_perp_algebra, tensor_with_b, PerpAlgebra};
use crate::quiverrep::{Morphism, Quiver, Representation};

/// The pair generated by an exceptional `X`. The reflected projectives
/// and the perpendicular algebra are computed once, on first use.
pub struct OrthoPair {
    generator: Representation,
    reflected: OnceLock<Result<RealizedProjectives>>,
    perp: OnceLock<Result<PerpAlgebra>>,
}

impl std::fmt::Debug for OrthoPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrthoPair").field("generator", &self.generator).finish_non_exhaustive()
    }
}

pub fn make_pair(x: &Representation) -> Result<Arc<OrthoPair>> {
    let e = ext_dim(x, x)?;
    if e != 0 {
        return Err(Error::NotExceptional { ext_dim: e });
    }
    Ok(Arc::new(OrthoPair { generator: x.clone(), reflected: OnceLock::new(), perp: OnceLock::new() }))
}

impl OrthoPair {
    pub fn generator(&self) -> &Representation {
        &self.generator
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.generator.quiver()
    }

    pub fn field(&self) -> Field {
        self.generator.field()
    }

    /// `Y^{P(i)}` for every vertex, with the induced arrow maps.
    pub fn reflected_projectives(&self) -> Result<&RealizedProjectives> {
        self.reflected
            .get_or_init(|| reflected_projectives(&self.generator, BasisOrder::Canonical))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn perp_algebra(&self) -> Result<&PerpAlgebra> {
        self.perp.get_or_init(|| compute_perp_algebra(self)).as_ref().map_err(Clone::clone)
    }

    pub fn check_same_category(&self, m: &Representation) -> Result<()> {
        self.generator.same_category(m)
    }
}

pub(crate) fn reflected_projectives(x: &Representation, order: BasisOrder) -> Result<RealizedProjectives> {
    let std = StandardProjectives::new(x.quiver(), x.field())?;
    let units = (0..x.quiver().vertex_count())
        .map(|i| Ok(reflect_with(x, std.object(i), order)?.unit))
        .collect::<Result<Vec<_>>>()?;
    RealizedProjectives::from_units(&std, units, factor_through_unit)
}

/// The reflection `M -> Y^M` and the three phases that produced it.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub unit: Morphism,
    pub first_trace: TraceQuotient,
    pub extension: UniversalExtension,
    pub second_trace: TraceQuotient,
}

impl Reflection {
    pub fn target(&self) -> &Representation {
        self.unit.target()
    }
}

pub fn reflect(pair: &OrthoPair, m: &Representation) -> Result<Reflection> {
    pair.check_same_category(m)?;
    reflect_with(&pair.generator, m, BasisOrder::Canonical)
}

/// Trace quotient, universal extension, trace quotient; the result is
/// re-checked to lie in `X^perp`.
pub fn reflect_with(x: &Representation, m: &Representation, order: BasisOrder) -> Result<Reflection> {
    let first_trace = trace_quotient_with(x, m, order)?;
    let extension = universal_extension_with(x, &first_trace.quotient, order)?;
    let second_trace = trace_quotient_with(x, extension.sequence.middle(), order)?;
    let unit = second_trace
        .projection
        .compose(extension.sequence.iota())?
        .compose(&first_trace.projection)?;
    let y = unit.target();
    let (h, e) = (hom_dim(x, y)?, ext_dim(x, y)?);
    if h != 0 || e != 0 {
        return Err(Error::VerificationFailed(format!("reflection leaves Hom = {h}, Ext = {e} against the generator")));
    }
    Ok(Reflection { unit, first_trace, extension, second_trace })
}

/// `Hom(X, M) = 0 = Ext(X, M)`.
pub fn membership_y(pair: &OrthoPair, m: &Representation) -> Result<bool> {
    pair.check_same_category(m)?;
    Ok(hom_dim(&pair.generator, m)? == 0 && ext_dim(&pair.generator, m)? == 0)
}

/// `Tor_1(M, B) = 0 = M (x) B`.
pub fn membership_x(pair: &OrthoPair, m: &Representation) -> Result<bool> {
    pair.check_same_category(m)?;
    let (tor, tensor) = tensor_with_b(pair.perp_algebra()?, m)?;
    Ok(tor.is_zero() && tensor.is_zero())
}
