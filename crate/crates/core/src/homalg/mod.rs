//! Hom and Ext spaces, extensions, projective presentations, traces and
//! universal extensions, and exactness checks. Everything is degree one:
//! path algebras of acyclic quivers are hereditary.

mod exact;
mod ext;
mod hom;
mod presentation;
mod trace;

pub use exact::{check_exact, from_zero, to_zero, ExactnessReport, JointReport, ShortExactSequence};
pub use ext::{ext_dim, ext_space, is_exceptional, pullback, pushforward, realize_extension, zero_cocycle, Cocycle, ExtSpace};
pub use hom::{factor_through_unit, hom_dim, hom_space, solve_in_hom, HomSpace};
pub use presentation::{
    hom_into, projective_presentation, realize, PathTerm, ProjMap, ProjectivePresentation, ProjectiveRealization,
    RealizedMap, StandardProjectives,
};
pub use trace::{
    trace_quotient, trace_quotient_with, universal_extension, universal_extension_with, BasisOrder, TraceLayer,
    TraceQuotient, UniversalExtension,
};
