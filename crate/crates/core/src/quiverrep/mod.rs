//! Acyclic quivers, their finite-dimensional representations and
//! morphisms, and the abelian-category operations on them.

mod abelian;
pub mod corpus;
mod iso;
mod quiver;
mod rep;
mod standard;

pub use abelian::{
    cokernel, descend_through_epi, direct_sum, direct_sum_in, factor_through_mono, image, kernel, quotient, subrep,
    DirectSum, Image,
};
pub use iso::{is_isomorphic, is_isomorphic_with, IsoVerdict, DEFAULT_ISO_BUDGET};
pub use quiver::{validate_quiver, Arrow, Path, Quiver};
pub use rep::{Morphism, Representation};
pub use standard::{injective, projective, simple};
