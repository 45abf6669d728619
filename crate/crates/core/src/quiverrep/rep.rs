use std::fmt;
use std::sync::Arc;

use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};

/// A finite-dimensional representation: a vector space `k^{d_i}` at each
/// vertex and, for each arrow `a: s -> t`, a `d_t x d_s` matrix acting on
/// column vectors. Cheap to clone.
#[derive(Clone)]
pub struct Representation {
    inner: Arc<RepData>,
}

struct RepData {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        let (a, b) = (&self.inner, &other.inner);
        (Arc::ptr_eq(&a.quiver, &b.quiver) || a.quiver == b.quiver)
            && a.field == b.field
            && a.dims == b.dims
            && a.maps == b.maps
    }
}

impl Eq for Representation {}

impl Representation {
    pub fn new(quiver: &Arc<Quiver>, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidShape(format!(
                "{} dimensions for a quiver with {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidShape(format!("{} matrices for {} arrows", maps.len(), quiver.arrows().len())));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::FieldMismatch(format!("matrix for arrow {} is over {}", a.id, m.field())));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidShape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { inner: Arc::new(RepData { quiver: quiver.clone(), field, dims, maps }) })
    }

    pub fn zero(quiver: &Arc<Quiver>, field: Field) -> Representation {
        let n = quiver.vertex_count();
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation::new(quiver, field, vec![0; n], maps).expect("zero representation is well formed")
    }

    /// The representation with `k^{dims}` and all arrows zero.
    pub fn semisimple(quiver: &Arc<Quiver>, field: Field, dims: Vec<usize>) -> Result<Representation> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims.get(a.target).copied().unwrap_or(0), dims.get(a.source).copied().unwrap_or(0)))
            .collect();
        Representation::new(quiver, field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.inner.quiver
    }

    pub fn field(&self) -> Field {
        self.inner.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.inner.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.inner.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.inner.maps
    }

    /// Matrix of a path starting at `from` (identity for the empty path).
    pub fn path_map(&self, from: usize, path: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim(from));
        for &a in path {
            m = self.map(a).mul(&m).expect("path is composable");
        }
        m
    }

    pub fn same_category(&self, other: &Representation) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field(), other.field())));
        }
        if !(Arc::ptr_eq(self.quiver(), other.quiver()) || self.quiver() == other.quiver()) {
            return Err(Error::InvalidShape("representations of different quivers".into()));
        }
        Ok(())
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}/{}", self.dims(), self.field())?;
        for (a, m) in self.quiver().arrows().iter().zip(self.maps()) {
            write!(f, " {}={:?}", a.id, m)?;
        }
        Ok(())
    }
}

/// A family of vertex matrices `phi_i: M_i -> N_i` commuting with every arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: &Representation, target: &Representation, maps: Vec<Matrix>) -> Result<Morphism> {
        let m = Morphism::from_parts(source, target, maps)?;
        m.check_commutes()?;
        Ok(m)
    }

    /// Shape checks only; the caller vouches for the commuting squares.
    pub(crate) fn from_parts(source: &Representation, target: &Representation, maps: Vec<Matrix>) -> Result<Morphism> {
        source.same_category(target)?;
        if maps.len() != source.dims().len() {
            return Err(Error::InvalidShape(format!("{} vertex maps for {} vertices", maps.len(), source.dims().len())));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.shape() != (target.dim(v), source.dim(v)) || m.field() != source.field() {
                return Err(Error::InvalidShape(format!(
                    "vertex {} map is {}x{}, expected {}x{}",
                    v + 1,
                    m.rows(),
                    m.cols(),
                    target.dim(v),
                    source.dim(v)
                )));
            }
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), maps })
    }

    fn check_commutes(&self) -> Result<()> {
        for (idx, a) in self.source.quiver().arrows().iter().enumerate() {
            let lhs = self.maps[a.target].mul(self.source.map(idx))?;
            let rhs = self.target.map(idx).mul(&self.maps[a.source])?;
            if lhs != rhs {
                return Err(Error::NotAMorphism(a.id.clone()));
            }
        }
        Ok(())
    }

    pub fn commutes(&self) -> bool {
        self.check_commutes().is_ok()
    }

    pub fn identity(m: &Representation) -> Morphism {
        let maps = m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        Morphism { source: m.clone(), target: m.clone(), maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Morphism {
        let maps = (0..source.dims().len())
            .map(|v| Matrix::zeros(source.field(), target.dim(v), source.dim(v)))
            .collect();
        Morphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target != self.source {
            return Err(Error::InvalidChain(0));
        }
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect::<Result<Vec<_>>>()?;
        Ok(Morphism { source: first.source.clone(), target: self.target.clone(), maps })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_parallel(other)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), maps })
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(Matrix::neg).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(|m| m.scale(s)).collect() }
    }

    fn check_parallel(&self, other: &Morphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidShape("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(Matrix::rank).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().enumerate().all(|(v, m)| m.rank() == self.source.dim(v))
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().enumerate().all(|(v, m)| m.rank() == self.target.dim(v))
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let maps = self.maps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), maps })
    }

    /// Same matrices, re-typed onto equal-but-distinct endpoints.
    pub fn retarget(&self, source: &Representation, target: &Representation) -> Result<Morphism> {
        if source != &self.source || target != &self.target {
            return Err(Error::InvalidShape("retarget onto unequal representations".into()));
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), maps: self.maps.clone() })
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism {:?} -> {:?}:", self.source.dims(), self.target.dims())?;
        for (v, m) in self.maps.iter().enumerate() {
            write!(f, " {}:{:?}", v + 1, m)?;
        }
        Ok(())
    }
}
