//! Kernels, cokernels, images, sub- and quotient representations and
//! finite direct sums, all computed vertexwise with canonical bases.

use std::sync::Arc;

use super::quiver::Quiver;
use super::rep::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// The subrepresentation spanned vertexwise by the columns of `bases`
/// (each of full column rank), with its inclusion.
pub fn subrep(m: &Representation, bases: Vec<Matrix>) -> Result<(Representation, Morphism)> {
    let q = m.quiver();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (idx, a) in q.arrows().iter().enumerate() {
        let image = m.map(idx).mul(&bases[a.source])?;
        let c = bases[a.target]
            .solve_matrix(&image)?
            .ok_or_else(|| Error::VerificationFailed(format!("subspace not stable under arrow {}", a.id)))?;
        maps.push(c);
    }
    let sub = Representation::new(q, m.field(), dims, maps)?;
    let incl = Morphism::from_parts(&sub, m, bases)?;
    Ok((sub, incl))
}

/// `ker(phi)` with its inclusion into the source.
pub fn kernel(phi: &Morphism) -> Result<(Representation, Morphism)> {
    let bases = phi.maps().iter().map(Matrix::kernel_basis).collect();
    subrep(phi.source(), bases)
}

/// `coker(phi)` with the projection from the target.
pub fn cokernel(phi: &Morphism) -> Result<(Representation, Morphism)> {
    let n = phi.target();
    let q = n.quiver();
    let data: Vec<(Matrix, Vec<usize>)> = phi.maps().iter().map(Matrix::cokernel_data).collect();
    let dims = data.iter().map(|(p, _)| p.rows()).collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (idx, a) in q.arrows().iter().enumerate() {
        let (proj_t, _) = &data[a.target];
        let (_, section_s) = &data[a.source];
        maps.push(proj_t.mul(&n.map(idx).select_cols(section_s))?);
    }
    let coker = Representation::new(q, n.field(), dims, maps)?;
    let proj = Morphism::from_parts(n, &coker, data.into_iter().map(|(p, _)| p).collect())?;
    Ok((coker, proj))
}

/// `im(phi)` with the factorization `source ->> im >-> target`.
pub struct Image {
    pub image: Representation,
    pub epi: Morphism,
    pub mono: Morphism,
}

pub fn image(phi: &Morphism) -> Result<Image> {
    let bases: Vec<Matrix> = phi.maps().iter().map(Matrix::column_space).collect();
    let (image, mono) = subrep(phi.target(), bases.clone())?;
    let mut epi_maps = Vec::with_capacity(bases.len());
    for (b, m) in bases.iter().zip(phi.maps()) {
        epi_maps.push(b.solve_matrix(m)?.expect("map lands in its column space"));
    }
    let epi = Morphism::from_parts(phi.source(), &image, epi_maps)?;
    Ok(Image { image, epi, mono })
}

/// The quotient `M / U` for a subrepresentation given by its inclusion.
pub fn quotient(inclusion: &Morphism) -> Result<(Representation, Morphism)> {
    cokernel(inclusion)
}

/// Finite direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub parts: Vec<Representation>,
    offsets: Vec<Vec<usize>>,
}

pub fn direct_sum(parts: &[Representation]) -> Result<DirectSum> {
    let first = parts.first().ok_or_else(|| Error::InvalidShape("empty direct sum needs a quiver".into()))?;
    direct_sum_in(first.quiver(), first.field(), parts)
}

/// Direct sum that is also defined for an empty list (the zero object).
pub fn direct_sum_in(quiver: &Arc<Quiver>, field: Field, parts: &[Representation]) -> Result<DirectSum> {
    for p in parts {
        if p.field() != field {
            return Err(Error::FieldMismatch(format!("summand over {} in a sum over {field}", p.field())));
        }
        if !(Arc::ptr_eq(p.quiver(), quiver) || **p.quiver() == **quiver) {
            return Err(Error::InvalidShape("summands over different quivers".into()));
        }
    }
    let n = quiver.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dim(v)).sum()).collect();
    let maps = (0..quiver.arrows().len())
        .map(|idx| Matrix::block_diag(field, &parts.iter().map(|p| p.map(idx)).collect::<Vec<_>>()))
        .collect();
    let sum = Representation::new(quiver, field, dims, maps)?;
    let mut at = vec![0usize; n];
    let offsets = parts
        .iter()
        .map(|p| {
            let here = at.clone();
            for (a, d) in at.iter_mut().zip(p.dims()) {
                *a += d;
            }
            here
        })
        .collect();
    Ok(DirectSum { sum, parts: parts.to_vec(), offsets })
}

impl DirectSum {
    /// The morphism `source.sum -> target.sum` whose `(row, col)` block is
    /// the sum of the listed components `source.parts[col] -> target.parts[row]`.
    pub fn matrix_morphism(source: &DirectSum, target: &DirectSum, entries: &[(usize, usize, Morphism)]) -> Result<Morphism> {
        let (so, to) = (&source.offsets, &target.offsets);
        let mut maps: Vec<Matrix> = Morphism::zero(&source.sum, &target.sum).maps().to_vec();
        for (row, col, m) in entries {
            if m.source() != &source.parts[*col] || m.target() != &target.parts[*row] {
                return Err(Error::InvalidShape(format!("entry ({row}, {col}) does not match the summands")));
            }
            for (v, block) in m.maps().iter().enumerate() {
                maps[v].add_block(to[*row][v], so[*col][v], block);
            }
        }
        Morphism::from_parts(&source.sum, &target.sum, maps)
    }

    /// `[f_1 ... f_k]: sum of parts -> target`.
    pub fn copair(&self, maps: &[Morphism]) -> Result<Morphism> {
        let target = maps.first().map(|m| m.target().clone());
        let Some(target) = target else {
            return Err(Error::InvalidShape("copair of no maps".into()));
        };
        if maps.len() != self.parts.len() {
            return Err(Error::InvalidShape(format!("{} maps for {} summands", maps.len(), self.parts.len())));
        }
        let offsets = &self.offsets;
        let mut total: Vec<Matrix> = Morphism::zero(&self.sum, &target).maps().to_vec();
        for (k, (m, part)) in maps.iter().zip(&self.parts).enumerate() {
            if m.source() != part || m.target() != &target {
                return Err(Error::InvalidShape(format!("copair map {k} does not match its summand")));
            }
            for (v, block) in m.maps().iter().enumerate() {
                total[v].add_block(0, offsets[k][v], block);
            }
        }
        Morphism::from_parts(&self.sum, &target, total)
    }

    /// The inclusion of summand `k`.
    pub fn injection(&self, k: usize) -> Morphism {
        let p = &self.parts[k];
        let maps = (0..p.dims().len()).map(|v| self.unit_block(k, v)).collect();
        Morphism::from_parts(p, &self.sum, maps).expect("block shapes match")
    }

    /// The projection onto summand `k`.
    pub fn projection(&self, k: usize) -> Morphism {
        let p = &self.parts[k];
        let maps = (0..p.dims().len()).map(|v| self.unit_block(k, v).transpose()).collect();
        Morphism::from_parts(&self.sum, p, maps).expect("block shapes match")
    }

    fn unit_block(&self, k: usize, v: usize) -> Matrix {
        let d = self.parts[k].dim(v);
        let mut i = Matrix::zeros(self.sum.field(), self.sum.dim(v), d);
        i.paste(self.offsets[k][v], 0, &Matrix::identity(self.sum.field(), d));
        i
    }
}

/// The unique `h` with `mono ∘ h = g`, if `g` lands in the image of the
/// injective `mono`.
pub fn factor_through_mono(mono: &Morphism, g: &Morphism) -> Result<Option<Morphism>> {
    let mut maps = Vec::with_capacity(g.maps().len());
    for (m, gv) in mono.maps().iter().zip(g.maps()) {
        match m.solve_matrix(gv)? {
            Some(h) => maps.push(h),
            None => return Ok(None),
        }
    }
    Ok(Some(Morphism::from_parts(g.source(), mono.source(), maps)?))
}

/// The unique `h` with `h ∘ epi = g`, if `g` kills the kernel of the
/// surjective `epi`.
pub fn descend_through_epi(epi: &Morphism, g: &Morphism) -> Result<Option<Morphism>> {
    let mut maps = Vec::with_capacity(g.maps().len());
    for (e, gv) in epi.maps().iter().zip(g.maps()) {
        match e.transpose().solve_matrix(&gv.transpose())? {
            Some(ht) => {
                let h = ht.transpose();
                if &h.mul(e)? != gv {
                    return Ok(None);
                }
                maps.push(h);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Morphism::from_parts(epi.target(), g.target(), maps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::standard::{projective, simple};

    const Q: Field = Field::Rationals;

    fn a2() -> Arc<Quiver> {
        Quiver::from_triples(2, &[("a", 0, 1)]).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let p1 = projective(&a2(), Q, 0).unwrap();
        let (k, incl) = kernel(&Morphism::identity(&p1)).unwrap();
        assert!(k.is_zero());
        assert!(incl.is_injective());
    }

    #[test]
    fn cokernel_of_zero_map_is_target() {
        let q = a2();
        let p1 = projective(&q, Q, 0).unwrap();
        let z = Representation::zero(&q, Q);
        let (c, proj) = cokernel(&Morphism::zero(&z, &p1)).unwrap();
        assert_eq!(c, p1);
        assert!(proj.is_iso());
    }

    #[test]
    fn image_of_top_projection() {
        let q = a2();
        let p1 = projective(&q, Q, 0).unwrap();
        let s1 = simple(&q, Q, 0).unwrap();
        let phi = Morphism::new(&p1, &s1, vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 1)]).unwrap();
        let im = image(&phi).unwrap();
        assert_eq!(im.image, s1);
        assert!(im.epi.is_surjective());
        assert!(im.mono.is_iso());
        let (k, _) = kernel(&phi).unwrap();
        assert_eq!(k.dims(), &[0, 1]);
    }

    #[test]
    fn direct_sums() {
        let q = a2();
        let p1 = projective(&q, Q, 0).unwrap();
        let z = Representation::zero(&q, Q);
        assert_eq!(direct_sum(&[p1.clone(), z]).unwrap().sum, p1);
        let s = direct_sum(&[simple(&q, Q, 0).unwrap(), simple(&q, Q, 1).unwrap()]).unwrap();
        assert_eq!(s.sum.dims(), &[1, 1]);
        assert!(s.sum.map(0).is_zero());
        let pp = direct_sum(&[p1.clone(), p1.clone()]).unwrap();
        assert_eq!(pp.sum.dims(), &[2, 2]);
        assert_eq!(pp.sum.map(0), &Matrix::identity(Q, 2));
        let f5 = simple(&q, Field::Prime(5), 0).unwrap();
        assert!(matches!(direct_sum(&[p1, f5]), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn rank_nullity_per_vertex() {
        let q = a2();
        let p1 = projective(&q, Q, 0).unwrap();
        let pp = direct_sum(&[p1.clone(), p1.clone()]).unwrap();
        let phi = pp.copair(&[Morphism::identity(&p1), Morphism::identity(&p1).scale(&Q.from_i64(3))]).unwrap();
        let (k, _) = kernel(&phi).unwrap();
        let im = image(&phi).unwrap();
        for v in 0..2 {
            assert_eq!(k.dim(v) + im.image.dim(v), pp.sum.dim(v));
        }
    }
}
