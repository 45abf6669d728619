use super::exact::ShortExactSequence;
use super::hom::{hom_system, vectorize};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};
use crate::quiverrep::{Morphism, Representation};

/// A per-arrow family `zeta_a: M_s(a) -> N_t(a)`.
pub type Cocycle = Vec<Matrix>;

/// `Ext^1(M, N)` as the cokernel of the commuting-square map. Basis cocycle
/// `j` is the unit vector at the `j`-th row on which the cokernel
/// projection restricts to the identity.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    source: Representation,
    target: Representation,
    projection: Matrix,
    basis: Vec<Cocycle>,
}

pub fn ext_space(m: &Representation, n: &Representation) -> Result<ExtSpace> {
    let sys = hom_system(m, n)?;
    let (kernel, rows) = sys.matrix.transpose().kernel_data();
    let projection = kernel.transpose();
    let field = m.field();
    let q = m.quiver();
    let basis = rows
        .iter()
        .map(|&row| {
            let mut zeta = zero_cocycle(m, n);
            let a = sys.eq_offsets.partition_point(|&o| o <= row) - 1;
            let local = row - sys.eq_offsets[a];
            let ds = m.dim(q.arrow(a).source);
            zeta[a].set(local / ds, local % ds, field.one());
            zeta
        })
        .collect();
    Ok(ExtSpace { source: m.clone(), target: n.clone(), projection, basis })
}

/// `dim Ext^1(M, N)` without materializing a basis.
pub fn ext_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let sys = hom_system(m, n)?;
    Ok(sys.matrix.rows() - sys.matrix.rank())
}

pub fn is_exceptional(x: &Representation) -> Result<bool> {
    Ok(ext_dim(x, x)? == 0)
}

pub fn zero_cocycle(m: &Representation, n: &Representation) -> Cocycle {
    m.quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(m.field(), n.dim(a.target), m.dim(a.source)))
        .collect()
}

fn check_cocycle_shape(m: &Representation, n: &Representation, zeta: &[Matrix]) -> Result<()> {
    let arrows = m.quiver().arrows();
    if zeta.len() != arrows.len() {
        return Err(Error::InvalidShape(format!("cocycle has {} components for {} arrows", zeta.len(), arrows.len())));
    }
    for (a, z) in arrows.iter().zip(zeta) {
        if z.shape() != (n.dim(a.target), m.dim(a.source)) || z.field() != m.field() {
            return Err(Error::InvalidShape(format!(
                "cocycle component for arrow {} is {}x{}, expected {}x{}",
                a.id,
                z.rows(),
                z.cols(),
                n.dim(a.target),
                m.dim(a.source)
            )));
        }
    }
    Ok(())
}

impl ExtSpace {
    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Cocycle] {
        &self.basis
    }

    /// Coordinates of the class of `zeta` in the cocycle basis.
    pub fn class_of(&self, zeta: &[Matrix]) -> Result<Vec<Scalar>> {
        check_cocycle_shape(&self.source, &self.target, zeta)?;
        let v = Matrix::column_vector(self.source.field(), vectorize(zeta));
        Ok(self.projection.mul(&v)?.column(0))
    }

    pub fn is_trivial(&self, zeta: &[Matrix]) -> Result<bool> {
        Ok(self.class_of(zeta)?.iter().all(Scalar::is_zero))
    }

    pub fn cocycle(&self, coeffs: &[Scalar]) -> Result<Cocycle> {
        let mut zeta = zero_cocycle(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                for (z, bz) in zeta.iter_mut().zip(b) {
                    *z = z.add(&bz.scale(c))?;
                }
            }
        }
        Ok(zeta)
    }
}

/// Pullback along `g: M' -> M`: `(zeta_a g_s)`.
pub fn pullback(zeta: &[Matrix], g: &Morphism) -> Result<Cocycle> {
    let q = g.source().quiver();
    q.arrows().iter().zip(zeta).map(|(a, z)| z.mul(g.map(a.source))).collect()
}

/// Pushforward along `h: N -> N'`: `(h_t zeta_a)`.
pub fn pushforward(h: &Morphism, zeta: &[Matrix]) -> Result<Cocycle> {
    let q = h.source().quiver();
    q.arrows().iter().zip(zeta).map(|(a, z)| h.map(a.target).mul(z)).collect()
}

/// The extension `0 -> N -> E -> M -> 0` with `E_i = N_i (+) M_i` and arrow
/// matrices `[[N_a, zeta_a], [0, M_a]]`.
pub fn realize_extension(m: &Representation, n: &Representation, zeta: &[Matrix]) -> Result<ShortExactSequence> {
    m.same_category(n)?;
    check_cocycle_shape(m, n, zeta)?;
    let field = m.field();
    let q = m.quiver();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| n.dim(v) + m.dim(v)).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let mut e = Matrix::zeros(field, dims[a.target], dims[a.source]);
            e.paste(0, 0, n.map(idx));
            e.paste(0, n.dim(a.source), &zeta[idx]);
            e.paste(n.dim(a.target), n.dim(a.source), m.map(idx));
            e
        })
        .collect();
    let e = Representation::new(q, field, dims.clone(), maps)?;
    let mut iota = Vec::with_capacity(dims.len());
    let mut pi = Vec::with_capacity(dims.len());
    for v in 0..dims.len() {
        let mut i = Matrix::zeros(field, dims[v], n.dim(v));
        i.paste(0, 0, &Matrix::identity(field, n.dim(v)));
        iota.push(i);
        let mut p = Matrix::zeros(field, m.dim(v), dims[v]);
        p.paste(0, n.dim(v), &Matrix::identity(field, m.dim(v)));
        pi.push(p);
    }
    let iota = Morphism::from_parts(n, &e, iota)?;
    let pi = Morphism::from_parts(&e, m, pi)?;
    ShortExactSequence::new(iota, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::quiverrep::{direct_sum, projective, simple, Quiver};

    const Q: Field = Field::Rationals;

    #[test]
    fn a2_ext_examples() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let s1 = simple(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        let p1 = projective(&a2, Q, 0).unwrap();
        assert_eq!(ext_space(&s1, &s2).unwrap().dim(), 1);
        assert_eq!(ext_space(&s2, &s1).unwrap().dim(), 0);
        for m in [&s1, &s2, &p1] {
            assert_eq!(ext_dim(&p1, m).unwrap(), 0);
        }
        assert!(is_exceptional(&s1).unwrap());
    }

    #[test]
    fn realized_extensions() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let s1 = simple(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        let ext = ext_space(&s1, &s2).unwrap();
        let ses = realize_extension(&s1, &s2, &ext.basis()[0]).unwrap();
        assert_eq!(ses.middle(), &projective(&a2, Q, 0).unwrap());
        let split = realize_extension(&s1, &s2, &zero_cocycle(&s1, &s2)).unwrap();
        assert_eq!(split.middle(), &direct_sum(&[s2.clone(), s1.clone()]).unwrap().sum);
        assert!(matches!(realize_extension(&s1, &s2, &[]), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn kronecker_regular_module_is_not_exceptional() {
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let m = Representation::new(&kr, Q, vec![1, 1], vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 1, 1)]).unwrap();
        assert_eq!(ext_dim(&m, &m).unwrap(), 1);
        assert!(!is_exceptional(&m).unwrap());
        let s1 = simple(&kr, Q, 0).unwrap();
        let s2 = simple(&kr, Q, 1).unwrap();
        let ext = ext_space(&s1, &s2).unwrap();
        assert_eq!(ext.dim(), 2);
        let ses = realize_extension(&s1, &s2, &ext.basis()[1]).unwrap();
        assert_eq!(ses.middle().dims(), &[1, 1]);
    }

    #[test]
    fn split_iff_trivial_class() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let p1 = projective(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        // Hom(P1, S2) = 0 and Ext(P1, S2) = 0, so every cocycle is a coboundary.
        let ext = ext_space(&p1, &s2).unwrap();
        let zeta = vec![Matrix::from_rows_i64(Q, &[&[5]])];
        assert!(ext.is_trivial(&zeta).unwrap());
    }
}
