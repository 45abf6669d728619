use crate::error::Result;
use crate::exactlin::{Matrix, Scalar, SparseMatrix};
use crate::quiverrep::{Morphism, Representation};

/// The linear map `Phi: (+)_i Hom(M_i, N_i) -> (+)_a Hom(M_s(a), N_t(a))`,
/// `Phi(phi)_a = phi_t M_a - N_a phi_s`. Unknowns and equations are
/// vectorized row-major, vertex by vertex and arrow by arrow.
pub(crate) struct HomSystem {
    pub matrix: SparseMatrix,
    pub var_offsets: Vec<usize>,
    pub eq_offsets: Vec<usize>,
}

pub(crate) fn hom_system(m: &Representation, n: &Representation) -> Result<HomSystem> {
    m.same_category(n)?;
    let field = m.field();
    let q = m.quiver();
    let mut var_offsets = Vec::with_capacity(q.vertex_count() + 1);
    let mut total = 0;
    for v in 0..q.vertex_count() {
        var_offsets.push(total);
        total += n.dim(v) * m.dim(v);
    }
    var_offsets.push(total);
    let mut eq_offsets = Vec::with_capacity(q.arrows().len() + 1);
    let mut eqs = 0;
    for a in q.arrows() {
        eq_offsets.push(eqs);
        eqs += n.dim(a.target) * m.dim(a.source);
    }
    eq_offsets.push(eqs);

    let mut phi = SparseMatrix::zeros(field, eqs, total);
    for (idx, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ds, dt, et, es) = (m.dim(s), m.dim(t), n.dim(t), n.dim(s));
        let ma = m.map(idx);
        let na = n.map(idx);
        for r in 0..et {
            for c in 0..ds {
                let row = eq_offsets[idx] + r * ds + c;
                for k in 0..dt {
                    let v = ma.get(k, c);
                    if !v.is_zero() {
                        phi.add_at(row, var_offsets[t] + r * dt + k, v);
                    }
                }
                for k in 0..es {
                    let v = na.get(r, k);
                    if !v.is_zero() {
                        phi.add_at(row, var_offsets[s] + k * ds + c, &field.neg(v));
                    }
                }
            }
        }
    }
    Ok(HomSystem { matrix: phi, var_offsets, eq_offsets })
}

pub(crate) fn vectorize(maps: &[Matrix]) -> Vec<Scalar> {
    maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// `Hom(M, N)` with its canonical basis; basis element `j` is the kernel
/// vector of the commuting-square system with a one in free position `j`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    basis: Vec<Morphism>,
    free: Vec<usize>,
}

pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    let sys = hom_system(m, n)?;
    let (kernel, free) = sys.matrix.kernel_data();
    let basis = (0..kernel.cols())
        .map(|j| {
            let col = kernel.column(j);
            let maps = unvectorize(m, n, &col, &sys.var_offsets);
            Morphism::from_parts(m, n, maps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis, free })
}

/// `dim Hom(M, N)` without materializing a basis.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let sys = hom_system(m, n)?;
    Ok(sys.matrix.cols() - sys.matrix.rank())
}

fn unvectorize(m: &Representation, n: &Representation, col: &[Scalar], offsets: &[usize]) -> Vec<Matrix> {
    (0..m.dims().len())
        .map(|v| {
            let data = col[offsets[v]..offsets[v + 1]].to_vec();
            Matrix::from_vec(m.field(), n.dim(v), m.dim(v), data).expect("slice has the block size")
        })
        .collect()
}

impl HomSpace {
    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    /// Coordinates of `phi` in the canonical basis: its entries at the free positions.
    pub fn coordinates(&self, phi: &Morphism) -> Vec<Scalar> {
        let flat = vectorize(phi.maps());
        self.free.iter().map(|&i| flat[i].clone()).collect()
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Result<Morphism> {
        let field = self.source.field();
        let mut maps = Morphism::zero(&self.source, &self.target).maps().to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (total, m) in maps.iter_mut().zip(b.maps()) {
                for r in 0..m.rows() {
                    for (col, v) in m.row(r).iter().enumerate() {
                        if !v.is_zero() {
                            total.add_at(r, col, &field.mul(c, v));
                        }
                    }
                }
            }
        }
        Morphism::from_parts(&self.source, &self.target, maps)
    }
}

/// Finds `g` in `space` with `op(g) = target` for a linear `op`, if any.
pub fn solve_in_hom(
    space: &HomSpace,
    op: impl Fn(&Morphism) -> Result<Morphism>,
    target: &Morphism,
) -> Result<Option<Morphism>> {
    let field = space.source.field();
    let rhs = vectorize(target.maps());
    let columns = space.basis.iter().map(|b| Ok(vectorize(op(b)?.maps()))).collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_columns(field, rhs.len(), &columns);
    match a.solve(&rhs)? {
        Some(x) => Ok(Some(space.combination(&x)?)),
        None => Ok(None),
    }
}

/// The unique `g` with `g ∘ u = h`, when `u` is a reflection (so that such
/// `g` exists and is unique for targets in the reflective subcategory).
pub fn factor_through_unit(u: &Morphism, h: &Morphism) -> Result<Option<Morphism>> {
    let space = hom_space(u.target(), h.target())?;
    solve_in_hom(&space, |g| g.compose(u), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::quiverrep::{projective, simple, Quiver};

    const Q: Field = Field::Rationals;

    #[test]
    fn a2_hom_examples() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let p1 = projective(&a2, Q, 0).unwrap();
        let s1 = simple(&a2, Q, 0).unwrap();
        assert_eq!(hom_space(&p1, &p1).unwrap().dim(), 1);
        assert_eq!(hom_space(&s1, &p1).unwrap().dim(), 0);
        let h = hom_space(&p1, &s1).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.basis()[0].commutes());
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let p1 = projective(&kr, Q, 0).unwrap();
        let p2 = projective(&kr, Q, 1).unwrap();
        let h = hom_space(&p2, &p1).unwrap();
        assert_eq!(h.dim(), 2);
        let coeffs = vec![Q.from_i64(3), Q.from_i64(-2)];
        let phi = h.combination(&coeffs).unwrap();
        assert!(phi.commutes());
        assert_eq!(h.coordinates(&phi), coeffs);
    }

    #[test]
    fn hom_from_projective_is_vertex_space() {
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let m = Representation::new(&kr, Q, vec![2, 3], vec![Matrix::from_i64(Q, 3, 2, &[1, 0, 0, 1, 1, 1]), Matrix::zeros(Q, 3, 2)]).unwrap();
        for i in 0..2 {
            assert_eq!(hom_dim(&projective(&kr, Q, i).unwrap(), &m).unwrap(), m.dim(i));
        }
    }

    mod props {
        use super::*;
        use crate::homalg::ext_dim;
        use crate::quiverrep::corpus::{a3_linear, d4, kronecker, random_rep};
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn euler_identity(seed in any::<u64>(), which in 0usize..3, prime in prop::bool::ANY) {
                let q = [a3_linear(), d4(), kronecker()][which].clone();
                let field = if prime { Field::Prime(3) } else { Q };
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = random_rep(&q, field, 3, &mut rng);
                let n = random_rep(&q, field, 3, &mut rng);
                let lhs = hom_dim(&m, &n).unwrap() as i64 - ext_dim(&m, &n).unwrap() as i64;
                prop_assert_eq!(lhs, q.euler_form(m.dims(), n.dims()).unwrap());
            }

            #[test]
            fn hom_basis_commutes(seed in any::<u64>()) {
                let q = kronecker();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = random_rep(&q, Q, 3, &mut rng);
                let n = random_rep(&q, Q, 3, &mut rng);
                let h = hom_space(&m, &n).unwrap();
                prop_assert_eq!(h.dim(), hom_dim(&m, &n).unwrap());
                for (j, b) in h.basis().iter().enumerate() {
                    prop_assert!(b.commutes());
                    let mut unit = vec![Q.zero(); h.dim()];
                    unit[j] = Q.one();
                    prop_assert_eq!(h.coordinates(b), unit);
                }
            }
        }
    }
}

