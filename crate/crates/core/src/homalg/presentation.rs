use std::sync::Arc;

use super::exact::ShortExactSequence;
use crate::error::Result;
use crate::exactlin::{Field, Matrix, Scalar};
use crate::quiverrep::{direct_sum_in, projective, DirectSum, Morphism, Path, Quiver, Representation};

/// One path term of a map between sums of indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTerm {
    pub row: usize,
    pub col: usize,
    pub path: Path,
    pub coeff: Scalar,
}

/// A map `(+)_c P(source[c]) -> (+)_r P(target[r])`. The `(r, c)`
/// component is left multiplication by a combination of paths from
/// `target[r]` to `source[c]`: the path `p` sends `e_source[c]` to `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub terms: Vec<PathTerm>,
}

/// A functor applied to the indecomposable projectives: an object for each
/// `P(i)` and, for each arrow `a: s -> t`, the image of `P(t) -> P(s)`,
/// `q |-> a q`.
pub trait ProjectiveRealization {
    fn quiver(&self) -> &Arc<Quiver>;
    fn field(&self) -> Field;
    fn object(&self, i: usize) -> &Representation;
    fn arrow_map(&self, a: usize) -> &Morphism;

    /// Image of left multiplication by a path starting at `from`.
    fn path_map(&self, from: usize, path: &[usize]) -> Result<Morphism> {
        let end = self.quiver().path_target(from, path);
        let mut m = Morphism::identity(self.object(end));
        for &a in path.iter().rev() {
            m = self.arrow_map(a).compose(&m)?;
        }
        Ok(m)
    }
}

/// Realization of a [`ProjMap`] as a morphism between direct sums.
pub struct RealizedMap {
    pub source: DirectSum,
    pub target: DirectSum,
    pub map: Morphism,
}

pub fn realize<R: ProjectiveRealization + ?Sized>(real: &R, map: &ProjMap) -> Result<RealizedMap> {
    let parts = |vs: &[usize]| vs.iter().map(|&i| real.object(i).clone()).collect::<Vec<_>>();
    let source = direct_sum_in(real.quiver(), real.field(), &parts(&map.source))?;
    let target = direct_sum_in(real.quiver(), real.field(), &parts(&map.target))?;
    let entries = map
        .terms
        .iter()
        .map(|t| Ok((t.row, t.col, real.path_map(map.target[t.row], &t.path)?.scale(&t.coeff))))
        .collect::<Result<Vec<_>>>()?;
    let m = DirectSum::matrix_morphism(&source, &target, &entries)?;
    Ok(RealizedMap { source, target, map: m })
}

/// `Hom(map, M): (+)_r M_target[r] -> (+)_c M_source[c]`, using
/// `Hom(P(i), M) = M_i` (evaluation at `e_i`).
pub fn hom_into(map: &ProjMap, m: &Representation) -> Result<Matrix> {
    let field = m.field();
    let offsets = |vs: &[usize]| {
        let mut out = Vec::with_capacity(vs.len() + 1);
        let mut acc = 0;
        for &v in vs {
            out.push(acc);
            acc += m.dim(v);
        }
        out.push(acc);
        out
    };
    let rows = offsets(&map.source);
    let cols = offsets(&map.target);
    let mut h = Matrix::zeros(field, rows[map.source.len()], cols[map.target.len()]);
    for t in &map.terms {
        let block = m.path_map(map.target[t.row], &t.path).scale(&t.coeff);
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                let v = block.get(r, c);
                if !v.is_zero() {
                    h.add_at(rows[t.col] + r, cols[t.row] + c, v);
                }
            }
        }
    }
    Ok(h)
}

/// The indecomposable projectives themselves.
#[derive(Clone, Debug)]
pub struct StandardProjectives {
    quiver: Arc<Quiver>,
    field: Field,
    objects: Vec<Representation>,
    arrows: Vec<Morphism>,
}

impl StandardProjectives {
    pub fn new(quiver: &Arc<Quiver>, field: Field) -> Result<StandardProjectives> {
        let objects = (0..quiver.vertex_count())
            .map(|i| projective(quiver, field, i))
            .collect::<Result<Vec<_>>>()?;
        let arrows = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let (src, tgt) = (&objects[a.target], &objects[a.source]);
                let maps = (0..quiver.vertex_count())
                    .map(|j| {
                        let mut m = Matrix::zeros(field, tgt.dim(j), src.dim(j));
                        for (col, q) in quiver.paths(a.target, j).iter().enumerate() {
                            let mut p = vec![idx];
                            p.extend_from_slice(q);
                            let row = quiver.path_position(a.source, &p).expect("prefixed path is enumerated");
                            m.set(row, col, field.one());
                        }
                        m
                    })
                    .collect();
                Morphism::new(src, tgt, maps)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StandardProjectives { quiver: quiver.clone(), field, objects, arrows })
    }
}

impl ProjectiveRealization for StandardProjectives {
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

/// The standard resolution `0 -> P1 -> P0 -> M -> 0` with
/// `P0 = (+)_i P(i)^{d_i}` and `P1 = (+)_a P(t(a))^{d_s(a)}`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub module: Representation,
    /// `(vertex, copy)` for each summand of `P0`.
    pub p0_labels: Vec<(usize, usize)>,
    /// `(arrow, copy)` for each summand of `P1`.
    pub p1_labels: Vec<(usize, usize)>,
    pub sigma: ProjMap,
    pub p0: DirectSum,
    pub p1: DirectSum,
    pub sequence: ShortExactSequence,
}

pub fn projective_presentation(m: &Representation) -> Result<ProjectivePresentation> {
    let q = m.quiver();
    let field = m.field();
    let std = StandardProjectives::new(q, field)?;
    let p0_labels: Vec<(usize, usize)> =
        (0..q.vertex_count()).flat_map(|i| (0..m.dim(i)).map(move |k| (i, k))).collect();
    let p1_labels: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .enumerate()
        .flat_map(|(idx, a)| (0..m.dim(a.source)).map(move |k| (idx, k)))
        .collect();
    let p0_index = |v: usize, k: usize| p0_labels.iter().position(|&l| l == (v, k)).expect("label exists");
    let mut terms = Vec::new();
    for (col, &(idx, k)) in p1_labels.iter().enumerate() {
        let a = q.arrow(idx);
        terms.push(PathTerm { row: p0_index(a.source, k), col, path: vec![idx], coeff: field.one() });
        for l in 0..m.dim(a.target) {
            let c = m.map(idx).get(l, k);
            if !c.is_zero() {
                terms.push(PathTerm { row: p0_index(a.target, l), col, path: Vec::new(), coeff: field.neg(c) });
            }
        }
    }
    let sigma = ProjMap {
        source: p1_labels.iter().map(|&(idx, _)| q.arrow(idx).target).collect(),
        target: p0_labels.iter().map(|&(i, _)| i).collect(),
        terms,
    };
    let realized = realize(&std, &sigma)?;

    // pi sends path q in summand (i, k) to M_q e_k.
    let pi_maps = (0..q.vertex_count())
        .map(|j| {
            let mut cols = Vec::new();
            for &(i, k) in &p0_labels {
                for p in q.paths(i, j) {
                    cols.push(m.path_map(i, p).column(k));
                }
            }
            Matrix::from_columns(field, m.dim(j), &cols)
        })
        .collect();
    let pi = Morphism::new(&realized.target.sum, m, pi_maps)?;
    let sequence = ShortExactSequence::new(realized.map, pi)?;
    Ok(ProjectivePresentation { module: m.clone(), p0_labels, p1_labels, sigma, p0: realized.target, p1: realized.source, sequence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::simple;

    const Q: Field = Field::Rationals;

    #[test]
    fn simple_presentations() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let pres = projective_presentation(&simple(&a2, Q, 0).unwrap()).unwrap();
        assert_eq!(pres.sigma.source, vec![1]);
        assert_eq!(pres.sigma.target, vec![0]);
        assert_eq!(pres.p1.sum.dims(), &[0, 1]);
        assert_eq!(pres.p0.sum.dims(), &[1, 1]);

        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let pres = projective_presentation(&simple(&kr, Q, 0).unwrap()).unwrap();
        assert_eq!(pres.sigma.source, vec![1, 1]);
        assert_eq!(pres.p0.sum.dims(), &[1, 2]);
    }

    #[test]
    fn projective_presents_itself() {
        let a3 = Quiver::from_triples(3, &[("a", 0, 1), ("b", 1, 2)]).unwrap();
        let p1 = projective(&a3, Q, 0).unwrap();
        let pres = projective_presentation(&p1).unwrap();
        assert!(pres.sequence.pi().is_surjective());
        assert_eq!(pres.p0.sum.total_dim() - pres.p1.sum.total_dim(), p1.total_dim());
    }

    #[test]
    fn hom_into_matches_realization() {
        let a3 = Quiver::from_triples(3, &[("a", 0, 1), ("b", 2, 1)]).unwrap();
        let m = Representation::new(
            &a3,
            Q,
            vec![2, 2, 1],
            vec![Matrix::from_rows_i64(Q, &[&[1, 2], &[0, 1]]), Matrix::from_rows_i64(Q, &[&[1], &[1]])],
        )
        .unwrap();
        let pres = projective_presentation(&m).unwrap();
        let h = hom_into(&pres.sigma, &m).unwrap();
        // The cokernel of Hom(sigma, M) is Ext(M, M); its kernel is End(M).
        let end = crate::homalg::hom_dim(&m, &m).unwrap();
        let ext = crate::homalg::ext_dim(&m, &m).unwrap();
        assert_eq!(h.cols() - h.rank(), end);
        assert_eq!(h.rows() - h.rank(), ext);
    }
}
