//! The algebra `B = End(L)` of a projective generator `L` of the
//! perpendicular category, the ring map `f: A -> B`, tensor and hom with
//! `B`, the universal-localization data and the idempotent special case.

mod idempotent;
mod localization;

use std::sync::{Arc, OnceLock};

pub use idempotent::{idempotent_pair, IdempotentProbe, IdempotentReport};
pub use localization::{
    sigma_characterizes, sigma_inverts_over_b, universal_localization_data, LocalizationData,
};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::homalg::{
    ext_space, hom_space, projective_presentation, pullback, HomSpace, ProjectiveRealization, StandardProjectives,
};
use crate::orthopair::{cone_sequence, make_pair, tor_and_tensor, OrthoPair, RealizedProjectives};
use crate::quiverrep::{
    cokernel, descend_through_epi, direct_sum_in, factor_through_mono, image, is_isomorphic, DirectSum, Morphism,
    Representation,
};

/// `B = End(L)` over the basis of `Hom(L, L)`, with multiplication
/// `x y = x ∘ y`.
pub struct PerpAlgebra {
    generator: Representation,
    l: DirectSum,
    end: HomSpace,
    /// `lb[r]` is left multiplication by the basis element `b_r`.
    lb: Vec<Matrix>,
    unit: Matrix,
    f_vertices: Vec<Matrix>,
    f_arrows: Vec<Matrix>,
    /// `B f(e_j)` as a subspace of `B`.
    spaces: Vec<Matrix>,
    b_rep: Representation,
    tensor: RealizedProjectives,
    inclusions: Vec<Morphism>,
    perp_pair: OnceLock<Result<Arc<OrthoPair>>>,
}

impl std::fmt::Debug for PerpAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PerpAlgebra").field("dim", &self.dim()).field("L", &self.l.sum).finish_non_exhaustive()
    }
}

fn failed(what: impl Into<String>) -> Error {
    Error::VerificationFailed(what.into())
}

pub fn compute_perp_algebra(pair: &OrthoPair) -> Result<PerpAlgebra> {
    let real = pair.reflected_projectives()?;
    let (q, field) = (pair.quiver(), pair.field());
    let l = direct_sum_in(q, field, real.objects())?;
    let end = hom_space(&l.sum, &l.sum)?;
    let n = end.dim();
    let mut lb = Vec::with_capacity(n);
    for br in end.basis() {
        let cols = end.basis().iter().map(|bs| Ok(end.coordinates(&br.compose(bs)?))).collect::<Result<Vec<_>>>()?;
        lb.push(Matrix::from_columns(field, n, &cols));
    }
    let coords = |phi: &Morphism| Matrix::column_vector(field, end.coordinates(phi));
    let unit = coords(&Morphism::identity(&l.sum));
    let f_vertices = (0..q.vertex_count())
        .map(|i| Ok(coords(&l.injection(i).compose(&l.projection(i))?)))
        .collect::<Result<Vec<_>>>()?;
    let f_arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let m = l.injection(a.source).compose(real.arrow_map(idx))?.compose(&l.projection(a.target))?;
            Ok(coords(&m))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pa = PerpAlgebra {
        generator: pair.generator().clone(),
        l,
        end,
        lb,
        unit,
        f_vertices,
        f_arrows,
        spaces: Vec::new(),
        b_rep: Representation::zero(q, field),
        tensor: real.clone(),
        inclusions: Vec::new(),
        perp_pair: OnceLock::new(),
    };
    let report = pa.check_relations()?;
    if !report.holds() {
        return Err(failed(format!("algebra relations fail: {report:?}")));
    }
    pa.spaces = (0..q.vertex_count()).map(|j| pa.rmat(&pa.f_vertices[j]).map(|m| m.column_space())).collect::<Result<_>>()?;
    let dims = pa.spaces.iter().map(Matrix::cols).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let img = pa.rmat(&pa.f_arrows[idx])?.mul(&pa.spaces[a.source])?;
            pa.spaces[a.target].solve_matrix(&img)?.ok_or_else(|| failed("arrow action leaves B f(e_t)"))
        })
        .collect::<Result<Vec<_>>>()?;
    pa.b_rep = Representation::new(q, field, dims, maps)?;
    let (tensor, inclusions) = pa.tensor_realization()?;
    pa.tensor = tensor;
    pa.inclusions = inclusions;
    Ok(pa)
}

/// Outcome of the exhaustive relation checks on `B` and `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub associative: bool,
    pub unital: bool,
    pub idempotents: bool,
    pub idempotents_sum_to_one: bool,
    pub arrows_sandwiched: bool,
}

impl AlgebraReport {
    pub fn holds(&self) -> bool {
        self.associative && self.unital && self.idempotents && self.idempotents_sum_to_one && self.arrows_sandwiched
    }
}

impl PerpAlgebra {
    pub fn field(&self) -> Field {
        self.l.sum.field()
    }

    pub fn dim(&self) -> usize {
        self.lb.len()
    }

    pub fn generator(&self) -> &Representation {
        &self.generator
    }

    /// `L = (+)_i Y^{P(i)}`.
    pub fn l(&self) -> &DirectSum {
        &self.l
    }

    pub fn basis(&self) -> &[Morphism] {
        self.end.basis()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.dim()).map(|k| format!("b{k}")).collect()
    }

    /// `c[r][s][k]` with `b_r b_s = sum_k c[r][s][k] b_k`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n).map(|r| (0..n).map(|s| self.lb[r].column(s)).collect()).collect()
    }

    pub fn one(&self) -> &Matrix {
        &self.unit
    }

    pub fn f_vertex(&self, i: usize) -> &Matrix {
        &self.f_vertices[i]
    }

    pub fn f_arrow(&self, a: usize) -> &Matrix {
        &self.f_arrows[a]
    }

    /// `f(a_1 a_2 ... a_n)`, or `f(e_from)` for the empty path.
    pub fn f_path(&self, from: usize, path: &[usize]) -> Result<Matrix> {
        let mut x = self.f_vertices[from].clone();
        for &a in path {
            x = self.product(&x, &self.f_arrows[a])?;
        }
        Ok(x)
    }

    pub fn element(&self, coords: &Matrix) -> Result<Morphism> {
        self.end.combination(&coords.column(0))
    }

    pub fn coordinates(&self, phi: &Morphism) -> Matrix {
        Matrix::column_vector(self.field(), self.end.coordinates(phi))
    }

    /// Matrix of `y |-> x y`.
    pub fn lmat(&self, x: &Matrix) -> Result<Matrix> {
        let n = self.dim();
        let field = self.field();
        let mut out = Matrix::zeros(field, n, n);
        for r in 0..n {
            let c = x.get(r, 0);
            if c.is_zero() {
                continue;
            }
            let lb = &self.lb[r];
            for i in 0..n {
                for j in 0..n {
                    let v = lb.get(i, j);
                    if !v.is_zero() {
                        out.add_at(i, j, &field.mul(c, v));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `x |-> x y`.
    pub fn rmat(&self, y: &Matrix) -> Result<Matrix> {
        let n = self.dim();
        let cols = self.lb.iter().map(|l| Ok(l.mul(y)?.column(0))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.field(), n, &cols))
    }

    pub fn product(&self, x: &Matrix, y: &Matrix) -> Result<Matrix> {
        self.lmat(x)?.mul(y)
    }

    pub fn check_relations(&self) -> Result<AlgebraReport> {
        let n = self.dim();
        let field = self.field();
        let mut associative = true;
        'outer: for r in 0..n {
            for s in 0..n {
                let lhs = self.lb[r].mul(&self.lb[s])?;
                let prod = Matrix::column_vector(field, self.lb[r].column(s));
                if lhs != self.lmat(&prod)? {
                    associative = false;
                    break 'outer;
                }
            }
        }
        let id = Matrix::identity(field, n);
        let unital = self.lmat(&self.unit)? == id && self.rmat(&self.unit)? == id;
        let mut idempotents = true;
        let mut total = Matrix::zeros(field, n, 1);
        for e in &self.f_vertices {
            idempotents &= self.product(e, e)? == *e;
            total = total.add(e)?;
        }
        let mut arrows_sandwiched = true;
        for (a, fa) in self.quiver_arrows().zip(&self.f_arrows) {
            let left = self.product(&self.f_vertices[a.0], fa)?;
            let both = self.product(&left, &self.f_vertices[a.1])?;
            arrows_sandwiched &= both == *fa;
        }
        Ok(AlgebraReport { associative, unital, idempotents, idempotents_sum_to_one: total == self.unit, arrows_sandwiched })
    }

    fn quiver_arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.l.sum.quiver().arrows().iter().map(|a| (a.source, a.target))
    }

    /// `B` as a right `A`-module through `f`.
    pub fn b_rep(&self) -> &Representation {
        &self.b_rep
    }

    /// `y |-> x y` as an endomorphism of the right module `B`.
    pub fn left_action(&self, x: &Matrix) -> Result<Morphism> {
        let lm = self.lmat(x)?;
        let maps = self
            .spaces
            .iter()
            .map(|v| v.solve_matrix(&lm.mul(v)?)?.ok_or_else(|| failed("left multiplication leaves B f(e_j)")))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(&self.b_rep, &self.b_rep, maps)
    }

    /// `P(i) (x) B = f(e_i) B` inside `B`, with units `P(i) -> f(e_i) B`,
    /// `q |-> f(q)`.
    fn tensor_realization(&self) -> Result<(RealizedProjectives, Vec<Morphism>)> {
        let q = self.l.sum.quiver().clone();
        let field = self.field();
        let std = StandardProjectives::new(&q, field)?;
        let mut images = Vec::with_capacity(q.vertex_count());
        let mut units = Vec::with_capacity(q.vertex_count());
        for i in 0..q.vertex_count() {
            let img = image(&self.left_action(&self.f_vertices[i])?)?;
            let maps = (0..q.vertex_count())
                .map(|j| {
                    let cols = q
                        .paths(i, j)
                        .iter()
                        .map(|p| {
                            let fp = self.f_path(i, p)?;
                            let w = self.spaces[j].solve_matrix(&fp)?.ok_or_else(|| failed("f(q) outside B f(e_j)"))?;
                            let u = img.mono.map(j).solve_matrix(&w)?.ok_or_else(|| failed("f(q) outside f(e_i) B"))?;
                            Ok(u.column(0))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Matrix::from_columns(field, img.image.dim(j), &cols))
                })
                .collect::<Result<Vec<_>>>()?;
            units.push(Morphism::new(std.object(i), &img.image, maps)?);
            images.push(img);
        }
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let lam = self.left_action(&self.f_arrows[idx])?;
                factor_through_mono(&images[a.source].mono, &lam.compose(&images[a.target].mono)?)?
                    .ok_or_else(|| failed("arrow does not preserve f(e_i) B"))
            })
            .collect::<Result<Vec<_>>>()?;
        let inclusions = images.into_iter().map(|img| img.mono).collect();
        Ok((RealizedProjectives::from_parts(&std, units, arrows), inclusions))
    }

    /// The projectives tensored with `B`.
    pub fn tensor_projectives(&self) -> &RealizedProjectives {
        &self.tensor
    }

    /// The pair generated by `L`, whose right class is `L^perp`.
    pub fn perp_pair(&self) -> Result<Arc<OrthoPair>> {
        self.perp_pair.get_or_init(|| make_pair(&self.l.sum)).clone()
    }

    /// Structure on `f` images as in the JSON export: coordinates of every
    /// `f(e_i)` and `f(a)`.
    pub fn f_images(&self) -> (&[Matrix], &[Matrix]) {
        (&self.f_vertices, &self.f_arrows)
    }

    /// Matrix units `E11 = f(e_i)`, `E22 = f(e_j)`, `E12 = f(a)` for an arrow
    /// `a: i -> j`, completed by the unique `E21`; `None` unless they
    /// exhibit `B` as the full 2x2 matrix algebra.
    pub fn matrix_units(&self, arrow: usize) -> Result<Option<[Matrix; 4]>> {
        if self.dim() != 4 {
            return Ok(None);
        }
        let field = self.field();
        let (i, j) = self.quiver_arrows().nth(arrow).ok_or_else(|| failed("arrow out of range"))?;
        let e11 = self.f_vertices[i].clone();
        let e22 = self.f_vertices[j].clone();
        let e12 = self.f_arrows[arrow].clone();
        let system = Matrix::vstack(field, 4, &[&self.lmat(&e12)?, &self.rmat(&e12)?])?;
        let rhs = Matrix::vstack(field, 1, &[&e11, &e22])?;
        let Some(e21) = system.solve_matrix(&rhs)? else {
            return Ok(None);
        };
        let units = [e11, e12, e21, e22];
        let cols: Vec<Vec<Scalar>> = units.iter().map(|u| u.column(0)).collect();
        if Matrix::from_columns(field, 4, &cols).rank() != 4 {
            return Ok(None);
        }
        // E_ab E_cd = [b = c] E_ad, indices (a, b) flattened as 2a + b.
        let zero = Matrix::zeros(field, 4, 1);
        for x in 0..4 {
            for y in 0..4 {
                let (a, b, c, d) = (x / 2, x % 2, y / 2, y % 2);
                let expect = if b == c { &units[2 * a + d] } else { &zero };
                if self.product(&units[x], &units[y])? != *expect {
                    return Ok(None);
                }
            }
        }
        Ok(Some(units))
    }
}

/// `(Tor_1(M, B), M (x) B)` from the standard presentation of `M`.
pub fn tensor_with_b(pa: &PerpAlgebra, m: &Representation) -> Result<(Representation, Representation)> {
    let pres = projective_presentation(m)?;
    tor_and_tensor(&pres, &pa.tensor)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologicalEpiReport {
    pub dim_b: usize,
    pub tor_dim: usize,
    pub tensor_dim: usize,
    pub multiplication_iso: bool,
    pub b_matches_l: bool,
}

impl HomologicalEpiReport {
    pub fn holds(&self) -> bool {
        self.tor_dim == 0 && self.tensor_dim == self.dim_b && self.multiplication_iso && self.b_matches_l
    }
}

/// `Tor_1(B, B) = 0` and multiplication `B (x) B -> B` is an isomorphism.
pub fn verify_homological_epi(pa: &PerpAlgebra) -> Result<HomologicalEpiReport> {
    let b = &pa.b_rep;
    let pres = projective_presentation(b)?;
    let cone = cone_sequence(&pres, &pa.tensor)?;
    let f = crate::homalg::realize(&pa.tensor, &pres.sigma)?;
    let parts = pres
        .p0_labels
        .iter()
        .map(|&(i, k)| {
            let v = pa.spaces[i].select_cols(&[k]);
            pa.left_action(&v)?.compose(&pa.inclusions[i])
        })
        .collect::<Result<Vec<_>>>()?;
    let mu = f.target.copair(&parts)?;
    if !mu.compose(&f.map)?.is_zero() {
        return Err(failed("multiplication does not kill the relations"));
    }
    let (_, proj) = cokernel(&f.map)?;
    let induced = descend_through_epi(&proj, &mu)?.ok_or_else(|| failed("multiplication does not descend"))?;
    let report = HomologicalEpiReport {
        dim_b: pa.dim(),
        tor_dim: cone.y_lower.total_dim(),
        tensor_dim: cone.y_upper.total_dim(),
        multiplication_iso: induced.is_iso(),
        b_matches_l: is_isomorphic(b, &pa.l.sum)?.is_iso(),
    };
    if !report.holds() {
        return Err(failed(format!("not a homological epimorphism: {report:?}")));
    }
    Ok(report)
}

/// `Hom_A(B, M)` and `Ext^1_A(B, M)` as right modules through the left
/// action of `B` on itself, with evaluation at the unit.
#[derive(Clone, Debug)]
pub struct HomFromB {
    pub hom: Representation,
    pub ext1: Representation,
    pub evaluation: Morphism,
}

/// Basis of the image of each vertex operator and the induced arrow maps.
fn module_from_operators(
    m: &Representation,
    op: impl Fn(&Matrix) -> Result<Matrix>,
    pa: &PerpAlgebra,
) -> Result<(Representation, Vec<Matrix>)> {
    let field = m.field();
    let q = m.quiver();
    let spaces = pa.f_vertices.iter().map(|e| Ok(op(e)?.column_space())).collect::<Result<Vec<_>>>()?;
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let img = op(&pa.f_arrows[idx])?.mul(&spaces[a.source])?;
            spaces[a.target].solve_matrix(&img)?.ok_or_else(|| failed("operator leaves vertex space"))
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = Representation::new(q, field, spaces.iter().map(Matrix::cols).collect(), maps)?;
    Ok((rep, spaces))
}

pub fn hom_from_b(pa: &PerpAlgebra, m: &Representation) -> Result<HomFromB> {
    pa.b_rep.same_category(m)?;
    let field = m.field();
    let q = m.quiver();
    let hs = hom_space(&pa.b_rep, m)?;
    let hom_op = |x: &Matrix| -> Result<Matrix> {
        let lam = pa.left_action(x)?;
        let cols = hs.basis().iter().map(|phi| Ok(hs.coordinates(&phi.compose(&lam)?))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, hs.dim(), &cols))
    };
    let (hom, hom_spaces) = module_from_operators(m, hom_op, pa)?;

    let eval_maps = (0..q.vertex_count())
        .map(|j| {
            let c = pa.spaces[j].solve_matrix(&pa.f_vertices[j])?.ok_or_else(|| failed("f(e_j) outside B f(e_j)"))?;
            let cols = (0..hom_spaces[j].cols())
                .map(|k| {
                    let phi = hs.combination(&hom_spaces[j].column(k))?;
                    Ok(phi.map(j).mul(&c)?.column(0))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(field, m.dim(j), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let evaluation = Morphism::new(&hom, m, eval_maps)?;

    let es = ext_space(&pa.b_rep, m)?;
    let ext_op = |x: &Matrix| -> Result<Matrix> {
        let lam = pa.left_action(x)?;
        let cols = es.basis().iter().map(|z| es.class_of(&pullback(z, &lam)?)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, es.dim(), &cols))
    };
    let (ext1, _) = module_from_operators(m, ext_op, pa)?;
    Ok(HomFromB { hom, ext1, evaluation })
}
