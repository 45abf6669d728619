use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::homalg::{projective_presentation, ProjectiveRealization, StandardProjectives};
use crate::orthopair::{five_term, make_pair, tor_and_tensor, OrthoPair, RealizedProjectives};
use crate::quiverrep::{descend_through_epi, direct_sum_in, projective, quotient, subrep, Quiver, Representation};

/// Dimension vectors of one probe, by the general machinery and by the
/// direct construction `M/MeA`, `Tor_1(M, A/AeA)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentProbe {
    pub module: Vec<usize>,
    /// `Y_M, X_M, Y^M, X^M` from the five-term sequence.
    pub general: [Vec<usize>; 4],
    pub direct: [Vec<usize>; 4],
    pub x_upper_zero: bool,
    pub annihilates: bool,
}

impl IdempotentProbe {
    pub fn holds(&self) -> bool {
        self.general == self.direct && self.x_upper_zero && self.annihilates
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    pub vertices: Vec<usize>,
    pub probes: Vec<IdempotentProbe>,
}

impl IdempotentReport {
    pub fn holds(&self) -> bool {
        self.probes.iter().all(IdempotentProbe::holds)
    }
}

/// The subrepresentation `MeA` generated by the components at `s`.
fn generated_by(m: &Representation, s: &[usize]) -> Result<(Representation, crate::quiverrep::Morphism)> {
    let q = m.quiver();
    let field = m.field();
    let bases = (0..q.vertex_count())
        .map(|j| {
            let mut cols = Vec::new();
            for &i in s {
                for p in q.paths(i, j) {
                    let pm = m.path_map(i, p);
                    cols.extend((0..pm.cols()).map(|c| pm.column(c)));
                }
            }
            Matrix::from_columns(field, m.dim(j), &cols).column_space()
        })
        .collect();
    subrep(m, bases)
}

/// `P(i) (x) A/AeA`: paths from `i` that avoid `s`.
fn avoiding(q: &Arc<Quiver>, field: Field, s: &[usize]) -> Result<RealizedProjectives> {
    let std = StandardProjectives::new(q, field)?;
    let units = (0..q.vertex_count())
        .map(|i| {
            let p = std.object(i);
            let bases = (0..q.vertex_count())
                .map(|j| {
                    let cols: Vec<_> = q
                        .paths(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, path)| {
                            let mut v = i;
                            let mut hit = s.contains(&v);
                            for &a in path.iter() {
                                v = q.arrow(a).target;
                                hit |= s.contains(&v);
                            }
                            hit
                        })
                        .map(|(k, _)| (0..p.dim(j)).map(|r| if r == k { field.one() } else { field.zero() }).collect())
                        .collect();
                    Matrix::from_columns(field, p.dim(j), &cols)
                })
                .collect();
            let (_, incl) = subrep(p, bases)?;
            Ok(quotient(&incl)?.1)
        })
        .collect::<Result<Vec<_>>>()?;
    let arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let g = units[a.source].compose(std.arrow_map(idx))?;
            descend_through_epi(&units[a.target], &g)?
                .ok_or_else(|| Error::VerificationFailed("arrow does not descend modulo AeA".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RealizedProjectives::from_parts(&std, units, arrows))
}

/// The pair generated by `(+)_{i in S} P(i)`, checked on each probe against
/// the direct description: `X^M = 0`, `Y^M = M/MeA` and
/// `dim X_M = dim Y_M + dim MeA`.
pub fn idempotent_pair(
    q: &Arc<Quiver>,
    s: &[usize],
    field: Field,
    probes: &[Representation],
) -> Result<(Arc<OrthoPair>, IdempotentReport)> {
    if s.is_empty() {
        return Err(Error::InvalidShape("vertex subset must be nonempty".into()));
    }
    for &v in s {
        q.check_vertex(v)?;
    }
    let parts = s.iter().map(|&i| projective(q, field, i)).collect::<Result<Vec<_>>>()?;
    let x = direct_sum_in(q, field, &parts)?.sum;
    let pair = make_pair(&x)?;
    let real = avoiding(q, field, s)?;
    let mut out = Vec::with_capacity(probes.len());
    for m in probes {
        let eps = five_term(&pair, m)?;
        let pres = projective_presentation(m)?;
        let (tor, tensor) = tor_and_tensor(&pres, &real)?;
        let (mea, _) = generated_by(m, s)?;
        let x_lower: Vec<usize> = tor.dims().iter().zip(mea.dims()).map(|(a, b)| a + b).collect();
        out.push(IdempotentProbe {
            module: m.dims().to_vec(),
            general: [
                eps.y_lower.dims().to_vec(),
                eps.x_lower.dims().to_vec(),
                eps.y_upper.dims().to_vec(),
                eps.x_upper.dims().to_vec(),
            ],
            direct: [tor.dims().to_vec(), x_lower, tensor.dims().to_vec(), vec![0; q.vertex_count()]],
            x_upper_zero: eps.x_upper.is_zero(),
            annihilates: s.iter().all(|&v| eps.y_upper.dim(v) == 0),
        });
    }
    Ok((pair, IdempotentReport { vertices: s.to_vec(), probes: out }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::corpus::{a2, a3_linear, intervals};

    #[test]
    fn a2_and_a3_subsets() {
        for q in [a2(), a3_linear()] {
            let probes = intervals(&q, Field::Rationals).unwrap();
            let n = q.vertex_count();
            for mask in 1..(1u32 << n) {
                let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let (_, report) = idempotent_pair(&q, &s, Field::Rationals, &probes).unwrap();
                assert!(report.holds(), "{s:?}: {report:?}");
            }
        }
    }
}
