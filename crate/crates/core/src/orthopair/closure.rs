use super::{five_term, make_pair, membership_x, membership_y, OrthoPair};
use crate::error::Result;
use crate::homalg::{ext_space, hom_space, is_exceptional, realize_extension};
use crate::quiverrep::{cokernel, direct_sum, direct_sum_in, image, injective, is_isomorphic, kernel, Representation};

pub const DEFAULT_CAP: usize = 8;
pub const DEFAULT_ITERATIONS: usize = 6;

/// Oracle verdict for one candidate and, within the cap, the brute-force one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub oracle: bool,
    /// `None` when the candidate exceeds the dimension cap.
    pub brute_force: Option<bool>,
}

impl CandidateVerdict {
    pub fn agrees(&self) -> bool {
        self.brute_force.is_none_or(|b| b == self.oracle)
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub cap: usize,
    /// Nonzero objects found, up to isomorphism.
    pub closure: Vec<Representation>,
    /// The last round added nothing.
    pub saturated: bool,
    pub verdicts: Vec<CandidateVerdict>,
}

impl ClosureReport {
    pub fn agrees(&self) -> bool {
        self.verdicts.iter().all(CandidateVerdict::agrees)
    }
}

fn insert(found: &mut Vec<Representation>, m: Representation, cap: usize) -> Result<bool> {
    if m.is_zero() || m.total_dim() > cap {
        return Ok(false);
    }
    for f in found.iter() {
        if f.dims() == m.dims() && is_isomorphic(f, &m)?.is_iso() {
            return Ok(false);
        }
    }
    found.push(m);
    Ok(true)
}

/// Closes `{x}` under finite sums, kernels, cokernels and images of basis
/// morphisms (and their sum), and extensions by basis classes (and their
/// sum), keeping objects of total dimension at most `cap`.
pub fn brute_force_closure(x: &Representation, cap: usize, iterations: usize) -> Result<(Vec<Representation>, bool)> {
    let mut found = Vec::new();
    insert(&mut found, x.clone(), cap)?;
    let mut saturated = false;
    for _ in 0..iterations {
        let current = found.clone();
        let mut grew = false;
        for a in &current {
            for b in &current {
                if a.total_dim() + b.total_dim() <= cap {
                    grew |= insert(&mut found, direct_sum(&[a.clone(), b.clone()])?.sum, cap)?;
                }
                let hs = hom_space(a, b)?;
                let mut maps = hs.basis().to_vec();
                if hs.dim() > 1 {
                    maps.push(hs.combination(&vec![a.field().one(); hs.dim()])?);
                }
                for phi in &maps {
                    grew |= insert(&mut found, kernel(phi)?.0, cap)?;
                    grew |= insert(&mut found, cokernel(phi)?.0, cap)?;
                    grew |= insert(&mut found, image(phi)?.image, cap)?;
                }
                if a.total_dim() + b.total_dim() <= cap {
                    let es = ext_space(a, b)?;
                    let mut classes = es.basis().to_vec();
                    if es.dim() > 1 {
                        classes.push(es.cocycle(&vec![a.field().one(); es.dim()])?);
                    }
                    for zeta in &classes {
                        grew |= insert(&mut found, realize_extension(a, b, zeta)?.middle().clone(), cap)?;
                    }
                }
            }
        }
        if !grew {
            saturated = true;
            break;
        }
    }
    Ok((found, saturated))
}

pub fn wide_closure_check(
    x: &Representation,
    candidates: &[Representation],
    cap: usize,
    iterations: usize,
) -> Result<ClosureReport> {
    let pair = make_pair(x)?;
    let (closure, saturated) = brute_force_closure(x, cap, iterations)?;
    let mut verdicts = Vec::with_capacity(candidates.len());
    for c in candidates {
        let oracle = membership_x(&pair, c)?;
        let brute_force = if c.total_dim() > cap {
            None
        } else if c.is_zero() {
            Some(true)
        } else {
            let mut hit = false;
            for f in &closure {
                if f.dims() == c.dims() && is_isomorphic(f, c)?.is_iso() {
                    hit = true;
                    break;
                }
            }
            Some(hit)
        };
        verdicts.push(CandidateVerdict { oracle, brute_force });
    }
    Ok(ClosureReport { cap, closure, saturated, verdicts })
}

#[derive(Clone, Debug)]
pub struct CogeneratorReport {
    /// `X_Q` for `Q` the sum of the indecomposable injectives.
    pub generator: Representation,
    pub exceptional: bool,
    /// Per probe: membership in each class agrees between the two pairs.
    pub agreements: Vec<(bool, bool)>,
}

impl CogeneratorReport {
    pub fn holds(&self) -> bool {
        self.exceptional && self.agreements.iter().all(|&(a, b)| a && b)
    }
}

pub fn generator_from_cogenerator(pair: &OrthoPair, probes: &[Representation]) -> Result<CogeneratorReport> {
    let (q, field) = (pair.quiver(), pair.field());
    let injectives = (0..q.vertex_count()).map(|i| injective(q, field, i)).collect::<Result<Vec<_>>>()?;
    let cogen = direct_sum_in(q, field, &injectives)?.sum;
    let generator = five_term(pair, &cogen)?.x_lower;
    let exceptional = is_exceptional(&generator)?;
    let mut agreements = Vec::new();
    if exceptional {
        let other = make_pair(&generator)?;
        for p in probes {
            let y = membership_y(pair, p)? == membership_y(&other, p)?;
            let x = membership_x(pair, p)? == membership_x(&other, p)?;
            agreements.push((x, y));
        }
    }
    Ok(CogeneratorReport { generator, exceptional, agreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::quiverrep::corpus::{a2, intervals};
    use crate::quiverrep::{projective, simple};

    const Q: Field = Field::Rationals;

    #[test]
    fn a2_closures() {
        let q = a2();
        let s1 = simple(&q, Q, 0).unwrap();
        let s2 = simple(&q, Q, 1).unwrap();
        let p1 = projective(&q, Q, 0).unwrap();
        let r = wide_closure_check(&s2, &[s2.clone(), s1.clone()], DEFAULT_CAP, DEFAULT_ITERATIONS).unwrap();
        assert_eq!(r.verdicts[0], CandidateVerdict { oracle: true, brute_force: Some(true) });
        assert_eq!(r.verdicts[1], CandidateVerdict { oracle: false, brute_force: Some(false) });
        let r = wide_closure_check(&p1, &[s1.clone(), p1.clone()], 4, DEFAULT_ITERATIONS).unwrap();
        assert_eq!(r.verdicts[0], CandidateVerdict { oracle: false, brute_force: Some(false) });
        assert!(r.agrees());
    }

    #[test]
    fn cogenerator() {
        let q = a2();
        let probes = intervals(&q, Q).unwrap();
        let pair = make_pair(&simple(&q, Q, 1).unwrap()).unwrap();
        let r = generator_from_cogenerator(&pair, &probes).unwrap();
        assert!(r.holds());
        let pair = make_pair(&Representation::zero(&q, Q)).unwrap();
        let r = generator_from_cogenerator(&pair, &probes).unwrap();
        assert!(r.generator.is_zero() && r.holds());
    }
}
