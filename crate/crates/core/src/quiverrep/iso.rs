use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::{Morphism, Representation};
use crate::error::Result;
use crate::exactlin::{Field, Scalar};
use crate::homalg::{hom_dim, hom_space, HomSpace};

/// Certified answer of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    IsoWitness(Morphism),
    NotIso(String),
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::IsoWitness(_))
    }

    pub fn witness(&self) -> Option<&Morphism> {
        match self {
            IsoVerdict::IsoWitness(m) => Some(m),
            _ => None,
        }
    }
}

pub const DEFAULT_ISO_BUDGET: usize = 400;

pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<IsoVerdict> {
    is_isomorphic_with(m, n, DEFAULT_ISO_BUDGET)
}

/// Searches `Hom(M, N)` for a vertexwise-invertible element: basis vectors
/// first, then every coefficient vector when the space is small and finite,
/// then seeded random combinations, `budget` candidates in all.
pub fn is_isomorphic_with(m: &Representation, n: &Representation, budget: usize) -> Result<IsoVerdict> {
    m.same_category(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIso(format!("dimension vectors {:?} and {:?} differ", m.dims(), n.dims())));
    }
    if m == n {
        return Ok(IsoVerdict::IsoWitness(Morphism::identity(m)));
    }
    let h = hom_space(m, n)?;
    if h.dim() == 0 {
        return Ok(if m.is_zero() {
            IsoVerdict::IsoWitness(Morphism::zero(m, n))
        } else {
            IsoVerdict::NotIso("Hom(M, N) = 0".into())
        });
    }
    // A cheap search first; the dimension counts refute most non-isomorphic
    // pairs before the full budget is spent.
    let quick = budget.min(h.dim() + QUICK_TRIES);
    for round_budget in [quick, budget] {
        match search(&h, m.field(), round_budget)? {
            Search::Found(phi) => return Ok(IsoVerdict::IsoWitness(phi)),
            Search::Exhausted => {
                return Ok(IsoVerdict::NotIso("no invertible element in Hom(M, N) (exhaustive)".into()))
            }
            Search::GaveUp if round_budget == quick => {
                let counts = [h.dim(), hom_dim(n, m)?, hom_dim(m, m)?, hom_dim(n, n)?];
                if counts.iter().any(|&c| c != counts[0]) {
                    return Ok(IsoVerdict::NotIso(format!(
                        "dim Hom(M,N), Hom(N,M), End M, End N = {:?} are not all equal",
                        counts
                    )));
                }
            }
            Search::GaveUp => {}
        }
    }
    Ok(IsoVerdict::Inconclusive)
}

const QUICK_TRIES: usize = 8;

enum Search {
    Found(Morphism),
    Exhausted,
    GaveUp,
}

fn search(h: &HomSpace, field: Field, budget: usize) -> Result<Search> {
    let mut tried = 0usize;
    for b in h.basis() {
        if b.is_iso() {
            return Ok(Search::Found(b.clone()));
        }
        tried += 1;
    }
    let dim = h.dim() as u32;
    if let Field::Prime(p) = field {
        if let Some(total) = p.checked_pow(dim).filter(|&t| t as usize <= budget.saturating_sub(tried)) {
            for code in 1..total {
                let mut c = code;
                let coeffs: Vec<Scalar> = (0..dim)
                    .map(|_| {
                        let r = c % p;
                        c /= p;
                        Scalar::Mod(r)
                    })
                    .collect();
                let phi = h.combination(&coeffs)?;
                if phi.is_iso() {
                    return Ok(Search::Found(phi));
                }
            }
            return Ok(Search::Exhausted);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (h.dim() as u64));
    while tried < budget {
        let coeffs: Vec<Scalar> = (0..dim)
            .map(|_| match field {
                Field::Prime(p) => Scalar::Mod(rng.gen_range(0..p)),
                Field::Rationals => field.from_i64(rng.gen_range(-50..=50)),
            })
            .collect();
        let phi = h.combination(&coeffs)?;
        if phi.is_iso() {
            return Ok(Search::Found(phi));
        }
        tried += 1;
    }
    Ok(Search::GaveUp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Matrix;
    use crate::quiverrep::{projective, simple, Quiver};

    const Q: Field = Field::Rationals;

    #[test]
    fn basic_verdicts() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let p1 = projective(&a2, Q, 0).unwrap();
        assert!(is_isomorphic(&p1, &p1).unwrap().is_iso());
        let s1 = simple(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        assert!(matches!(is_isomorphic(&s1, &s2).unwrap(), IsoVerdict::NotIso(_)));
        let m = Representation::new(&a2, Q, vec![1, 1], vec![Matrix::from_rows_i64(Q, &[&[7]])]).unwrap();
        let w = is_isomorphic(&m, &p1).unwrap();
        assert!(w.witness().unwrap().commutes());
        let split = Representation::new(&a2, Q, vec![1, 1], vec![Matrix::zeros(Q, 1, 1)]).unwrap();
        assert!(matches!(is_isomorphic(&split, &p1).unwrap(), IsoVerdict::NotIso(_)));
    }

    #[test]
    fn exhaustive_over_small_field() {
        let f = Field::Prime(3);
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let m = Representation::new(&kr, f, vec![2, 2], vec![Matrix::identity(f, 2), Matrix::from_i64(f, 2, 2, &[0, 1, 1, 1])]).unwrap();
        let n = Representation::new(&kr, f, vec![2, 2], vec![Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]), Matrix::from_i64(f, 2, 2, &[1, 2, 1, 1])]).unwrap();
        // n = g m h^-1 for g = [[1,1],[0,1]], h = identity.
        let w = is_isomorphic(&m, &n).unwrap();
        assert!(w.is_iso());
    }

    mod props {
        use super::*;
        use crate::quiverrep::corpus::{kronecker, random_rep};
        use rand::Rng;
        use proptest::prelude::*;

        /// Unitriangular, hence invertible.
        fn unitriangular(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
            Matrix::from_fn(f, n, n, |r, c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => f.one(),
                std::cmp::Ordering::Less => f.from_i64(rng.gen_range(-2..=2)),
                std::cmp::Ordering::Greater => f.zero(),
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn base_change_is_detected(seed in any::<u64>()) {
                let q = kronecker();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = random_rep(&q, Q, 3, &mut rng);
                let g: Vec<Matrix> = m.dims().iter().map(|&d| unitriangular(Q, d, &mut rng)).collect();
                let maps = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| g[a.target].mul(m.map(i)).unwrap().mul(&g[a.source].inverse().unwrap()).unwrap())
                    .collect();
                let n = Representation::new(&q, Q, m.dims().to_vec(), maps).unwrap();
                let verdict = is_isomorphic(&m, &n).unwrap();
                let w = verdict.witness().expect("conjugate representations are isomorphic");
                prop_assert!(w.commutes() && w.is_iso());
            }
        }
    }
}

