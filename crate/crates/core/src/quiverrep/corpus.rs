//! Named quivers and modules used by tests, examples and the CLI.

use std::sync::Arc;

use rand::Rng;

use super::quiver::Quiver;
use super::rep::Representation;
use crate::error::Result;
use crate::exactlin::{Field, Matrix, Scalar};

/// `1 -> 2`.
pub fn a2() -> Arc<Quiver> {
    Quiver::from_triples(2, &[("a", 0, 1)]).expect("valid quiver")
}

/// `1 -> 2 -> 3`.
pub fn a3_linear() -> Arc<Quiver> {
    Quiver::from_triples(3, &[("a", 0, 1), ("b", 1, 2)]).expect("valid quiver")
}

/// `1 -> 2 <- 3`.
pub fn a3_sink() -> Arc<Quiver> {
    Quiver::from_triples(3, &[("a", 0, 1), ("b", 2, 1)]).expect("valid quiver")
}

/// `2 -> 1 <- 3`, `4 -> 1`.
pub fn d4() -> Arc<Quiver> {
    Quiver::from_triples(4, &[("a", 1, 0), ("b", 2, 0), ("c", 3, 0)]).expect("valid quiver")
}

/// `1 => 2`.
pub fn kronecker() -> Arc<Quiver> {
    Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).expect("valid quiver")
}

/// Dimension one on the vertices `lo..=hi` and identity on every arrow
/// inside that range.
pub fn interval(q: &Arc<Quiver>, field: Field, lo: usize, hi: usize) -> Result<Representation> {
    let inside = |v: usize| (lo..=hi).contains(&v);
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| usize::from(inside(v))).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            if inside(a.source) && inside(a.target) {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[a.target], dims[a.source])
            }
        })
        .collect();
    Representation::new(q, field, dims, maps)
}

/// All interval modules of a type-A quiver whose vertices are numbered
/// along the line.
pub fn intervals(q: &Arc<Quiver>, field: Field) -> Result<Vec<Representation>> {
    let n = q.vertex_count();
    let mut out = Vec::new();
    for lo in 0..n {
        for hi in lo..n {
            out.push(interval(q, field, lo, hi)?);
        }
    }
    Ok(out)
}

/// The preprojective Kronecker module of dimension `(n, n + 1)`.
pub fn kronecker_preprojective(field: Field, n: usize) -> Result<Representation> {
    let q = kronecker();
    let mut a = Matrix::zeros(field, n + 1, n);
    let mut b = Matrix::zeros(field, n + 1, n);
    for i in 0..n {
        a.set(i, i, field.one());
        b.set(i + 1, i, field.one());
    }
    Representation::new(&q, field, vec![n, n + 1], vec![a, b])
}

/// The preinjective Kronecker module of dimension `(n + 1, n)`.
pub fn kronecker_preinjective(field: Field, n: usize) -> Result<Representation> {
    let q = kronecker();
    let mut a = Matrix::zeros(field, n, n + 1);
    let mut b = Matrix::zeros(field, n, n + 1);
    for i in 0..n {
        a.set(i, i, field.one());
        b.set(i, i + 1, field.one());
    }
    Representation::new(&q, field, vec![n + 1, n], vec![a, b])
}

/// A representation with dimensions drawn from `0..=max_dim` and entries
/// uniform in the prime field, or in `-3..=3` over the rationals.
pub fn random_rep<R: Rng>(q: &Arc<Quiver>, field: Field, max_dim: usize, rng: &mut R) -> Representation {
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    random_rep_with_dims(q, field, &dims, rng)
}

pub fn random_rep_with_dims<R: Rng>(q: &Arc<Quiver>, field: Field, dims: &[usize], rng: &mut R) -> Representation {
    let maps = q
        .arrows()
        .iter()
        .map(|a| Matrix::from_fn(field, dims[a.target], dims[a.source], |_, _| random_scalar(field, rng)))
        .collect();
    Representation::new(q, field, dims.to_vec(), maps).expect("shapes follow the dimension vector")
}

pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Prime(p) => Scalar::Mod(rng.gen_range(0..p)),
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{ext_dim, hom_dim};

    const Q: Field = Field::Rationals;

    #[test]
    fn interval_counts() {
        assert_eq!(intervals(&a2(), Q).unwrap().len(), 3);
        assert_eq!(intervals(&a3_linear(), Q).unwrap().len(), 6);
        assert_eq!(intervals(&a3_sink(), Q).unwrap().len(), 6);
    }

    #[test]
    fn kronecker_families_are_exceptional_bricks() {
        for n in 0..4 {
            for m in [kronecker_preprojective(Q, n).unwrap(), kronecker_preinjective(Q, n).unwrap()] {
                assert_eq!(hom_dim(&m, &m).unwrap(), 1);
                assert_eq!(ext_dim(&m, &m).unwrap(), 0);
            }
        }
    }
}
