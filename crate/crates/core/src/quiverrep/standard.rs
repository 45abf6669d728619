use std::sync::Arc;

use super::quiver::Quiver;
use super::rep::Representation;
use crate::error::Result;
use crate::exactlin::{Field, Matrix};

/// The simple representation `S(i)`.
pub fn simple(quiver: &Arc<Quiver>, field: Field, i: usize) -> Result<Representation> {
    quiver.check_vertex(i)?;
    let mut dims = vec![0; quiver.vertex_count()];
    dims[i] = 1;
    Representation::semisimple(quiver, field, dims)
}

/// The indecomposable projective `P(i)`: basis the paths starting at `i`,
/// arrows acting by extending a path at its end.
pub fn projective(quiver: &Arc<Quiver>, field: Field, i: usize) -> Result<Representation> {
    quiver.check_vertex(i)?;
    let n = quiver.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| quiver.path_count(i, j)).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
            for (col, p) in quiver.paths(i, a.source).iter().enumerate() {
                let mut q = p.clone();
                q.push(idx);
                let row = quiver.path_position(i, &q).expect("extended path is enumerated");
                m.set(row, col, field.one());
            }
            m
        })
        .collect();
    Representation::new(quiver, field, dims, maps)
}

/// The indecomposable injective `I(i)`: dual basis of the paths ending at
/// `i`; an arrow `a` sends `p*` to `q*` when `p = a q`, and to zero otherwise.
pub fn injective(quiver: &Arc<Quiver>, field: Field, i: usize) -> Result<Representation> {
    quiver.check_vertex(i)?;
    let n = quiver.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| quiver.path_count(j, i)).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
            for (col, p) in quiver.paths(a.source, i).iter().enumerate() {
                if p.first() == Some(&idx) {
                    let row = quiver.path_position(a.target, &p[1..]).expect("path tail is enumerated");
                    m.set(row, col, field.one());
                }
            }
            m
        })
        .collect();
    Representation::new(quiver, field, dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn a2_standard_modules() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let p1 = projective(&a2, Q, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.map(0), &Matrix::identity(Q, 1));
        assert_eq!(projective(&a2, Q, 1).unwrap(), simple(&a2, Q, 1).unwrap());
        let i2 = injective(&a2, Q, 1).unwrap();
        assert_eq!(i2, p1);
        assert_eq!(injective(&a2, Q, 0).unwrap(), simple(&a2, Q, 0).unwrap());
        assert!(simple(&a2, Q, 2).is_err());
    }

    #[test]
    fn kronecker_standard_modules() {
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        assert_eq!(injective(&kr, Q, 0).unwrap(), simple(&kr, Q, 0).unwrap());
        let p1 = projective(&kr, Q, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 2]);
        assert_eq!(p1.map(0), &Matrix::from_rows_i64(Q, &[&[1], &[0]]));
        assert_eq!(p1.map(1), &Matrix::from_rows_i64(Q, &[&[0], &[1]]));
        let i2 = injective(&kr, Q, 1).unwrap();
        assert_eq!(i2.dims(), &[2, 1]);
    }
}
