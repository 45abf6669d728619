use crate::error::{Error, Result};
use crate::quiverrep::{Morphism, Representation};

/// Outcome at the joint between `maps[position]` and `maps[position + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReport {
    pub position: usize,
    pub composite_zero: bool,
    pub ranks_match: bool,
}

impl JointReport {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.ranks_match
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub joints: Vec<JointReport>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.joints.iter().all(JointReport::exact)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.joints.iter().find(|j| !j.exact()).map(|j| j.position)
    }
}

/// Exactness at every interior joint of a composable chain: the composite
/// vanishes and `rank f + rank g = dim` vertexwise. Boundary zeros must be
/// passed explicitly (see [`from_zero`] and [`to_zero`]).
pub fn check_exact(chain: &[Morphism]) -> Result<ExactnessReport> {
    for (i, w) in chain.windows(2).enumerate() {
        if w[0].target() != w[1].source() {
            return Err(Error::InvalidChain(i));
        }
    }
    let joints = chain
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let (f, g) = (&w[0], &w[1]);
            let composite_zero = g.compose(f).map(|c| c.is_zero()).unwrap_or(false);
            let mid = f.target();
            let ranks_match = f
                .ranks()
                .iter()
                .zip(g.ranks())
                .enumerate()
                .all(|(v, (rf, rg))| rf + rg == mid.dim(v));
            JointReport { position: i, composite_zero, ranks_match }
        })
        .collect();
    Ok(ExactnessReport { joints })
}

/// `0 -> M`.
pub fn from_zero(m: &Representation) -> Morphism {
    Morphism::zero(&Representation::zero(m.quiver(), m.field()), m)
}

/// `M -> 0`.
pub fn to_zero(m: &Representation) -> Morphism {
    Morphism::zero(m, &Representation::zero(m.quiver(), m.field()))
}

/// `0 -> L -> E -> N -> 0`, verified on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    iota: Morphism,
    pi: Morphism,
}

impl ShortExactSequence {
    pub fn new(iota: Morphism, pi: Morphism) -> Result<ShortExactSequence> {
        let report = check_exact(&[from_zero(iota.source()), iota.clone(), pi.clone(), to_zero(pi.target())])?;
        if let Some(j) = report.first_failure() {
            return Err(Error::VerificationFailed(format!("short sequence not exact at joint {j}")));
        }
        Ok(ShortExactSequence { iota, pi })
    }

    pub fn iota(&self) -> &Morphism {
        &self.iota
    }

    pub fn pi(&self) -> &Morphism {
        &self.pi
    }

    pub fn left(&self) -> &Representation {
        self.iota.source()
    }

    pub fn middle(&self) -> &Representation {
        self.iota.target()
    }

    pub fn right(&self) -> &Representation {
        self.pi.target()
    }

    pub fn chain(&self) -> Vec<Morphism> {
        vec![from_zero(self.left()), self.iota.clone(), self.pi.clone(), to_zero(self.right())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Field, Matrix};
    use crate::quiverrep::{direct_sum, projective, simple, Quiver};

    const Q: Field = Field::Rationals;

    #[test]
    fn identity_is_exact() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let m = projective(&a2, Q, 0).unwrap();
        let r = check_exact(&[from_zero(&m), Morphism::identity(&m), to_zero(&m)]).unwrap();
        assert!(r.exact());
    }

    #[test]
    fn nonsplit_a2_sequence() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let s1 = simple(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        let p1 = projective(&a2, Q, 0).unwrap();
        let iota = Morphism::new(&s2, &p1, vec![Matrix::zeros(Q, 1, 0), Matrix::identity(Q, 1)]).unwrap();
        let pi = Morphism::new(&p1, &s1, vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 1)]).unwrap();
        assert!(ShortExactSequence::new(iota, pi).is_ok());
    }

    #[test]
    fn wrong_summand_is_not_exact() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let s1 = simple(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        let sum = direct_sum(&[s2.clone(), s1]).unwrap();
        let iota = sum.injection(0);
        let pi = sum.projection(0);
        let r = check_exact(&[from_zero(&s2), iota, pi, to_zero(&s2)]).unwrap();
        assert!(!r.exact());
        assert_eq!(r.first_failure(), Some(1));
    }

    #[test]
    fn non_composable_chain() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        let s1 = simple(&a2, Q, 0).unwrap();
        let s2 = simple(&a2, Q, 1).unwrap();
        let r = check_exact(&[Morphism::identity(&s1), Morphism::identity(&s2)]);
        assert!(matches!(r, Err(Error::InvalidChain(0))));
    }
}
