use perpcat::exactlin::Field;
use perpcat::homalg::{ext_dim, hom_dim, is_exceptional};
use perpcat::quiverrep::corpus::{kronecker_preinjective, kronecker_preprojective};

// For preprojectives of dimension (m, m + 1) and (n, n + 1):
// dim Hom = max(n - m + 1, 0), and Ext vanishes unless m > n + 1.
fn expected(m: usize, n: usize) -> (usize, usize) {
    let euler = n as i64 - m as i64 + 1;
    if euler >= 0 {
        (euler as usize, 0)
    } else {
        (0, (-euler) as usize)
    }
}

#[test]
fn preprojective_hom_ext_table() {
    for field in [Field::Rationals, Field::Prime(3)] {
        let p: Vec<_> = (0..5).map(|n| kronecker_preprojective(field, n).unwrap()).collect();
        for (m, pm) in p.iter().enumerate() {
            assert!(is_exceptional(pm).unwrap());
            for (n, pn) in p.iter().enumerate() {
                let got = (hom_dim(pm, pn).unwrap(), ext_dim(pm, pn).unwrap());
                assert_eq!(got, expected(m, n), "P{m} -> P{n} over {field:?}");
            }
        }
    }
}

#[test]
fn preinjectives_never_map_to_preprojectives() {
    let field = Field::Rationals;
    for m in 0..4 {
        let i = kronecker_preinjective(field, m).unwrap();
        for n in 0..4 {
            let p = kronecker_preprojective(field, n).unwrap();
            assert_eq!(hom_dim(&i, &p).unwrap(), 0);
            // Euler form of (m + 1, m) against (n, n + 1).
            let euler = ((m + 1) * n + m * (n + 1)) as i64 - 2 * ((m + 1) * (n + 1)) as i64;
            assert_eq!(ext_dim(&i, &p).unwrap() as i64, -euler);
        }
    }
}
