mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;

use spider_core::exactlinear::{frac, int, rank, solve_linear, Matrix, Rational};
use spider_core::series::eval_poly_as_series;
use spider_core::spider::{build_basis, expand_in_basis};
use spider_core::Error;

use common::{oracle_rank, p3, spider, G_X};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(p, q)| frac(p, q))
}

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(small_rational(), c), r)
    })
}

proptest! {
    #[test]
    fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip(), Rational::one());
        }
    }

    #[test]
    fn rank_of_transpose(rows in matrix(6)) {
        let m = Matrix::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m), oracle_rank(rows));
    }

    #[test]
    fn solve_multiplies_back(rows in matrix(5), x in prop::collection::vec(small_rational(), 5)) {
        let m = Matrix::from_rows(rows).unwrap();
        let x = &x[..m.cols()];
        let b = m.mul_vec(x).unwrap();
        match solve_linear(&m, &b) {
            Ok(sol) => {
                prop_assert_eq!(rank(&m), m.cols());
                prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
            }
            Err(Error::NonUnique { rank: r, unknowns }) => {
                prop_assert!(r < unknowns);
                prop_assert_eq!(r, rank(&m));
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn inconsistent_system() {
    let m = Matrix::from_i64(&[&[1, 1], &[2, 2]]).unwrap();
    assert_eq!(solve_linear(&m, &[int(1), int(3)]), Err(Error::NoSolution));
}

#[test]
fn pure_power_expansion_matches_gx() {
    // x^8 expanded in the spider basis of (7,7,7): the tail of g_x over -32.
    let s = spider(&[7, 7, 7]);
    let basis = build_basis(&s).unwrap();
    let x8 = eval_poly_as_series(&p3("x^8"), &basis.coords).unwrap();
    let coeffs = expand_in_basis(&x8, &basis).unwrap();
    let gx = p3(G_X);
    for (m, c) in basis.monomials.iter().zip(&coeffs) {
        assert_eq!(*c, -gx.coeff(m) / int(32), "coefficient of {m}");
    }
    assert!(coeffs[0].is_zero());
    assert_eq!(coeffs.len(), 22);
}
