mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;

use spider_core::exactlinear::{frac, int, Rational};
use spider_core::par::Execution;
use spider_core::poly::{Monomial, Poly, EPSILON};
use spider_core::spider::build_family;
use spider_core::verify::*;
use spider_core::Error;

use common::*;

#[test]
fn golden_fibers() {
    let fam = build_family(&spider(&[7, 7, 7])).unwrap();
    for l in default_lambdas() {
        assert_eq!(
            fiber_dimension(&fam, &l).unwrap().dimension,
            22,
            "lambda {l}"
        );
    }
    assert!(check_special_fiber(&fam));
    let special = fiber_dimension(&fam, &Rational::zero()).unwrap();
    assert_eq!(special.is_spider, Some(true));
    let want: Vec<Poly> = ["x*y", "x*z", "y*z", "x^8", "y^8", "z^8"]
        .iter()
        .map(|s| p3(s))
        .collect();
    let mut got = special.gb.clone();
    got.sort_by_key(|p| p.to_string());
    let mut want_sorted = want;
    want_sorted.sort_by_key(|p| p.to_string());
    assert_eq!(got, want_sorted);
}

#[test]
fn golden_lex_shape() {
    let fam = build_family(&spider(&[7, 7, 7])).unwrap();
    let report = check_curvilinear_fiber(&fam, &int(1)).unwrap();
    assert_eq!(report.shape, Some(CurvilinearShape::Curvilinear));
    assert_eq!(report.gb[0], Poly::monomial(Monomial::var_power(4, 1, 22)));
    assert_eq!(report.dimension, 22);
    assert_eq!(
        check_curvilinear_fiber(&fam, &int(0)),
        Err(Error::ZeroLambda)
    );
}

#[test]
fn golden_certificate() {
    let fam = build_family(&spider(&[7, 7, 7])).unwrap();
    for exec in [Execution::Sequential, Execution::Parallel] {
        let cert = flatness_certificate_with(&fam, exec);
        assert_eq!(cert.spair_count, 15);
        assert!(cert.all_reduce_to_zero);
        assert_eq!(cert.module_rank, 22);
        assert!(cert.passes(22));
    }
}

#[test]
fn tampered_family_fails() {
    let mut fam = build_family(&spider(&[7, 7, 7])).unwrap();
    let m = Monomial::from_exps(vec![103, 0, 0, 1]);
    fam.family[3].add_term(m, int(1));
    let rel = fam.family[3].substitute(EPSILON, &int(1));
    assert!(!verify_relation(&rel, &fam.spider).unwrap());
    assert!(!flatness_certificate(&fam).passes(22));
}

#[test]
fn relation_checks() {
    let s = spider(&[7, 7, 7]);
    assert!(verify_relation(&p3(G_X), &s).unwrap());
    assert!(verify_relation(&p3(G_Y), &s).unwrap());
    assert!(!verify_relation(&p3("x*y"), &s).unwrap());
}

/// Every small type, checked end to end against the Macaulay oracle.
#[test]
fn small_types_end_to_end() {
    for s in small_types(3, 3) {
        let n = s.colength();
        let fam = build_family(&s).unwrap();
        assert!(check_special_fiber(&fam), "{s}");
        for l in [int(1), int(2), int(-1)] {
            let report = check_curvilinear_fiber(&fam, &l).unwrap();
            assert_eq!(report.dimension, n, "{s} at {l}");
            assert_eq!(
                report.shape,
                Some(CurvilinearShape::Curvilinear),
                "{s} at {l}"
            );
            assert_eq!(fiber_dimension(&fam, &l).unwrap().dimension, n);
            if n <= 8 {
                let gens = specialize(&fam, &l);
                assert_eq!(macaulay_corank(&gens, s.rank(), n as u32), n, "{s} at {l}");
            }
        }
        let cert = flatness_certificate(&fam);
        assert!(cert.passes(n), "{s}: {cert:?}");
    }
}

#[test]
fn macaulay_oracle_on_known_ideals() {
    let p = |t: &str| Poly::parse(t, 3).unwrap();
    // Spider (2,2) and a non-monomial colength-5 ideal.
    assert_eq!(macaulay_corank(&[p("x^3"), p("x*y"), p("y^3")], 2, 5), 5);
    assert_eq!(macaulay_corank(&[p("y - x^2"), p("x^5")], 2, 5), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `f(λ^{w_1} x_1, …, λ) = λ^{w_max} · f(x_1, …, 1)`.
    #[test]
    fn fibers_are_weighted_rescalings(num in -5i64..=5, den in 1i64..=4, k in 0usize..6) {
        prop_assume!(num != 0);
        let lambda = frac(num, den);
        let fam = build_family(&spider(&[3, 2, 2])).unwrap();
        let k = k % fam.family.len();
        let mut scales = vec![Rational::one()];
        scales.extend(fam.weights.as_slice().iter().map(|&w| num_traits::pow(lambda.clone(), w as usize)));
        let lhs = fam.family[k].substitute(EPSILON, &lambda).scale_variables(&scales);
        let (_, wmax) = &fam.borders[k];
        let rhs = fam.family[k]
            .substitute(EPSILON, &int(1))
            .scale(&num_traits::pow(lambda, *wmax as usize));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn fiber_sweep_matches_sequential() {
    let fam = build_family(&spider(&[3, 3, 2])).unwrap();
    let lambdas = default_lambdas();
    let par: Vec<usize> = fiber_dimensions(&fam, &lambdas, Execution::Parallel)
        .into_iter()
        .map(|r| r.unwrap().dimension)
        .collect();
    let seq: Vec<usize> = fiber_dimensions(&fam, &lambdas, Execution::Sequential)
        .into_iter()
        .map(|r| r.unwrap().dimension)
        .collect();
    assert_eq!(par, seq);
    assert!(par.iter().all(|&d| d == 9));
}
