//! Machine checks on a family: special fiber, generic fibers, curvilinear
//! shape and the S-polynomial flatness certificate.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlinear::Rational;
use crate::par::{self, Execution};
use crate::poly::{
    buchberger, fglm, normal_form, s_polynomial, standard_monomials, Monomial, MonomialOrder, Poly,
    StandardMonomials, EPSILON,
};
use crate::series::{divided_difference_coords_with, eval_poly_as_series};
use crate::spider::{ReesFamily, SpiderType};

/// The λ values checked by default.
pub fn default_lambdas() -> Vec<Rational> {
    ["0", "1", "2", "-1", "1/2", "1/3"]
        .iter()
        .map(|s| s.parse().expect("valid rational literal"))
        .collect()
}

/// Summary of a reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbShape {
    pub order: String,
    pub leading_monomials: Vec<Monomial>,
    pub max_coefficient_bits: u64,
}

impl GbShape {
    fn of(gb: &[Poly], ord: &MonomialOrder) -> Self {
        GbShape {
            order: ord.describe(),
            leading_monomials: gb
                .iter()
                .filter_map(|g| g.leading_monomial(ord).ok())
                .collect(),
            max_coefficient_bits: gb.iter().map(Poly::max_coefficient_bits).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvilinearShape {
    /// `{x1^n, x2 − p2(x1), …, xr − pr(x1)}`.
    Curvilinear,
    /// The fiber has length `n` but the lex basis is not of that form.
    DimensionOnly,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub lambda: Rational,
    pub dimension: usize,
    /// Set at λ = 0 only.
    pub is_spider: Option<bool>,
    /// Set by [`check_curvilinear_fiber`] only.
    pub is_curvilinear: Option<bool>,
    pub shape: Option<CurvilinearShape>,
    pub gb: Vec<Poly>,
    pub gb_shape: GbShape,
}

impl fmt::Display for FiberReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda = {:>4}: dimension {}",
            self.lambda, self.dimension
        )?;
        if let Some(s) = self.is_spider {
            write!(f, ", spider fiber: {}", yes_no(s))?;
        }
        if let Some(shape) = self.shape {
            let label = match shape {
                CurvilinearShape::Curvilinear => "curvilinear (lex shape ok)",
                CurvilinearShape::DimensionOnly => "dimension correct, shape unexpected",
                CurvilinearShape::Failed => "not curvilinear",
            };
            write!(f, ", {label}")?;
        }
        Ok(())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Substitutes ε = λ in every generator.
pub fn specialize(family: &ReesFamily, lambda: &Rational) -> Vec<Poly> {
    family
        .family
        .iter()
        .map(|f| f.substitute(EPSILON, lambda))
        .collect()
}

fn x_vars(spider: &SpiderType) -> Vec<usize> {
    (1..=spider.rank()).collect()
}

fn spider_gb(spider: &SpiderType, ord: &MonomialOrder) -> Vec<Poly> {
    buchberger(&spider.monomial_ideal(), ord)
}

/// Gröbner basis and length of the fiber at ε = λ.
pub fn fiber_dimension(family: &ReesFamily, lambda: &Rational) -> Result<FiberReport> {
    let ord = family.order();
    let gens = specialize(family, lambda);
    let gb = buchberger(&gens, &ord);
    let dimension = match standard_monomials(&gb, &ord, &x_vars(&family.spider)) {
        StandardMonomials::Finite(v) => v.len(),
        StandardMonomials::Infinite => return Err(Error::InfiniteDimensional(lambda.to_string())),
    };
    let is_spider = lambda
        .is_zero()
        .then(|| gb == spider_gb(&family.spider, &ord));
    Ok(FiberReport {
        lambda: lambda.clone(),
        dimension,
        is_spider,
        is_curvilinear: None,
        shape: None,
        gb_shape: GbShape::of(&gb, &ord),
        gb,
    })
}

/// Fiber reports for several λ, in input order.
pub fn fiber_dimensions(
    family: &ReesFamily,
    lambdas: &[Rational],
    exec: Execution,
) -> Vec<Result<FiberReport>> {
    par::map(exec, lambdas, |l| fiber_dimension(family, l))
}

/// True iff the ε = 0 ideal equals the spider ideal `(x_i^{ℓi+1}, x_i x_j)`.
pub fn check_special_fiber(family: &ReesFamily) -> bool {
    let ord = family.order();
    let gens = specialize(family, &Rational::zero());
    buchberger(&gens, &ord) == spider_gb(&family.spider, &ord)
}

/// Lex basis at ε = λ ≠ 0, with the variable on the order-1 coordinate
/// (`x1` for non-increasing legs) least, and its shape.
///
/// The lex basis is obtained by FGLM from the weighted basis of the fiber,
/// which is far cheaper than running Buchberger in lex directly.
pub fn check_curvilinear_fiber(family: &ReesFamily, lambda: &Rational) -> Result<FiberReport> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let spider = &family.spider;
    let r = spider.rank();
    let n = spider.colength();
    let ord = MonomialOrder::lex_last(r, uniformizer(spider));
    let weighted = family.order();
    let weighted_gb = buchberger(&specialize(family, lambda), &weighted);
    let gb = fglm(&weighted_gb, &weighted, &ord, &x_vars(spider))
        .ok_or_else(|| Error::InfiniteDimensional(lambda.to_string()))?;
    let dimension = match standard_monomials(&gb, &ord, &x_vars(spider)) {
        StandardMonomials::Finite(v) => v.len(),
        StandardMonomials::Infinite => return Err(Error::InfiniteDimensional(lambda.to_string())),
    };
    let curvilinear = dimension == n && has_curvilinear_shape(&gb, &ord, spider);
    let shape = match (curvilinear, dimension == n) {
        (true, _) => CurvilinearShape::Curvilinear,
        (false, true) => CurvilinearShape::DimensionOnly,
        (false, false) => CurvilinearShape::Failed,
    };
    Ok(FiberReport {
        lambda: lambda.clone(),
        dimension,
        is_spider: None,
        is_curvilinear: Some(curvilinear),
        shape: Some(shape),
        gb_shape: GbShape::of(&gb, &ord),
        gb,
    })
}

/// The variable carrying the order-1 coordinate.
fn uniformizer(spider: &SpiderType) -> usize {
    1 + spider
        .coordinate_orders()
        .iter()
        .position(|&k| k == 1)
        .expect("some leg has order 1")
}

/// `{u^n} ∪ {x_v − p_v(u) : v ≠ u}` with `u` the uniformizer.
fn has_curvilinear_shape(gb: &[Poly], ord: &MonomialOrder, spider: &SpiderType) -> bool {
    let r = spider.rank();
    let n = spider.colength() as u32;
    let u = uniformizer(spider);
    let nvars = r + 1;
    if gb.len() != r || !gb.contains(&Poly::monomial(Monomial::var_power(nvars, u, n))) {
        return false;
    }
    let mut seen = vec![false; nvars];
    for g in gb {
        let Ok((lm, lc)) = g.leading_term(ord) else {
            return false;
        };
        if lm == Monomial::var_power(nvars, u, n) {
            continue;
        }
        let Some(v) = (1..=r).find(|&v| lm == Monomial::var_power(nvars, v, 1)) else {
            return false;
        };
        let mut tail = g.clone();
        tail.add_term(lm, -lc);
        if v == u || seen[v] || !tail.terms().all(|(m, _)| m.support().all(|x| x == u)) {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Result of reducing every S-pair of the family generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessCertificate {
    pub spair_count: usize,
    pub nonzero_remainders: usize,
    pub all_reduce_to_zero: bool,
    /// ε-free standard monomials of the family ideal's Gröbner basis.
    pub module_rank: usize,
}

impl FlatnessCertificate {
    pub fn passes(&self, expected_rank: usize) -> bool {
        self.all_reduce_to_zero && self.module_rank == expected_rank
    }
}

pub fn flatness_certificate(family: &ReesFamily) -> FlatnessCertificate {
    flatness_certificate_with(family, Execution::default())
}

/// Reduces all `C(g, 2)` S-polynomials under the family's weighted order
/// (ε least, weight 0). When they all vanish the generators are a Gröbner
/// basis and the ε-free standard monomials are counted directly; otherwise
/// the count comes from a full Buchberger run.
pub fn flatness_certificate_with(family: &ReesFamily, exec: Execution) -> FlatnessCertificate {
    let ord = family.order();
    let gens = &family.family;
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
        .collect();
    let nonzero = par::map(exec, &pairs, |&(i, j)| {
        let s = s_polynomial(&gens[i], &gens[j], &ord).expect("family generators are nonzero");
        !normal_form(&s, gens, &ord).is_zero()
    })
    .into_iter()
    .filter(|&b| b)
    .count();
    let all_zero = nonzero == 0;
    let gb;
    let basis: &[Poly] = if all_zero {
        gens
    } else {
        gb = buchberger(gens, &ord);
        &gb
    };
    let module_rank = standard_monomials(basis, &ord, &x_vars(&family.spider))
        .count()
        .unwrap_or(usize::MAX);
    FlatnessCertificate {
        spair_count: pairs.len(),
        nonzero_remainders: nonzero,
        all_reduce_to_zero: all_zero,
        module_rank,
    }
}

/// True iff `rel` (no ε) vanishes under `x_i ↦ v_i` in ℚ[t]/(tⁿ).
pub fn verify_relation(rel: &Poly, spider: &SpiderType) -> Result<bool> {
    verify_relation_with(rel, spider, &crate::series::default_a_values(spider.rank()))
}

pub fn verify_relation_with(
    rel: &Poly,
    spider: &SpiderType,
    a_values: &[Rational],
) -> Result<bool> {
    let coords = divided_difference_coords_with(spider, a_values)?;
    Ok(eval_poly_as_series(rel, &coords)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinear::int;
    use crate::spider::build_family;

    fn warm_up() -> ReesFamily {
        build_family(&SpiderType::new(vec![1, 1]).unwrap()).unwrap()
    }

    #[test]
    fn warm_up_fibers() {
        let fam = warm_up();
        let zero = fiber_dimension(&fam, &int(0)).unwrap();
        assert_eq!(zero.dimension, 3);
        assert_eq!(zero.is_spider, Some(true));
        assert!(check_special_fiber(&fam));
        let p = |s| Poly::parse(s, 3).unwrap();
        assert_eq!(
            specialize(&fam, &int(0)),
            vec![p("x*y"), p("x^2"), p("y^2")]
        );
    }

    #[test]
    fn warm_up_curvilinear() {
        let fam = warm_up();
        let rep = check_curvilinear_fiber(&fam, &int(1)).unwrap();
        let p = |s| Poly::parse(s, 3).unwrap();
        assert_eq!(rep.gb, vec![p("x^3"), p("y - x^2")]);
        assert_eq!(rep.is_curvilinear, Some(true));
        assert_eq!(
            check_curvilinear_fiber(&fam, &int(0)),
            Err(Error::ZeroLambda)
        );
    }

    #[test]
    fn warm_up_certificate() {
        let cert = flatness_certificate(&warm_up());
        assert_eq!(cert.spair_count, 3);
        assert!(cert.all_reduce_to_zero);
        assert_eq!(cert.module_rank, 3);
    }

    #[test]
    fn corrupted_special_fiber_is_detected() {
        let mut fam = warm_up();
        // x^2 - e*y  ->  x^2 - y: the ε = 0 fiber is no longer monomial.
        fam.family[1] = Poly::parse("x^2 - y", 3).unwrap();
        assert!(!check_special_fiber(&fam));
    }

    #[test]
    fn single_leg_fibers() {
        let fam = build_family(&SpiderType::new(vec![3]).unwrap()).unwrap();
        for l in [int(1), int(5)] {
            let rep = check_curvilinear_fiber(&fam, &l).unwrap();
            assert_eq!(rep.gb, vec![Poly::parse("x^4", 2).unwrap()]);
            assert_eq!(rep.shape, Some(CurvilinearShape::Curvilinear));
        }
    }

    #[test]
    fn relation_checks() {
        let s = SpiderType::new(vec![1, 1]).unwrap();
        assert!(verify_relation(&Poly::parse("x^2 - y", 3).unwrap(), &s).unwrap());
        assert!(!verify_relation(&Poly::parse("x^2 - 2*y", 3).unwrap(), &s).unwrap());
    }
}
