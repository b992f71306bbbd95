use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::poly::{Monomial, Poly};
use crate::series::{eval_poly_as_series, TruncSeries};

use super::{build_basis, expand_in_basis, SpiderBasis, SpiderType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// Border `x_i x_j`, `i < j`.
    Mixed(usize, usize),
    /// Border `x_i^{ℓi+1}` with a nonzero basis expansion.
    PurePower(usize),
    /// Border `x_i^{ℓi+1}` that is already zero in ℚ[t]/(tⁿ).
    VanishingPower(usize),
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Mixed(i, j) => write!(f, "mixed({i},{j})"),
            RelationKind::PurePower(i) => write!(f, "pure-power({i})"),
            RelationKind::VanishingPower(i) => write!(f, "vanishing-power({i})"),
        }
    }
}

/// An integer relation `border·c − tail = 0` holding in ℚ[t]/(tⁿ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub polynomial: Poly,
    pub border: Monomial,
    pub kind: RelationKind,
}

impl Relation {
    pub fn border_coefficient(&self) -> crate::exactlinear::Rational {
        self.polynomial.coeff(&self.border)
    }

    /// Terms other than the border.
    pub fn tail(&self) -> impl Iterator<Item = (&Monomial, &crate::exactlinear::Rational)> {
        self.polynomial
            .terms()
            .filter(move |(m, _)| **m != self.border)
    }

    /// True when the relation is the bare border monomial.
    pub fn is_vanishing(&self) -> bool {
        self.polynomial.len() == 1
    }
}

/// Derives the generic relations of `spider`: one mixed relation per pair
/// `i < j`, then one pure-power relation per leg.
pub fn derive_relations(spider: &SpiderType) -> Result<Vec<Relation>> {
    derive_relations_from(&build_basis(spider)?, Execution::default())
}

pub fn derive_relations_from(basis: &SpiderBasis, exec: Execution) -> Result<Vec<Relation>> {
    let spider = basis.spider();
    let r = spider.rank();
    let nvars = spider.nvars();
    let v = &basis.coords.coords;

    let mut jobs = Vec::new();
    for i in 1..=r {
        for j in i + 1..=r {
            jobs.push(RelationKind::Mixed(i, j));
        }
    }
    jobs.extend((1..=r).map(RelationKind::PurePower));

    par::try_map(exec, &jobs, |&kind| {
        let (border, series): (Monomial, TruncSeries) = match kind {
            RelationKind::Mixed(i, j) => (
                Monomial::var_power(nvars, i, 1).with_exp(j, 1),
                v[i - 1].mul(&v[j - 1])?,
            ),
            RelationKind::PurePower(i) | RelationKind::VanishingPower(i) => {
                let e = spider.leg(i) + 1;
                (Monomial::var_power(nvars, i, e), v[i - 1].pow(e))
            }
        };
        let kind = match kind {
            RelationKind::PurePower(i) if series.is_zero() => RelationKind::VanishingPower(i),
            k => k,
        };
        let rel = relation_from_series(border, &series, basis, kind)?;
        if !eval_poly_as_series(&rel.polynomial, &basis.coords)?.is_zero() {
            return Err(Error::RelationNonzero {
                border: rel.border.to_string(),
            });
        }
        Ok(rel)
    })
}

/// `border − Σ c_m·m = 0` where `c` is the basis expansion of `series`, with
/// denominators cleared by their LCM, content removed and the border
/// coefficient made positive.
fn relation_from_series(
    border: Monomial,
    series: &TruncSeries,
    basis: &SpiderBasis,
    kind: RelationKind,
) -> Result<Relation> {
    let mut poly = Poly::monomial(border.clone());
    if !series.is_zero() {
        let coeffs = expand_in_basis(series, basis)?;
        for (m, c) in basis.monomials.iter().zip(coeffs) {
            poly.add_term(m.clone(), -c);
        }
    }
    let poly = poly.primitive_at(&border);
    debug_assert!(poly.coeff(&border).is_positive() && poly.all_integer());
    Ok(Relation {
        polynomial: poly,
        border,
        kind,
    })
}
