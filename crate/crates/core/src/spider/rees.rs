//! Weighted Rees homogenization and the assembled family over ℚ[ε].

use crate::error::{Error, Result};
use crate::exactlinear::Rational;
use crate::par::Execution;
use crate::poly::{Monomial, MonomialOrder, Poly, WeightVector, EPSILON};
use crate::series::{default_a_values, divided_difference_coords_with};

use super::weights::{
    check_weights, search_general_weights, select_weights_bounded, select_weights_with_fallback,
    DEFAULT_MAX_ENTRY,
};
use super::{
    build_basis_from, derive_relations_from, BorderMargin, Relation, RelationKind, SpiderType,
    DEFAULT_WEIGHT_BOUND,
};

/// `f^w = Σ c_α ε^{w_max − w(α)} x^α`, with `w_max` the border weight.
pub fn homogenize(rel: &Relation, weights: &WeightVector) -> Result<Poly> {
    let wmax = weights.weight(&rel.border);
    let mut out = Poly::zero(rel.polynomial.nvars());
    for (m, c) in rel.polynomial.terms() {
        if m.epsilon_exp() != 0 {
            return Err(Error::VariableOutOfRange(EPSILON));
        }
        let w = weights.weight(m);
        if m != &rel.border {
            if w == wmax {
                return Err(Error::TiedLeadingWeight { weight: wmax });
            }
            if w > wmax {
                return Err(Error::BorderNotHeaviest {
                    tail: m.to_string(),
                    tail_weight: w,
                    border_weight: wmax,
                });
            }
        }
        let e = u32::try_from(wmax - w)
            .map_err(|_| Error::InvalidWeights("ε exponent overflow".into()))?;
        out.add_term(m.with_exp(EPSILON, e), c.clone());
    }
    Ok(out)
}

/// How the weight vector of a family is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightStrategy {
    /// Consecutive weights, falling back to the general search.
    Auto { bound: u64, max_entry: u64 },
    /// Smallest admissible `(w, w+1, …)` with `w ≤ bound`.
    Consecutive { bound: u64 },
    /// Exhaustive scan over `[1, max_entry]^r`.
    General { max_entry: u64 },
    /// Caller-supplied weights, validated.
    Manual(WeightVector),
}

impl Default for WeightStrategy {
    fn default() -> Self {
        WeightStrategy::Auto {
            bound: DEFAULT_WEIGHT_BOUND,
            max_entry: DEFAULT_MAX_ENTRY,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilyOptions {
    /// Möbius parameters; defaults to `1..r`.
    pub a_values: Option<Vec<Rational>>,
    pub weights: WeightStrategy,
    pub execution: Execution,
}

/// The explicit family `I ⊂ ℚ[x1..xr, ε]` degenerating the curvilinear
/// algebra to the spider algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesFamily {
    pub spider: SpiderType,
    pub a_values: Vec<Rational>,
    /// Generic relations; `family[k]` homogenizes `relations[k]`.
    pub relations: Vec<Relation>,
    pub weights: WeightVector,
    pub margins: Vec<BorderMargin>,
    pub family: Vec<Poly>,
    /// Border monomial and `w_max` per generator.
    pub borders: Vec<(Monomial, u64)>,
    /// Single-leg case: nothing to deform, every fiber is the same.
    pub trivially_constant: bool,
}

impl ReesFamily {
    /// The weighted degrevlex order (ε least, weight 0) for this family.
    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::WeightedDegRevLex(self.weights.clone())
    }

    pub fn nvars(&self) -> usize {
        self.spider.nvars()
    }

    /// Rebuilds a family from stored generators: relations are recovered at
    /// ε = 1 and borders are the weighted leading monomials. No vanishing or
    /// correctness checks are made here; that is the verifier's job.
    pub fn from_generators(
        spider: SpiderType,
        a_values: Vec<Rational>,
        weights: WeightVector,
        family: Vec<Poly>,
    ) -> Result<Self> {
        if weights.len() != spider.rank() {
            return Err(Error::InvalidWeights(format!(
                "expected {} weights, got {}",
                spider.rank(),
                weights.len()
            )));
        }
        let ord = MonomialOrder::WeightedDegRevLex(weights.clone());
        let one = Rational::from_integer(1.into());
        let mut relations = Vec::with_capacity(family.len());
        let mut borders = Vec::with_capacity(family.len());
        for f in &family {
            if f.nvars() != spider.nvars() {
                return Err(Error::Descriptor(format!(
                    "generator has {} variables, expected {}",
                    f.nvars(),
                    spider.nvars()
                )));
            }
            let border = f.leading_monomial(&ord)?;
            if border.epsilon_exp() != 0 {
                return Err(Error::Descriptor(format!(
                    "leading monomial {border} carries a power of e"
                )));
            }
            let polynomial = f.substitute(EPSILON, &one);
            let kind = classify(&border, polynomial.len() == 1);
            borders.push((border.clone(), weights.weight(&border)));
            relations.push(Relation {
                polynomial,
                border,
                kind,
            });
        }
        let margins = super::border_margins(&relations, &weights);
        Ok(ReesFamily {
            trivially_constant: spider.rank() == 1,
            spider,
            a_values,
            relations,
            weights,
            margins,
            family,
            borders,
        })
    }
}

fn classify(border: &Monomial, vanishing: bool) -> RelationKind {
    let support: Vec<usize> = border.support().collect();
    match (support.as_slice(), vanishing) {
        ([i, j], _) => RelationKind::Mixed(*i, *j),
        ([i], true) => RelationKind::VanishingPower(*i),
        ([i], false) => RelationKind::PurePower(*i),
        // Not a spider border; kept so the verifier can report it.
        _ => RelationKind::PurePower(0),
    }
}

pub fn build_family(spider: &SpiderType) -> Result<ReesFamily> {
    build_family_with(spider, &FamilyOptions::default())
}

/// Full pipeline: coordinates, basis, relations, weights, homogenization,
/// with the construction invariants checked on the way out.
pub fn build_family_with(spider: &SpiderType, opts: &FamilyOptions) -> Result<ReesFamily> {
    let a_values = opts
        .a_values
        .clone()
        .unwrap_or_else(|| default_a_values(spider.rank()));
    let coords = divided_difference_coords_with(spider, &a_values)?;
    let basis = build_basis_from(coords)?;
    let relations = derive_relations_from(&basis, opts.execution)?;
    let selection = match &opts.weights {
        WeightStrategy::Auto { bound, max_entry } => {
            select_weights_with_fallback(&relations, spider, *bound, *max_entry)?
        }
        WeightStrategy::Consecutive { bound } => {
            select_weights_bounded(&relations, spider, *bound)?
        }
        WeightStrategy::General { max_entry } => {
            search_general_weights(&relations, spider, *max_entry)?
        }
        WeightStrategy::Manual(w) => check_weights(&relations, w)?,
    };
    let weights = selection.weights;
    let family = relations
        .iter()
        .map(|rel| homogenize(rel, &weights))
        .collect::<Result<Vec<_>>>()?;

    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    for (rel, f) in relations.iter().zip(&family) {
        let at_one = f.substitute(EPSILON, &one);
        let at_zero = f.substitute(EPSILON, &zero);
        let border_only = Poly::term(rel.border_coefficient(), rel.border.clone());
        if at_one != rel.polynomial || at_zero != border_only {
            return Err(Error::RelationNonzero {
                border: rel.border.to_string(),
            });
        }
    }

    let borders = relations
        .iter()
        .map(|rel| (rel.border.clone(), weights.weight(&rel.border)))
        .collect();
    Ok(ReesFamily {
        spider: spider.clone(),
        a_values,
        relations,
        weights,
        margins: selection.margins,
        family,
        borders,
        trivially_constant: spider.rank() == 1,
    })
}
