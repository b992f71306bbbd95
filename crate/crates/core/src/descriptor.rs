//! JSON family descriptors. Coefficients are decimal integer strings and
//! exponent vectors are ordered `(ε, x1, …, xr)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinear::Rational;
use crate::poly::{Monomial, MonomialOrder, Poly, VarNames};
use crate::spider::{ReesFamily, SpiderBasis, SpiderType};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDescriptor {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDescriptor {
    pub border: Vec<u32>,
    pub w_max: u64,
    pub terms: Vec<TermDescriptor>,
}

/// Provenance that is not needed to reconstruct the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationMetadata {
    pub a_values: Vec<String>,
    pub basis_order: Vec<String>,
    pub relation_kinds: Vec<String>,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub schema_version: String,
    pub legs: Vec<u32>,
    pub weights: Vec<u64>,
    pub variables: Vec<String>,
    pub generators: Vec<GeneratorDescriptor>,
    pub metadata: DerivationMetadata,
}

impl FamilyDescriptor {
    pub fn from_family(family: &ReesFamily, basis: Option<&SpiderBasis>) -> Result<Self> {
        let ord = family.order();
        let names = VarNames::standard(family.nvars());
        let mut generators = Vec::with_capacity(family.family.len());
        for (f, (border, w_max)) in family.family.iter().zip(&family.borders) {
            let terms = f
                .sorted_terms(&ord)
                .into_iter()
                .map(|(m, c)| {
                    if !c.is_integer() {
                        return Err(Error::Descriptor(format!(
                            "non-integer coefficient {c} in generator"
                        )));
                    }
                    Ok(TermDescriptor {
                        coefficient: c.to_integer().to_string(),
                        exponents: m.exps().to_vec(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            generators.push(GeneratorDescriptor {
                border: border.exps().to_vec(),
                w_max: *w_max,
                terms,
            });
        }
        let basis_order = match basis {
            Some(b) => b.monomials.iter().map(ToString::to_string).collect(),
            None => default_basis_order(&family.spider),
        };
        Ok(FamilyDescriptor {
            schema_version: SCHEMA_VERSION.to_string(),
            legs: family.spider.legs().to_vec(),
            weights: family.weights.as_slice().to_vec(),
            variables: (0..names.len())
                .map(|v| names.name(v).to_string())
                .collect(),
            generators,
            metadata: DerivationMetadata {
                a_values: family.a_values.iter().map(ToString::to_string).collect(),
                basis_order,
                relation_kinds: family
                    .relations
                    .iter()
                    .map(|r| r.kind.to_string())
                    .collect(),
                generator: format!("spiderfam {}", env!("CARGO_PKG_VERSION")),
            },
        })
    }

    /// Reconstructs the family; relations are recovered at ε = 1.
    pub fn to_family(&self) -> Result<ReesFamily> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Descriptor(format!(
                "unsupported schema_version `{}`",
                self.schema_version
            )));
        }
        let spider = SpiderType::new(self.legs.clone())?;
        let weights = crate::poly::WeightVector::new(self.weights.clone())?;
        let nvars = spider.nvars();
        let a_values = self
            .metadata
            .a_values
            .iter()
            .map(|s| crate::exactlinear::parse_rational(s))
            .collect::<Result<Vec<Rational>>>()?;
        let mut family = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            let mut p = Poly::zero(nvars);
            for t in &g.terms {
                if t.exponents.len() != nvars {
                    return Err(Error::Descriptor(format!(
                        "generator {}: exponent vector of length {}, expected {nvars}",
                        k + 1,
                        t.exponents.len()
                    )));
                }
                let c: BigInt = t.coefficient.parse().map_err(|_| {
                    Error::Descriptor(format!(
                        "generator {}: `{}` is not an integer",
                        k + 1,
                        t.coefficient
                    ))
                })?;
                p.add_term(
                    Monomial::from_exps(t.exponents.clone()),
                    Rational::from_integer(c),
                );
            }
            if p.is_zero() {
                return Err(Error::Descriptor(format!("generator {} is zero", k + 1)));
            }
            family.push(p);
        }
        let fam = ReesFamily::from_generators(spider, a_values, weights, family)?;
        for (k, (g, (border, w))) in self.generators.iter().zip(&fam.borders).enumerate() {
            if g.border != border.exps() || g.w_max != *w {
                return Err(Error::Descriptor(format!(
                    "generator {}: stored border does not match its leading term",
                    k + 1
                )));
            }
        }
        Ok(fam)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("descriptor serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    /// Generator `k` rendered for humans.
    pub fn generator_text(family: &ReesFamily, k: usize) -> String {
        let names = VarNames::standard(family.nvars());
        let ord: MonomialOrder = family.order();
        family.family[k].display_with(&names, &ord).to_string()
    }
}

fn default_basis_order(spider: &SpiderType) -> Vec<String> {
    let nvars = spider.nvars();
    std::iter::once(Monomial::one(nvars))
        .chain(
            (1..=spider.rank())
                .flat_map(|i| (1..=spider.leg(i)).map(move |k| Monomial::var_power(nvars, i, k))),
        )
        .map(|m| m.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spider::build_family;

    #[test]
    fn warm_up_round_trip() {
        let fam = build_family(&SpiderType::new(vec![1, 1]).unwrap()).unwrap();
        let d = FamilyDescriptor::from_family(&fam, None).unwrap();
        let text = d.to_json();
        assert!(text.contains("\"schema_version\": \"1\""));
        let back = FamilyDescriptor::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_family().unwrap().family, fam.family);
    }

    #[test]
    fn rejects_bad_documents() {
        let fam = build_family(&SpiderType::new(vec![1, 1]).unwrap()).unwrap();
        let d = FamilyDescriptor::from_family(&fam, None).unwrap();

        let mut v = d.clone();
        v.schema_version = "2".into();
        assert!(v.to_family().is_err());

        let mut c = d.clone();
        c.generators[0].terms[0].coefficient = "1.5".into();
        assert!(c.to_family().is_err());

        let mut e = d.clone();
        e.generators[1].terms[0].exponents.push(0);
        assert!(e.to_family().is_err());

        let mut b = d;
        b.generators[1].border = vec![0, 0, 1];
        assert!(b.to_family().is_err());

        assert!(FamilyDescriptor::from_json("{").is_err());
    }
}
