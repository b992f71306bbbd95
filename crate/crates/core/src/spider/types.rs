use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlinear::Rational;
use crate::poly::{Monomial, Poly};

/// Leg lengths `(ℓ1, …, ℓr)` of a spider algebra; colength `n = 1 + Σ ℓi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpiderType {
    legs: Vec<u32>,
}

impl SpiderType {
    pub fn new(legs: Vec<u32>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidSpider("at least one leg is required".into()));
        }
        if let Some(i) = legs.iter().position(|&l| l == 0) {
            return Err(Error::InvalidSpider(format!(
                "leg {} has length 0; legs must be >= 1",
                i + 1
            )));
        }
        Ok(SpiderType { legs })
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    /// Number of legs `r`.
    pub fn rank(&self) -> usize {
        self.legs.len()
    }

    /// `n = 1 + Σ ℓi`.
    pub fn colength(&self) -> usize {
        1 + self.legs.iter().map(|&l| l as usize).sum::<usize>()
    }

    /// Number of polynomial variables including ε.
    pub fn nvars(&self) -> usize {
        self.rank() + 1
    }

    /// Length of leg `i` (1-based, matching `x_i`).
    pub fn leg(&self, i: usize) -> u32 {
        self.legs[i - 1]
    }

    /// t-adic order of the coordinate attached to each leg: the longest leg
    /// gets order 1, ties keep their input order. For non-increasing legs
    /// this is `1, 2, …, r`.
    pub fn coordinate_orders(&self) -> Vec<usize> {
        let mut by_length: Vec<usize> = (0..self.rank()).collect();
        by_length.sort_by_key(|&i| std::cmp::Reverse(self.legs[i]));
        let mut orders = vec![0; self.rank()];
        for (k, &i) in by_length.iter().enumerate() {
            orders[i] = k + 1;
        }
        orders
    }

    /// Generators `x_i^{ℓi+1}` and `x_i x_j` (i < j) of the spider ideal, in
    /// the same order as the family: mixed products first, then pure powers.
    pub fn monomial_ideal(&self) -> Vec<Poly> {
        let nvars = self.nvars();
        let r = self.rank();
        let mut gens = Vec::new();
        for i in 1..=r {
            for j in i + 1..=r {
                let m = Monomial::var_power(nvars, i, 1).with_exp(j, 1);
                gens.push(Poly::term(Rational::one(), m));
            }
        }
        for i in 1..=r {
            gens.push(Poly::monomial(Monomial::var_power(
                nvars,
                i,
                self.leg(i) + 1,
            )));
        }
        gens
    }
}

impl fmt::Display for SpiderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.legs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for SpiderType {
    type Err = Error;

    /// Accepts `7,7,7` or `(7,7,7)`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let legs = body
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidSpider(format!("`{}` is not a leg length", t.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SpiderType::new(legs)
    }
}
