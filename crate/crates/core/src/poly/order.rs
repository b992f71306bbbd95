use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// Positive integer weights of `x1..xr`; ε has weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(w: Vec<u64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some(i) = w.iter().position(|&wi| wi == 0) {
            return Err(Error::InvalidWeights(format!(
                "weight of x{} must be positive",
                i + 1
            )));
        }
        Ok(WeightVector(w))
    }

    /// `(w, w+1, …, w+r-1)`.
    pub fn consecutive(start: u64, r: usize) -> Self {
        WeightVector((0..r as u64).map(|i| start + i).collect())
    }

    /// `start + k − 1` for a variable whose coordinate has order `k`.
    pub fn consecutive_by_order(start: u64, orders: &[usize]) -> Self {
        WeightVector(orders.iter().map(|&k| start + k as u64 - 1).collect())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weighted degree of the x-part of `m`.
    pub fn weight(&self, m: &Monomial) -> u64 {
        self.0
            .iter()
            .zip(&m.exps()[1..])
            .map(|(w, &e)| w * u64::from(e))
            .sum()
    }
}

impl TryFrom<Vec<u64>> for WeightVector {
    type Error = Error;
    fn try_from(w: Vec<u64>) -> Result<Self> {
        WeightVector::new(w)
    }
}

impl From<WeightVector> for Vec<u64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Monomial orders on `ℚ[ε, x1..xr]`. ε is below every `xi` in both kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weighted degree of the x-part, ties by reverse lexicographic on
    /// `(x1..xr)`, then by the ε exponent (more ε is larger).
    WeightedDegRevLex(WeightVector),
    /// Pure lexicographic. The vector lists the x-variable indices from most
    /// to least significant; ε is compared last.
    Lex(Vec<usize>),
}

impl MonomialOrder {
    /// Lex with `x_r > … > x_2 > x_1`, the elimination order that exposes a
    /// curvilinear fiber as `{x1^n, x_i - p_i(x1)}`.
    pub fn lex_x1_last(r: usize) -> Self {
        MonomialOrder::Lex((1..=r).rev().collect())
    }

    /// Lex with `last` least significant and the others in `x_r > … > x_1`
    /// order above it.
    pub fn lex_last(r: usize, last: usize) -> Self {
        let mut vars: Vec<usize> = (1..=r).rev().filter(|&v| v != last).collect();
        vars.push(last);
        MonomialOrder::Lex(vars)
    }

    /// Lex with `x_1 > … > x_r`.
    pub fn lex(r: usize) -> Self {
        MonomialOrder::Lex((1..=r).collect())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::WeightedDegRevLex(w) => w
                .weight(a)
                .cmp(&w.weight(b))
                .then_with(|| {
                    let (ea, eb) = (a.exps(), b.exps());
                    for v in (1..ea.len()).rev() {
                        match ea[v].cmp(&eb[v]) {
                            Ordering::Equal => continue,
                            other => return other.reverse(),
                        }
                    }
                    Ordering::Equal
                })
                .then_with(|| a.epsilon_exp().cmp(&b.epsilon_exp())),
            MonomialOrder::Lex(vars) => vars
                .iter()
                .map(|&v| a.exp(v).cmp(&b.exp(v)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.epsilon_exp().cmp(&b.epsilon_exp())),
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MonomialOrder::WeightedDegRevLex(w) => format!("weighted-degrevlex{w}"),
            MonomialOrder::Lex(vars) => {
                let parts: Vec<String> = vars.iter().map(|v| format!("x{v}")).collect();
                format!("lex({} > e)", parts.join(" > "))
            }
        }
    }
}
