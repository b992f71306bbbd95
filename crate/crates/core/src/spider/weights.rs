//! Choosing weights that make every border strictly heavier than its tail.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, WeightVector};

use super::{Relation, SpiderType};

pub const DEFAULT_WEIGHT_BOUND: u64 = 1_000_000;
/// Largest entry tried by the general search fallback.
pub const DEFAULT_MAX_ENTRY: u64 = 64;

/// Border versus heaviest tail for one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderMargin {
    pub border: Monomial,
    pub border_weight: u64,
    pub heaviest_tail: Option<Monomial>,
    pub tail_weight: Option<u64>,
}

impl BorderMargin {
    /// `w(border) − w(heaviest tail)`; `None` when there is no tail.
    pub fn margin(&self) -> Option<i64> {
        self.tail_weight
            .map(|t| self.border_weight as i64 - t as i64)
    }

    pub fn holds(&self) -> bool {
        self.margin().is_none_or(|m| m > 0)
    }
}

impl fmt::Display for BorderMargin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.heaviest_tail, self.tail_weight) {
            (Some(t), Some(tw)) => write!(
                f,
                "border {} w={} > heaviest tail {} w={} (margin {})",
                self.border,
                self.border_weight,
                t,
                tw,
                self.border_weight as i64 - tw as i64
            ),
            _ => write!(
                f,
                "border {} w={} (no tail terms)",
                self.border, self.border_weight
            ),
        }
    }
}

pub fn border_margins(relations: &[Relation], weights: &WeightVector) -> Vec<BorderMargin> {
    relations
        .iter()
        .map(|rel| {
            let heaviest = rel
                .tail()
                .map(|(m, _)| (weights.weight(m), m))
                .max_by_key(|(w, _)| *w);
            BorderMargin {
                border: rel.border.clone(),
                border_weight: weights.weight(&rel.border),
                heaviest_tail: heaviest.map(|(_, m)| m.clone()),
                tail_weight: heaviest.map(|(w, _)| w),
            }
        })
        .collect()
}

/// Accepted weights with the per-relation margin table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSelection {
    pub weights: WeightVector,
    pub margins: Vec<BorderMargin>,
}

impl WeightSelection {
    /// The constraint that breaks first when every weight is lowered by one:
    /// smallest margin after the shift, then smallest current margin.
    pub fn binding(&self) -> Option<(usize, &BorderMargin)> {
        self.margins
            .iter()
            .enumerate()
            .filter_map(|(k, m)| {
                let margin = m.margin()?;
                let tail = m.heaviest_tail.as_ref()?;
                let slope = m.border.x_degree() as i64 - tail.x_degree() as i64;
                Some(((margin - slope, margin, k), (k, m)))
            })
            .min_by_key(|(key, _)| *key)
            .map(|(_, v)| v)
    }
}

/// Checks that `weights` makes every border the unique heaviest monomial of
/// its relation.
pub fn check_weights(relations: &[Relation], weights: &WeightVector) -> Result<WeightSelection> {
    let r = relations
        .first()
        .map_or(weights.len(), |rel| rel.border.nvars() - 1);
    if weights.len() != r {
        return Err(Error::InvalidWeights(format!(
            "expected {r} weights, got {}",
            weights.len()
        )));
    }
    let margins = border_margins(relations, weights);
    for m in &margins {
        match (m.margin(), &m.heaviest_tail) {
            (Some(0), _) => {
                return Err(Error::TiedLeadingWeight {
                    weight: m.border_weight,
                })
            }
            (Some(d), Some(t)) if d < 0 => {
                return Err(Error::BorderNotHeaviest {
                    tail: t.to_string(),
                    tail_weight: m.tail_weight.unwrap_or_default(),
                    border_weight: m.border_weight,
                })
            }
            _ => {}
        }
    }
    Ok(WeightSelection {
        weights: weights.clone(),
        margins,
    })
}

/// Smallest admissible consecutive weights (see [`select_weights_bounded`]);
/// when none exist, the lightest vector found by [`search_general_weights`].
pub fn select_weights(relations: &[Relation], spider: &SpiderType) -> Result<WeightSelection> {
    select_weights_with_fallback(relations, spider, DEFAULT_WEIGHT_BOUND, DEFAULT_MAX_ENTRY)
}

pub fn select_weights_with_fallback(
    relations: &[Relation],
    spider: &SpiderType,
    bound: u64,
    max_entry: u64,
) -> Result<WeightSelection> {
    match select_weights_bounded(relations, spider, bound) {
        Err(Error::NoFeasibleWeights { .. }) => {
            search_general_weights(relations, spider, max_entry)
                .map_err(|_| Error::NoFeasibleWeights { bound })
        }
        other => other,
    }
}

/// Smallest `w ≥ 1` such that `(w, w+1, …, w+r−1)` is admissible, the
/// weights following the coordinate orders of the legs.
pub fn select_weights_bounded(
    relations: &[Relation],
    spider: &SpiderType,
    bound: u64,
) -> Result<WeightSelection> {
    // For a border b and tail m put d = b − m. The condition
    // Σ d_i (w + k_i − 1) > 0 is linear in w: slope·w + offset > 0.
    let orders = spider.coordinate_orders();
    let mut lower: i128 = 1;
    let mut upper: i128 = bound as i128;
    for rel in relations {
        for (m, _) in rel.tail() {
            let (mut slope, mut offset) = (0i128, 0i128);
            for i in 1..=spider.rank() {
                let d = i128::from(rel.border.exp(i)) - i128::from(m.exp(i));
                slope += d;
                offset += d * (orders[i - 1] as i128 - 1);
            }
            match slope.signum() {
                1 => lower = lower.max((-offset).div_euclid(slope) + 1),
                -1 => upper = upper.min((offset - 1).div_euclid(-slope)),
                _ if offset <= 0 => return Err(Error::NoFeasibleWeights { bound }),
                _ => {}
            }
        }
    }
    if lower > upper {
        return Err(Error::NoFeasibleWeights { bound });
    }
    check_weights(
        relations,
        &WeightVector::consecutive_by_order(lower as u64, &orders),
    )
}

/// Admissible vector in `[1, max_entry]^r` with the smallest total weight,
/// ties broken lexicographically. Vectors are visited by increasing total,
/// so the search stops at the first hit.
pub fn search_general_weights(
    relations: &[Relation],
    spider: &SpiderType,
    max_entry: u64,
) -> Result<WeightSelection> {
    let r = spider.rank() as u64;
    for total in r..=r * max_entry {
        let mut prefix = Vec::with_capacity(r as usize);
        if let Some(sel) = first_with_total(relations, &mut prefix, r, total, max_entry) {
            return Ok(sel);
        }
    }
    Err(Error::NoFeasibleWeights { bound: max_entry })
}

/// Lexicographically first admissible completion of `prefix` to `len`
/// entries summing to `total`.
fn first_with_total(
    relations: &[Relation],
    prefix: &mut Vec<u64>,
    len: u64,
    total: u64,
    max_entry: u64,
) -> Option<WeightSelection> {
    let left = len - prefix.len() as u64;
    let used: u64 = prefix.iter().sum();
    let remaining = total - used;
    if left == 1 {
        if remaining == 0 || remaining > max_entry {
            return None;
        }
        prefix.push(remaining);
        let w = WeightVector::new(prefix.clone()).ok();
        prefix.pop();
        return w.and_then(|w| check_weights(relations, &w).ok());
    }
    let hi = max_entry.min(remaining.saturating_sub(left - 1));
    for v in 1..=hi {
        if remaining - v > (left - 1) * max_entry {
            continue;
        }
        prefix.push(v);
        let found = first_with_total(relations, prefix, len, total, max_entry);
        prefix.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
