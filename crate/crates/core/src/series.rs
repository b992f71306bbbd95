//! Truncated power series ℚ[t]/(tⁿ), Möbius generators `u_a = t/(1 − a t)` and
//! the divided-difference coordinates built from them.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlinear::{int, Rational};
use crate::poly::Poly;
use crate::spider::SpiderType;

/// Element of ℚ[t]/(tⁿ); `coeffs[i]` is the coefficient of `tⁱ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        TruncSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// `c·t^k` (zero when `k ≥ order`).
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads or truncates `coeffs` to `order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        coeffs.resize(order, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_i64(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn t_adic_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*t^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 mod t^{}", self.order())
        } else {
            write!(f, "{} mod t^{}", terms.join(" + "), self.order())
        }
    }
}

/// `u_a = t/(1 − a t) = Σ_{k≥1} a^{k−1} tᵏ` mod tⁿ.
pub fn mobius_generator(a: &Rational, n: usize) -> TruncSeries {
    let mut coeffs = vec![Rational::zero(); n];
    let mut power = Rational::one();
    for c in coeffs.iter_mut().skip(1) {
        *c = power.clone();
        power *= a;
    }
    TruncSeries::from_coeffs(n, coeffs)
}

/// The Möbius generators and the coordinates `v_1..v_r` of a spider type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    pub spider: SpiderType,
    pub a_values: Vec<Rational>,
    pub mobius: Vec<TruncSeries>,
    pub coords: Vec<TruncSeries>,
}

impl CoordinateSystem {
    pub fn order(&self) -> usize {
        self.spider.colength()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

/// Default Möbius parameters `1, 2, …, r`.
pub fn default_a_values(r: usize) -> Vec<Rational> {
    (1..=r as i64).map(int).collect()
}

pub fn validate_a_values(a_values: &[Rational], r: usize) -> Result<()> {
    if a_values.len() != r {
        return Err(Error::InvalidAValues(format!(
            "expected {r} values, got {}",
            a_values.len()
        )));
    }
    if a_values.iter().any(Zero::is_zero) {
        return Err(Error::InvalidAValues("values must be nonzero".into()));
    }
    for i in 0..r {
        if a_values[i + 1..].contains(&a_values[i]) {
            return Err(Error::InvalidAValues(format!(
                "value {} repeated",
                a_values[i]
            )));
        }
    }
    Ok(())
}

/// Coordinates for the default parameters `a = 1..r`:
/// `v_i = Δ^{i−1} u_1 = Σ_j (−1)^{i−1−j} C(i−1, j) u_{1+j}`.
pub fn divided_difference_coords(spider: &SpiderType) -> Result<CoordinateSystem> {
    divided_difference_coords_with(spider, &default_a_values(spider.rank()))
}

/// Coordinates for arbitrary distinct nonzero parameters:
/// `v_k = (k−1)! · u[a_1, …, a_k]` (Newton divided difference in `a`). For
/// `a = 1..r` this is exactly the forward difference `Δ^{k−1} u_1`.
///
/// Leg `i` receives `v_k` with `k` from [`SpiderType::coordinate_orders`], so
/// a long leg never sits on a high-order coordinate whose powers vanish.
pub fn divided_difference_coords_with(
    spider: &SpiderType,
    a_values: &[Rational],
) -> Result<CoordinateSystem> {
    let r = spider.rank();
    validate_a_values(a_values, r)?;
    let n = spider.colength();
    let mobius: Vec<TruncSeries> = a_values.iter().map(|a| mobius_generator(a, n)).collect();

    let mut by_order = Vec::with_capacity(r);
    // table[j] holds u[a_j, …, a_{j+level}] for the current level.
    let mut table = mobius.clone();
    let mut factorial = Rational::one();
    for level in 0..r {
        if level > 0 {
            factorial *= int(level as i64);
            table = (0..r - level)
                .map(|j| {
                    let gap = (&a_values[j + level] - &a_values[j]).recip();
                    table[j + 1].sub(&table[j]).map(|d| d.scale(&gap))
                })
                .collect::<Result<_>>()?;
        }
        let v = table[0].scale(&factorial);
        let index = level + 1;
        let found = v.t_adic_order().unwrap_or(n);
        if found != index {
            return Err(Error::OrderCollapse { index, found });
        }
        by_order.push(v);
    }
    let coords = spider
        .coordinate_orders()
        .into_iter()
        .map(|k| by_order[k - 1].clone())
        .collect();
    Ok(CoordinateSystem {
        spider: spider.clone(),
        a_values: a_values.to_vec(),
        mobius,
        coords,
    })
}

/// Substitutes `x_i ↦ v_i` and evaluates in ℚ[t]/(tⁿ).
pub fn eval_poly_as_series(p: &Poly, coords: &CoordinateSystem) -> Result<TruncSeries> {
    let n = coords.order();
    let r = coords.rank();
    if p.nvars() > r + 1 {
        return Err(Error::VariableOutOfRange(p.nvars() - 1));
    }
    if !p.is_epsilon_free() {
        return Err(Error::VariableOutOfRange(0));
    }
    let mut powers: Vec<Vec<TruncSeries>> = coords
        .coords
        .iter()
        .map(|v| vec![TruncSeries::one(n), v.clone()])
        .collect();
    let mut total = TruncSeries::zero(n);
    for (m, c) in p.terms() {
        let mut acc = TruncSeries::one(n).scale(c);
        for var in 1..m.nvars() {
            let e = m.exp(var) as usize;
            if e == 0 {
                continue;
            }
            let cache = &mut powers[var - 1];
            while cache.len() <= e {
                let next = cache.last().unwrap().mul(&cache[1])?;
                cache.push(next);
            }
            acc = acc.mul(&cache[e])?;
        }
        total = total.add(&acc)?;
    }
    Ok(total)
}
