use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, VarNames};
use crate::error::{Error, Result};
use crate::exactlinear::{denominator_lcm, int, numerator_gcd, Rational};

/// Sparse polynomial over ℚ in `ε, x1..xr`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    /// The variable `x_var` (or ε for `var = 0`).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(Monomial::var_power(nvars, var, 1))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Maximal term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    /// Substitutes the rational value `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let factor = if e == 0 {
                Rational::one()
            } else {
                num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(m.with_exp(var, 0), c * factor);
        }
        out
    }

    /// Applies `x_i ↦ scale_i · x_i` for every variable (slot 0 is ε).
    pub fn scale_variables(&self, scales: &[Rational]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let factor = m.exps().iter().zip(scales).fold(c.clone(), |acc, (&e, s)| {
                acc * num_traits::pow(s.clone(), e as usize)
            });
            out.add_term(m.clone(), factor);
        }
        out
    }

    pub fn max_epsilon_exp(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::epsilon_exp)
            .max()
            .unwrap_or(0)
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.max_epsilon_exp() == 0
    }

    pub fn all_integer(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Content of an integer polynomial (gcd of coefficients).
    pub fn integer_content(&self) -> BigInt {
        numerator_gcd(self.terms.values())
    }

    /// Scales to integer coefficients with content 1 and a positive leading
    /// coefficient under `ord`.
    pub fn primitive(&self, ord: &MonomialOrder) -> Poly {
        let Ok((_, lc)) = self.leading_term(ord) else {
            return self.clone();
        };
        self.primitive_with_sign(lc.is_negative())
    }

    /// Like [`Poly::primitive`], with the sign fixed by the coefficient of `m`.
    pub fn primitive_at(&self, m: &Monomial) -> Poly {
        self.primitive_with_sign(self.coeff(m).is_negative())
    }

    fn primitive_with_sign(&self, negate: bool) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = Rational::from_integer(denominator_lcm(self.terms.values()));
        let cleared = self.scale(&lcm);
        let g = Rational::from_integer(cleared.integer_content());
        let mut factor = g.recip();
        if negate {
            factor = -factor;
        }
        cleared.scale(&factor)
    }

    pub fn monic(&self, ord: &MonomialOrder) -> Poly {
        match self.leading_term(ord) {
            Ok((_, lc)) => self.scale(&lc.recip()),
            Err(_) => self.clone(),
        }
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn display_with<'a>(
        &'a self,
        names: &'a VarNames,
        ord: &'a MonomialOrder,
    ) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names,
            ord: Some(ord),
        }
    }

    /// Parses expressions like `32*x^8 - 1728*x^7 + e^15*y - 1/2*z`.
    ///
    /// Variable names follow [`VarNames::standard`] for `nvars`.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        let names = VarNames::standard(nvars);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero(nvars);
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{text}`")));
            }
            let mut coeff = int(sign);
            let mut mono = Monomial::one(nvars);
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    coeff *= crate::exactlinear::parse_rational(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let var = names
                    .index_of(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                mono = mono.with_exp(var, mono.exp(var) + exp);
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&int(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a VarNames,
    ord: Option<&'a MonomialOrder>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(Monomial, Rational)> = match self.ord {
            Some(ord) => self.poly.sorted_terms(ord),
            None => self
                .poly
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        };
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_with(self.names))?;
            } else {
                write!(f, "{abs}*{}", m.display_with(self.names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::standard(self.nvars);
        write!(
            f,
            "{}",
            PolyDisplay {
                poly: self,
                names: &names,
                ord: None
            }
        )
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
