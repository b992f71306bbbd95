//! Multivariate division with remainder and S-polynomials.

use std::cmp::Ordering;

use num_traits::Zero;

use super::{Monomial, MonomialOrder, Poly};
use crate::error::{Error, Result};
use crate::exactlinear::Rational;

/// Terms sorted strictly descending under a fixed order.
pub(crate) type Terms = Vec<(Monomial, Rational)>;

/// `p - c·m·g`, both inputs sorted descending, output sorted descending.
pub(crate) fn sub_mul(
    p: &[(Monomial, Rational)],
    c: &Rational,
    m: &Monomial,
    g: &[(Monomial, Rational)],
    ord: &MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut shifted = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
    while i < p.len() {
        let Some((sm, _)) = shifted.peek() else { break };
        match ord.cmp(&p[i].0, sm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (sm, sc) = shifted.next().unwrap();
                out.push((sm, -sc));
            }
            Ordering::Equal => {
                let (sm, sc) = shifted.next().unwrap();
                let c = &p[i].1 - sc;
                if !c.is_zero() {
                    out.push((sm, c));
                }
                i += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    out.extend(shifted.map(|(sm, sc)| (sm, -sc)));
    out
}

/// A divisor prepared for repeated use: sorted terms plus leading data.
pub(crate) struct Divisor {
    pub terms: Terms,
}

impl Divisor {
    pub fn new(p: &Poly, ord: &MonomialOrder) -> Option<Self> {
        let terms = p.sorted_terms(ord);
        (!terms.is_empty()).then_some(Divisor { terms })
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }
}

/// Full reduction of sorted terms; returns the remainder (sorted) and, when
/// requested, the quotient terms per divisor.
pub(crate) fn reduce_terms(
    mut p: Terms,
    divisors: &[&Divisor],
    ord: &MonomialOrder,
    mut quotients: Option<&mut Vec<Terms>>,
) -> Terms {
    let mut remainder = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (lm, lc) = &p[start];
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(k, d)| d.lm().quotient_of(lm).map(|q| (k, q)));
        match hit {
            Some((k, q)) => {
                let factor = lc / divisors[k].lc();
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[k].push((q.clone(), factor.clone()));
                }
                p = sub_mul(&p[start..], &factor, &q, &divisors[k].terms, ord);
                start = 0;
            }
            None => {
                remainder.push(p[start].clone());
                start += 1;
            }
        }
    }
    remainder
}

/// Remainder of `p` on division by `gens`: no term of the result is divisible
/// by any leading monomial of `gens`. Zero generators are ignored.
pub fn normal_form(p: &Poly, gens: &[Poly], ord: &MonomialOrder) -> Poly {
    let divisors: Vec<Divisor> = gens.iter().filter_map(|g| Divisor::new(g, ord)).collect();
    let refs: Vec<&Divisor> = divisors.iter().collect();
    let rem = reduce_terms(p.sorted_terms(ord), &refs, ord, None);
    Poly::from_terms(p.nvars(), rem)
}

/// Division result with explicit cofactors: `p = Σ quotients[i]·gens[i] + remainder`.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

pub fn divide(p: &Poly, gens: &[Poly], ord: &MonomialOrder) -> Division {
    let nvars = p.nvars();
    let mut index = Vec::new();
    let mut divisors = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if let Some(d) = Divisor::new(g, ord) {
            index.push(i);
            divisors.push(d);
        }
    }
    let refs: Vec<&Divisor> = divisors.iter().collect();
    let mut qs = vec![Vec::new(); refs.len()];
    let rem = reduce_terms(p.sorted_terms(ord), &refs, ord, Some(&mut qs));
    let mut quotients = vec![Poly::zero(nvars); gens.len()];
    for (k, q) in qs.into_iter().enumerate() {
        quotients[index[k]] = Poly::from_terms(nvars, q);
    }
    Division {
        quotients,
        remainder: Poly::from_terms(nvars, rem),
    }
}

/// `(L/lt(f))·f − (L/lt(g))·g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Poly, g: &Poly, ord: &MonomialOrder) -> Result<Poly> {
    let (lf, cf) = f.leading_term(ord)?;
    let (lg, cg) = g.leading_term(ord)?;
    let l = lf.lcm(&lg);
    let mf = lf.quotient_of(&l).ok_or(Error::ZeroPolynomial)?;
    let mg = lg.quotient_of(&l).ok_or(Error::ZeroPolynomial)?;
    Ok(&f.mul_term(&cf.recip(), &mf) - &g.mul_term(&cg.recip(), &mg))
}

/// S-polynomial of two prepared divisors, as sorted terms.
pub(crate) fn s_terms(f: &Divisor, g: &Divisor, ord: &MonomialOrder) -> Terms {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).expect("lcm is a multiple");
    let mg = g.lm().quotient_of(&l).expect("lcm is a multiple");
    let left: Terms = f
        .terms
        .iter()
        .map(|(m, c)| (m.mul(&mf), c / f.lc()))
        .collect();
    sub_mul(&left, &g.lc().recip(), &mg, &g.terms, ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::WeightVector;

    fn w() -> MonomialOrder {
        MonomialOrder::WeightedDegRevLex(WeightVector::new(vec![15, 16, 17]).unwrap())
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, 4).unwrap()
    }

    #[test]
    fn reduce_xy_by_first_mixed_relation() {
        let nf = normal_form(&p("x*y"), &[p("x*y + x^2 - y")], &w());
        assert_eq!(nf, p("y - x^2"));
    }

    #[test]
    fn generator_reduces_to_zero() {
        let g = p("2*x*z - 2*x^2 + 2*y - z");
        assert!(normal_form(&g, std::slice::from_ref(&g), &w()).is_zero());
        assert!(normal_form(&g, std::slice::from_ref(&g), &MonomialOrder::lex(3)).is_zero());
    }

    #[test]
    fn s_polynomial_of_self_is_zero() {
        let f = p("x*y + e*x^2 - e^15*y");
        assert!(s_polynomial(&f, &f, &w()).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&f, &Poly::zero(4), &w()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn monomial_s_pair_reduces() {
        let gens = [p("x^2"), p("x*y"), p("y^2")];
        let ord = MonomialOrder::lex(3);
        let s = s_polynomial(&gens[0], &gens[1], &ord).unwrap();
        assert!(s.is_zero());
        assert!(normal_form(&s, &gens, &ord).is_zero());
    }

    #[test]
    fn division_cofactors_reconstruct() {
        let gens = [p("x*y + x^2 - y"), p("2*x*z - 2*x^2 + 2*y - z")];
        let f = p("x^3*y*z + 7*y^2 - z");
        let d = divide(&f, &gens, &w());
        let mut back = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gens) {
            back = &back + &(q * g);
        }
        assert_eq!(back, f);
    }
}
