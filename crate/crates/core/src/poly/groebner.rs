//! Buchberger's algorithm with the Gebauer–Möller criteria, and standard
//! monomial enumeration for zero-dimensional quotients.

use std::cmp::Ordering;

use super::reduce::{reduce_terms, s_terms, Divisor};
use super::{Monomial, MonomialOrder, Poly};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Elements are scaled to integer coefficients with content 1 and a positive
/// leading coefficient, and returned in ascending order of leading monomial.
pub fn buchberger(gens: &[Poly], ord: &MonomialOrder) -> Vec<Poly> {
    let Some(nvars) = gens.first().map(Poly::nvars) else {
        return Vec::new();
    };
    let mut basis: Vec<Divisor> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let current: Vec<&Divisor> = basis
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(d, _)| d)
            .collect();
        let rem = reduce_terms(g.sorted_terms(ord), &current, ord, None);
        if rem.is_empty() {
            continue;
        }
        insert(&mut basis, &mut active, &mut pairs, monic(rem));
    }

    while !pairs.is_empty() {
        // Normal strategy: smallest lcm first.
        let pos = (0..pairs.len())
            .min_by(|&a, &b| ord.cmp(&pairs[a].lcm, &pairs[b].lcm))
            .unwrap();
        let pair = pairs.swap_remove(pos);
        let s = s_terms(&basis[pair.i], &basis[pair.j], ord);
        let current: Vec<&Divisor> = basis
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(d, _)| d)
            .collect();
        let rem = reduce_terms(s, &current, ord, None);
        if !rem.is_empty() {
            insert(&mut basis, &mut active, &mut pairs, monic(rem));
        }
    }

    let minimal: Vec<Poly> = basis
        .iter()
        .zip(&active)
        .filter(|(_, &a)| a)
        .map(|(d, _)| Poly::from_terms(nvars, d.terms.clone()))
        .collect();
    interreduce(minimal, ord)
}

fn monic(mut terms: Vec<(Monomial, crate::exactlinear::Rational)>) -> Divisor {
    let inv = terms[0].1.recip();
    for (_, c) in terms.iter_mut() {
        *c *= &inv;
    }
    Divisor { terms }
}

/// Gebauer–Möller update: adds `h` to the basis and prunes the pair set.
fn insert(basis: &mut Vec<Divisor>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Divisor) {
    let hi = basis.len();
    let hlm = h.lm().clone();

    let candidates: Vec<Pair> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| Pair {
            i: g,
            j: hi,
            lcm: basis[g].lm().lcm(&hlm),
        })
        .collect();

    // Chain criterion among the new pairs.
    let mut kept: Vec<Pair> = Vec::new();
    for (k, p) in candidates.iter().enumerate() {
        let coprime = basis[p.i].lm().is_coprime(&hlm);
        let dominated = candidates[k + 1..]
            .iter()
            .chain(kept.iter())
            .any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p.clone());
        }
    }
    // Coprime leading monomials: the pair reduces to zero.
    kept.retain(|p| !basis[p.i].lm().is_coprime(&hlm));

    // Old pairs made redundant by h.
    pairs.retain(|p| {
        !hlm.divides(&p.lcm)
            || basis[p.i].lm().lcm(&hlm) == p.lcm
            || basis[p.j].lm().lcm(&hlm) == p.lcm
    });
    pairs.extend(kept);

    for g in 0..hi {
        if active[g] && hlm.divides(basis[g].lm()) {
            active[g] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

/// Turns a minimal basis into the reduced one, normalized and sorted.
fn interreduce(minimal: Vec<Poly>, ord: &MonomialOrder) -> Vec<Poly> {
    let divisors: Vec<Divisor> = minimal
        .iter()
        .filter_map(|g| Divisor::new(g, ord))
        .collect();
    let mut reduced: Vec<Poly> = Vec::with_capacity(divisors.len());
    for (k, d) in divisors.iter().enumerate() {
        let others: Vec<&Divisor> = divisors
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, o)| o)
            .collect();
        let mut terms = vec![d.terms[0].clone()];
        terms.extend(reduce_terms(d.terms[1..].to_vec(), &others, ord, None));
        let p = Poly::from_terms(minimal[0].nvars(), terms);
        reduced.push(p.primitive(ord));
    }
    sort_by_leading(&mut reduced, ord);
    reduced
}

pub fn sort_by_leading(polys: &mut [Poly], ord: &MonomialOrder) {
    polys.sort_by(
        |a, b| match (a.leading_monomial(ord), b.leading_monomial(ord)) {
            (Ok(x), Ok(y)) => ord.cmp(&x, &y),
            (Err(_), Ok(_)) => Ordering::Less,
            (Ok(_), Err(_)) => Ordering::Greater,
            (Err(_), Err(_)) => Ordering::Equal,
        },
    );
}

/// Outcome of standard-monomial enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    /// Some listed variable has no pure power among the leading monomials.
    Infinite,
}

impl StandardMonomials {
    pub fn count(&self) -> Option<usize> {
        match self {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        }
    }
}

/// Monomials in the variables `vars` not divisible by any leading monomial of
/// `gb`. Leading monomials involving other variables are ignored, so with
/// `vars = 1..=r` this counts the ε-free standard monomials.
pub fn standard_monomials(gb: &[Poly], ord: &MonomialOrder, vars: &[usize]) -> StandardMonomials {
    let Some(nvars) = gb.first().map(Poly::nvars) else {
        return StandardMonomials::Infinite;
    };
    let leads: Vec<Monomial> = gb
        .iter()
        .filter_map(|g| g.leading_monomial(ord).ok())
        .filter(|m| m.support().all(|v| vars.contains(&v)))
        .collect();
    if leads.iter().any(Monomial::is_one) {
        return StandardMonomials::Finite(Vec::new());
    }
    let mut bounds = Vec::with_capacity(vars.len());
    for &v in vars {
        let bound = leads
            .iter()
            .filter(|m| m.support().all(|u| u == v))
            .map(|m| m.exp(v))
            .min();
        match bound {
            Some(b) => bounds.push(b),
            None => return StandardMonomials::Infinite,
        }
    }
    let mut out = Vec::new();
    let mut current = Monomial::one(nvars);
    enumerate(&leads, vars, &bounds, 0, &mut current, &mut out);
    out.sort_by(|a, b| ord.cmp(a, b));
    StandardMonomials::Finite(out)
}

fn enumerate(
    leads: &[Monomial],
    vars: &[usize],
    bounds: &[u32],
    depth: usize,
    current: &mut Monomial,
    out: &mut Vec<Monomial>,
) {
    if depth == vars.len() {
        out.push(current.clone());
        return;
    }
    let v = vars[depth];
    for e in 0..bounds[depth] {
        *current = current.with_exp(v, e);
        // Divisibility is monotone in e: once divisible, stop.
        if leads.iter().any(|m| m.divides(current)) {
            break;
        }
        enumerate(leads, vars, bounds, depth + 1, current, out);
    }
    *current = current.with_exp(v, 0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{normal_form, s_polynomial, WeightVector};

    fn p3(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let gens = vec![p3("x^2"), p3("x*y"), p3("y^2")];
        let ord = MonomialOrder::lex(2);
        let gb = buchberger(&gens, &ord);
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(gb.contains(g));
        }
        let sm = standard_monomials(&gb, &ord, &[1, 2]);
        assert_eq!(sm.count(), Some(3));
    }

    #[test]
    fn principal_binomial() {
        // lex y > x: {y - x^2}
        let ord = MonomialOrder::Lex(vec![2, 1]);
        let gb = buchberger(&[p3("y - x^2")], &ord);
        assert_eq!(gb, vec![p3("y - x^2")]);
    }

    #[test]
    fn univariate_standard_monomials() {
        let gb = vec![Poly::parse("x", 2).unwrap()];
        let ord = MonomialOrder::lex(1);
        assert_eq!(
            standard_monomials(&gb, &ord, &[1]),
            StandardMonomials::Finite(vec![Monomial::one(2)])
        );
        let gb = vec![Poly::parse("x^3", 3).unwrap()];
        assert_eq!(
            standard_monomials(&gb, &ord, &[1, 2]),
            StandardMonomials::Infinite
        );
    }

    #[test]
    fn warm_up_fiber_is_curvilinear() {
        // (x^2 - y, xy, y^2) under lex y > x gives {x^3, y - x^2}.
        let ord = MonomialOrder::lex_x1_last(2);
        let gb = buchberger(&[p3("x^2 - y"), p3("x*y"), p3("y^2")], &ord);
        assert_eq!(gb, vec![p3("x^3"), p3("y - x^2")]);
    }

    #[test]
    fn output_is_closed_under_s_pairs() {
        let ord = MonomialOrder::WeightedDegRevLex(WeightVector::new(vec![2, 3]).unwrap());
        let gens = vec![p3("x^3 - y*x + 1"), p3("y^2 - x")];
        let gb = buchberger(&gens, &ord);
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let s = s_polynomial(&gb[i], &gb[j], &ord).unwrap();
                assert!(normal_form(&s, &gb, &ord).is_zero());
            }
        }
        for g in &gens {
            assert!(normal_form(g, &gb, &ord).is_zero());
        }
    }
}
