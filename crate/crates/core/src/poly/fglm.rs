//! Change of ordering for zero-dimensional ideals (FGLM).

use num_traits::Zero;

use super::{normal_form, standard_monomials, Monomial, MonomialOrder, Poly, StandardMonomials};
use crate::exactlinear::Rational;

struct EchelonRow {
    pivot: usize,
    vector: Vec<Rational>,
    /// Coefficients over the new staircase recording how `vector` was formed.
    combination: Vec<Rational>,
}

/// Converts the reduced Gröbner basis `gb` (w.r.t. `from`) of a
/// zero-dimensional ideal in `vars` into the reduced basis w.r.t. `to`.
///
/// Returns `None` when the quotient is not finite-dimensional. The output is
/// normalized like [`super::buchberger`]'s.
pub fn fglm(
    gb: &[Poly],
    from: &MonomialOrder,
    to: &MonomialOrder,
    vars: &[usize],
) -> Option<Vec<Poly>> {
    let nvars = gb.first()?.nvars();
    let StandardMonomials::Finite(old_staircase) = standard_monomials(gb, from, vars) else {
        return None;
    };
    let dim = old_staircase.len();
    let coordinates = |m: &Monomial| -> Vec<Rational> {
        let nf = normal_form(&Poly::monomial(m.clone()), gb, from);
        let mut v = vec![Rational::zero(); dim];
        for (b, c) in nf.terms() {
            let k = old_staircase
                .iter()
                .position(|s| s == b)
                .expect("normal form is supported on standard monomials");
            v[k] = c.clone();
        }
        v
    };

    let mut staircase: Vec<Monomial> = Vec::new();
    let mut rows: Vec<EchelonRow> = Vec::new();
    let mut result: Vec<Poly> = Vec::new();
    let mut candidates: Vec<Monomial> = vec![Monomial::one(nvars)];

    while let Some(pos) =
        (0..candidates.len()).min_by(|&a, &b| to.cmp(&candidates[a], &candidates[b]))
    {
        let m = candidates.swap_remove(pos);
        if result
            .iter()
            .any(|g| g.leading_monomial(to).is_ok_and(|lm| lm.divides(&m)))
        {
            continue;
        }
        let k = staircase.len();
        let mut vector = coordinates(&m);
        let mut combination = vec![Rational::zero(); k + 1];
        combination[k] = Rational::from_integer(1.into());
        for row in &rows {
            if vector[row.pivot].is_zero() {
                continue;
            }
            let factor = &vector[row.pivot] / &row.vector[row.pivot];
            for (a, b) in vector.iter_mut().zip(&row.vector) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
            for (a, b) in combination.iter_mut().zip(&row.combination) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        match vector.iter().position(|c| !c.is_zero()) {
            None => {
                // m + Σ combination[j]·staircase[j] lies in the ideal.
                let mut p = Poly::monomial(m);
                for (b, c) in staircase.iter().zip(&combination) {
                    p.add_term(b.clone(), c.clone());
                }
                result.push(p.primitive(to));
            }
            Some(pivot) => {
                rows.push(EchelonRow {
                    pivot,
                    vector,
                    combination,
                });
                for row in rows.iter_mut() {
                    row.combination.resize(k + 1, Rational::zero());
                }
                for &v in vars {
                    let next = m.with_exp(v, m.exp(v) + 1);
                    if !candidates.contains(&next) {
                        candidates.push(next);
                    }
                }
                staircase.push(m);
            }
        }
    }
    super::sort_by_leading(&mut result, to);
    Some(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{buchberger, WeightVector};

    #[test]
    fn matches_direct_lex_computation() {
        let p = |s| Poly::parse(s, 3).unwrap();
        let gens = vec![p("x*y + x^3 - y"), p("y^2 - 2*x^2*y"), p("x^5")];
        let w = MonomialOrder::WeightedDegRevLex(WeightVector::new(vec![2, 3]).unwrap());
        let lex = MonomialOrder::lex_x1_last(2);
        let gb_w = buchberger(&gens, &w);
        let converted = fglm(&gb_w, &w, &lex, &[1, 2]).unwrap();
        assert_eq!(converted, buchberger(&gens, &lex));
    }

    #[test]
    fn not_zero_dimensional() {
        let gb = vec![Poly::parse("x^2", 3).unwrap()];
        let lex = MonomialOrder::lex(2);
        assert!(fglm(&gb, &lex, &lex, &[1, 2]).is_none());
    }
}
