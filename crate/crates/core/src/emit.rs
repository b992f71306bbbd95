//! Standalone verification scripts for external computer-algebra systems.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactlinear::Rational;
use crate::poly::{Monomial, Poly, VarNames};
use crate::spider::{ReesFamily, Relation, RelationKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    M2,
    Sage,
}

impl FromStr for Dialect {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m2" | "macaulay2" => Ok(Dialect::M2),
            "sage" | "sagemath" => Ok(Dialect::Sage),
            other => Err(Error::UnknownDialect(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationScript {
    pub dialect: Dialect,
    pub body: String,
}

/// A relation's term, with the monomial in the script's variable names.
struct Term {
    coeff: Rational,
    monomial: Monomial,
}

fn render_monomial(m: &Monomial, names: &VarNames) -> String {
    m.display_with(names).to_string()
}

/// Terms joined as `a*m1 - b*m2 + …`; `spaced` puts blanks around signs.
fn render_sum(terms: &[Term], names: &VarNames, spaced: bool) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let abs = t.coeff.abs();
        let sign = match (i, neg, spaced) {
            (0, true, _) => "-",
            (0, false, _) => "",
            (_, true, true) => " - ",
            (_, false, true) => " + ",
            (_, true, false) => "-",
            (_, false, false) => "+",
        };
        out.push_str(sign);
        let coeff = if abs.is_integer() {
            abs.to_string()
        } else {
            format!("({abs})")
        };
        if t.monomial.is_one() {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(&render_monomial(&t.monomial, names));
        } else {
            let _ = write!(out, "{coeff}*{}", render_monomial(&t.monomial, names));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Pure power `x_i^k` of a tail monomial; tails are supported on basis
/// monomials, anything else sorts last.
fn pure_power(m: &Monomial) -> Option<(usize, u32)> {
    let support: Vec<usize> = m.support().collect();
    match support.as_slice() {
        [v] => Some((*v, m.exp(*v))),
        [] => Some((0, 0)),
        _ => None,
    }
}

/// Right-hand side layout for mixed relations: linear terms from the last
/// variable down, then higher powers by variable and exponent.
fn mixed_key(m: &Monomial) -> (u8, i64, u32) {
    match pure_power(m) {
        Some((v, 1)) => (0, -(v as i64), 1),
        Some((v, k)) => (1, v as i64, k),
        None => (2, 0, 0),
    }
}

/// Layout for pure-power relations: one block per variable, the linear term
/// first and then descending powers.
fn pure_key(m: &Monomial) -> (u8, usize, u8, i64) {
    match pure_power(m) {
        Some((v, 1)) => (0, v, 0, 0),
        Some((v, k)) => (0, v, 1, -i64::from(k)),
        None => (1, 0, 0, 0),
    }
}

fn tail_terms(rel: &Relation) -> Vec<Term> {
    rel.tail()
        .map(|(m, c)| Term {
            coeff: c.clone(),
            monomial: m.clone(),
        })
        .collect()
}

fn wrap(expr: &str, width: usize) -> String {
    // Break before a sign once the current line is long enough.
    let mut out = String::new();
    let mut line_len = 0;
    for (i, ch) in expr.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && line_len >= width {
            out.push_str("\n  ");
            line_len = 2;
        }
        out.push(ch);
        line_len += 1;
    }
    out
}

/// Statements checking one relation in the series ring.
fn relation_block(rel: &Relation, names: &VarNames, dialect: Dialect) -> String {
    let assert = |cond: String| match dialect {
        Dialect::M2 => format!("assert({cond});"),
        Dialect::Sage => format!("assert {cond}"),
    };
    let border = Term {
        coeff: rel.border_coefficient(),
        monomial: rel.border.clone(),
    };
    let lhs = render_sum(std::slice::from_ref(&border), names, true);
    if rel.is_vanishing() {
        return assert(format!("{lhs} == 0"));
    }
    match rel.kind {
        RelationKind::Mixed(..) => {
            let mut rhs: Vec<Term> = tail_terms(rel)
                .into_iter()
                .map(|t| Term {
                    coeff: -t.coeff,
                    monomial: t.monomial,
                })
                .collect();
            rhs.sort_by_key(|t| mixed_key(&t.monomial));
            assert(format!("{lhs} == {}", render_sum(&rhs, names, true)))
        }
        RelationKind::PurePower(i) | RelationKind::VanishingPower(i) => {
            let name = format!("g{}", names.name(i));
            let mut terms = tail_terms(rel);
            terms.sort_by_key(|t| pure_key(&t.monomial));
            let mut all = vec![border];
            all.extend(terms);
            let body = wrap(&render_sum(&all, names, false), 48);
            let end = if dialect == Dialect::M2 { ";" } else { "" };
            format!("{name} = {body}{end}\n{}", assert(format!("{name} == 0")))
        }
    }
}

fn a_factor(a: &Rational) -> String {
    if a.is_one() {
        "t".to_string()
    } else if a.is_integer() {
        format!("({a}*t)")
    } else {
        format!("(({a})*t)")
    }
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, j| {
        acc * Rational::from_integer(j.into())
    })
}

fn coordinate_line(family: &ReesFamily, names: &VarNames) -> String {
    let orders = family.spider.coordinate_orders();
    let defs: Vec<String> = (1..=family.spider.rank())
        .map(|var| {
            let i = orders[var - 1];
            let scale = factorial(i - 1);
            let prefix = if scale.is_one() {
                String::new()
            } else {
                format!("{scale}*")
            };
            let tpow = if i == 1 {
                "t".to_string()
            } else {
                format!("t^{i}")
            };
            let series: Vec<String> = (1..=i).map(|j| format!("s{j}")).collect();
            format!("{} = {prefix}{tpow}*{}", names.name(var), series.join("*"))
        })
        .collect();
    defs.join(";  ")
}

/// Generator in the weighted order, x-variables renamed for the fiber block.
fn family_generator(f: &Poly, family: &ReesFamily, upper: &VarNames) -> String {
    let terms: Vec<Term> = f
        .sorted_terms(&family.order())
        .into_iter()
        .map(|(monomial, coeff)| Term { coeff, monomial })
        .collect();
    render_sum(&terms, upper, true)
}

fn lambda_literal(l: &Rational) -> String {
    l.to_string()
}

pub fn emit_script(
    family: &ReesFamily,
    dialect: Dialect,
    lambdas: &[Rational],
) -> VerificationScript {
    let names = VarNames::standard(family.nvars());
    let n = family.spider.colength();
    let upper_names = names.uppercase_x();
    let comment = match dialect {
        Dialect::M2 => "--",
        Dialect::Sage => "#",
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{comment} Verification script for the flat family of spider type {}.",
        family.spider
    );
    let _ = writeln!(
        s,
        "{comment} Checks every generic relation in QQ[t]/(t^{n}) and the fiber lengths."
    );

    // Series ring and coordinates.
    let s_defs: Vec<String> = family
        .a_values
        .iter()
        .enumerate()
        .map(|(j, a)| match dialect {
            Dialect::M2 => format!("s{} = sum({n}, i->{}^i);", j + 1, a_factor(a)),
            Dialect::Sage => format!("s{} = sum({}^i for i in range({n}))", j + 1, a_factor(a)),
        })
        .collect();
    match dialect {
        Dialect::M2 => {
            let _ = writeln!(s, "R = QQ[t]/ideal(t^{n});");
        }
        Dialect::Sage => {
            let _ = writeln!(s, "P.<T> = QQ[]");
            let _ = writeln!(s, "R = P.quotient(T^{n})");
            let _ = writeln!(s, "t = R(T)");
        }
    }
    for chunk in s_defs.chunks(2) {
        let _ = writeln!(s, "{}", chunk.join("  "));
    }
    let coords = coordinate_line(family, &names);
    match dialect {
        Dialect::M2 => {
            let _ = writeln!(s, "{coords};");
        }
        Dialect::Sage => {
            let _ = writeln!(s, "{}", coords.replace(";  ", "; "));
        }
    }

    let mixed: Vec<&Relation> = family
        .relations
        .iter()
        .filter(|rel| matches!(rel.kind, RelationKind::Mixed(..)))
        .collect();
    if !mixed.is_empty() {
        let _ = writeln!(s, "{comment} Mixed relations");
        for rel in mixed {
            let _ = writeln!(s, "{}", relation_block(rel, &names, dialect));
        }
    }
    for rel in &family.relations {
        match rel.kind {
            RelationKind::Mixed(..) => continue,
            RelationKind::PurePower(i) if !rel.is_vanishing() => {
                let _ = writeln!(s, "{comment} Pure-power relation g_{}", names.name(i));
            }
            _ => {
                let _ = writeln!(s, "{comment} Vanishing power");
            }
        }
        let _ = writeln!(s, "{}", relation_block(rel, &names, dialect));
    }

    // Family and fibers.
    let xs = upper_names.x_names().join(",");
    let gens: Vec<String> = family
        .family
        .iter()
        .map(|f| family_generator(f, family, &upper_names))
        .collect();
    let lams: Vec<String> = lambdas.iter().map(lambda_literal).collect();
    let _ = writeln!(
        s,
        "{comment} Family over QQ[e]; every fiber must have length {n}"
    );
    match dialect {
        Dialect::M2 => {
            let _ = writeln!(s, "S = QQ[{xs},e];");
            let _ = writeln!(s, "I = ideal(\n  {}\n  );", gens.join(",\n  "));
            let _ = writeln!(s, "Sx = QQ[{xs}];");
            let _ = writeln!(s, "for l in {{{}}} do (", lams.join(", "));
            let subs: Vec<String> = upper_names
                .x_names()
                .iter()
                .cloned()
                .chain(["l".to_string()])
                .collect();
            let _ = writeln!(s, "  phi = map(Sx, S, {{{}}});", subs.join(", "));
            let _ = writeln!(s, "  assert(numgens source basis(Sx/phi(I)) == {n});");
            let _ = writeln!(s, "  );");
        }
        Dialect::Sage => {
            let _ = writeln!(s, "S = PolynomialRing(QQ, '{xs},e')");
            let _ = writeln!(s, "{},e = S.gens()", xs);
            let _ = writeln!(s, "I = [\n  {}\n  ]", gens.join(",\n  "));
            let _ = writeln!(s, "Sx = PolynomialRing(QQ, '{xs}')");
            let _ = writeln!(s, "for l in [{}]:", lams.join(", "));
            let _ = writeln!(s, "    J = Sx.ideal([Sx(g.subs(e=l)) for g in I])");
            let _ = writeln!(s, "    assert J.vector_space_dimension() == {n}");
        }
    }
    VerificationScript { dialect, body: s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spider::{build_family, SpiderType};
    use num_traits::Zero;

    #[test]
    fn unknown_dialect() {
        assert_eq!(
            "maple".parse::<Dialect>(),
            Err(Error::UnknownDialect("maple".into()))
        );
        assert_eq!("M2".parse::<Dialect>(), Ok(Dialect::M2));
    }

    #[test]
    fn warm_up_script() {
        let fam = build_family(&SpiderType::new(vec![1, 1]).unwrap()).unwrap();
        let script = emit_script(&fam, Dialect::M2, &[Rational::zero()]);
        assert!(script.body.contains("R = QQ[t]/ideal(t^3);"));
        assert!(script.body.contains("assert(x*y == 0);"));
        assert!(script.body.contains("gx = x^2-y;"));
        assert!(script.body.contains("assert(gx == 0);"));
        assert!(script.body.contains("X^2 - Y*e"));
    }

    #[test]
    fn sage_script_shape() {
        let fam = build_family(&SpiderType::new(vec![1, 1]).unwrap()).unwrap();
        let script = emit_script(&fam, Dialect::Sage, &[Rational::one()]);
        assert!(script.body.contains("assert x*y == 0"));
        assert!(script.body.contains("assert gx == 0"));
        assert!(script.body.contains("vector_space_dimension() == 3"));
    }
}
