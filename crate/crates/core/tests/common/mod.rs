//! Shared oracles and transcribed reference data for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use spider_core::poly::{Monomial, Poly};
use spider_core::spider::SpiderType;

pub const REL_XY: &str = "x*y + x^2 - y";
pub const REL_XZ: &str = "2*x*z - 2*x^2 + 2*y - z";
pub const REL_YZ: &str = "2*y*z - 2*x^2 + 2*y + 4*y^2 - z";

pub const G_X: &str = "32*x^8 - 1728*x^7 - 2864*x^6 - 11088*x^5 - 14988*x^4
    - 28080*x^3 - 23484*x^2 + 23484*y
    - 2048*y^7 - 9728*y^6 - 18944*y^5 - 25888*y^4
    - 20384*y^3 - 22284*y^2 + 2298*z
    + 16*z^7 - 8*z^6 + 16*z^5 - 46*z^4 + 156*z^3 - 581*z^2";

pub const G_Y: &str = "2048*y^8 - 112608*x^7 - 196272*x^6 - 723264*x^5
    - 1000056*x^4 - 1835964*x^3
    - 1556406*x^2 + 1556406*y
    - 116736*y^7 - 582656*y^6 - 1144064*y^5
    - 1576192*y^4 - 1226864*y^3
    - 1395024*y^2 + 139779*z
    + 1008*z^7 - 496*z^6 + 984*z^5 - 2816*z^4
    + 9522*z^3 - 35392*z^2";

pub const F1: &str = "x*y + e*x^2 - e^15*y";
pub const F2: &str = "2*x*z - 2*e^2*x^2 + 2*e^16*y - e^15*z";
pub const F3: &str = "2*y*z - 2*e^3*x^2 + 4*e*y^2 + 2*e^17*y - e^16*z";

pub const F4: &str = "32*x^8 + 16*e*z^7 - 2048*e^8*y^7 - 1728*e^15*x^7 - 8*e^18*z^6
    - 9728*e^24*y^6 - 2864*e^30*x^6 + 16*e^35*z^5 - 18944*e^40*y^5
    - 11088*e^45*x^5 - 46*e^52*z^4 - 25888*e^56*y^4 - 14988*e^60*x^4
    + 156*e^69*z^3 - 20384*e^72*y^3 - 28080*e^75*x^3 - 581*e^86*z^2
    - 22284*e^88*y^2 - 23484*e^90*x^2 + 2298*e^103*z + 23484*e^104*y";

pub const F5: &str = "2048*y^8 + 1008*e^9*z^7 - 116736*e^16*y^7 - 112608*e^23*x^7
    - 496*e^26*z^6 - 582656*e^32*y^6 - 196272*e^38*x^6 + 984*e^43*z^5
    - 1144064*e^48*y^5 - 723264*e^53*x^5 - 2816*e^60*z^4 - 1576192*e^64*y^4
    - 1000056*e^68*x^4 + 9522*e^77*z^3 - 1226864*e^80*y^3 - 1835964*e^83*x^3
    - 35392*e^94*z^2 - 1395024*e^96*y^2 - 1556406*e^98*x^2
    + 139779*e^111*z + 1556406*e^112*y";

pub const F6: &str = "z^8";

pub fn p3(text: &str) -> Poly {
    Poly::parse(text, 4).expect("reference polynomial parses")
}

pub fn spider(legs: &[u32]) -> SpiderType {
    SpiderType::new(legs.to_vec()).expect("valid legs")
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Every spider type with `r ≤ max_r` legs of length `≤ max_len`, in
/// every leg order.
pub fn small_types(max_r: usize, max_len: u32) -> Vec<SpiderType> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_r {
        layer = layer
            .iter()
            .flat_map(|p| {
                (1..=max_len).map(move |l| {
                    let mut v = p.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().map(|l| SpiderType::new(l.clone()).unwrap()));
    }
    out
}

/// Plain Gaussian elimination over ℚ, kept separate from the library.
pub fn oracle_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, p) in bottom[0][c..].iter_mut().zip(&top[rank][c..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Exponent vectors in `r` variables of total degree `< bound`.
fn monomials_below(r: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(v: usize, r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v == r {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(v + 1, r, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if bound > 0 {
        rec(0, r, bound - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim ℚ[x]/I` for an ε-free ideal containing `m^bound`: monomials of
/// degree `< bound` minus the rank of all their multiples of the
/// generators, truncated at degree `bound`.
pub fn macaulay_corank(gens: &[Poly], r: usize, bound: u32) -> usize {
    let cols = monomials_below(r, bound);
    let index = |e: &[u32]| cols.iter().position(|c| c == e);
    let mut rows = Vec::new();
    for g in gens {
        for m in &cols {
            let mut row = vec![BigRational::zero(); cols.len()];
            let mut any = false;
            for (mono, c) in g.terms() {
                assert_eq!(mono.epsilon_exp(), 0, "oracle expects an e-free ideal");
                let e: Vec<u32> = (1..=r).map(|v| mono.exp(v) + m[v - 1]).collect();
                if let Some(k) = index(&e) {
                    row[k] += c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    cols.len() - oracle_rank(rows)
}

/// Coordinate order per leg: longest leg first, ties in input order.
pub fn oracle_orders(spider: &SpiderType) -> Vec<usize> {
    let legs = spider.legs();
    (0..legs.len())
        .map(|i| {
            1 + (0..legs.len())
                .filter(|&j| legs[j] > legs[i] || (legs[j] == legs[i] && j < i))
                .count()
        })
        .collect()
}

/// Coordinates `v_k = (k−1)!·tᵏ / ∏_{j≤k}(1 − j·t)` mod `tⁿ`, one per leg
/// as assigned by [`oracle_orders`], built from geometric series without
/// the library's series code.
pub fn oracle_coordinates(spider: &SpiderType) -> Vec<Vec<BigRational>> {
    let n = spider.colength();
    let mul = |a: &[BigRational], b: &[BigRational]| {
        let mut c = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(n - i) {
                c[i + j] += x * y;
            }
        }
        c
    };
    let mut coords = Vec::new();
    let mut prod = vec![BigRational::zero(); n];
    prod[0] = BigRational::one();
    let mut fact = BigRational::one();
    for i in 1..=spider.rank() {
        let geo: Vec<BigRational> = (0..n).map(|k| q(i as i64).pow(k as i32)).collect();
        prod = mul(&prod, &geo);
        let mut v = vec![BigRational::zero(); n];
        for k in i..n {
            v[k] = &fact * &prod[k - i];
        }
        coords.push(v);
        fact *= q(i as i64);
    }
    oracle_orders(spider)
        .into_iter()
        .map(|k| coords[k - 1].clone())
        .collect()
}

/// Evaluates an ε-free polynomial at the oracle coordinates.
pub fn oracle_eval(p: &Poly, spider: &SpiderType) -> Vec<BigRational> {
    let n = spider.colength();
    let coords = oracle_coordinates(spider);
    let mut total = vec![BigRational::zero(); n];
    for (m, c) in p.terms() {
        let mut acc = vec![BigRational::zero(); n];
        acc[0] = c.clone();
        for v in 1..=spider.rank() {
            for _ in 0..m.exp(v) {
                let mut next = vec![BigRational::zero(); n];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in coords[v - 1].iter().enumerate().take(n - i) {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
        }
        for (t, a) in total.iter_mut().zip(acc) {
            *t += a;
        }
    }
    total
}

pub fn max_abs_bits(p: &Poly) -> u64 {
    p.terms()
        .map(|(_, c)| c.numer().abs().bits())
        .max()
        .unwrap_or(0)
}

pub fn mono(exps: &[u32]) -> Monomial {
    Monomial::from_exps(exps.to_vec())
}
