use crate::error::{Error, Result};
use crate::exactlinear::{rank, solve_linear, Matrix, Rational};
use crate::poly::Monomial;
use crate::series::{divided_difference_coords, CoordinateSystem, TruncSeries};

use super::SpiderType;

/// The monomials `{1} ∪ {x_i^k : 1 ≤ k ≤ ℓ_i}` with their series in ℚ[t]/(tⁿ).
#[derive(Clone, Debug)]
pub struct SpiderBasis {
    pub coords: CoordinateSystem,
    pub monomials: Vec<Monomial>,
    pub series: Vec<TruncSeries>,
    /// Column `m` holds the coefficients of `series[m]`.
    matrix: Matrix,
}

impl SpiderBasis {
    pub fn spider(&self) -> &SpiderType {
        &self.coords.spider
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn coefficient_matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|b| b == m)
    }
}

pub fn build_basis(spider: &SpiderType) -> Result<SpiderBasis> {
    build_basis_from(divided_difference_coords(spider)?)
}

/// Builds the basis over the given coordinates and checks it has full rank.
pub fn build_basis_from(coords: CoordinateSystem) -> Result<SpiderBasis> {
    let spider = coords.spider.clone();
    let n = spider.colength();
    let nvars = spider.nvars();
    let mut monomials = vec![Monomial::one(nvars)];
    let mut series = vec![TruncSeries::one(n)];
    for i in 1..=spider.rank() {
        let v = &coords.coords[i - 1];
        let mut power = TruncSeries::one(n);
        for k in 1..=spider.leg(i) {
            power = power.mul(v)?;
            monomials.push(Monomial::var_power(nvars, i, k));
            series.push(power.clone());
        }
    }
    let mut matrix = Matrix::zeros(n, n);
    for (col, s) in series.iter().enumerate() {
        for (row, c) in s.coeffs().iter().enumerate() {
            matrix[(row, col)] = c.clone();
        }
    }
    let found = rank(&matrix);
    if found < n {
        return Err(Error::BasisDegenerate {
            rank: found,
            expected: n,
        });
    }
    Ok(SpiderBasis {
        coords,
        monomials,
        series,
        matrix,
    })
}

/// Coefficients `c` with `f = Σ c_m · basis.series[m]`.
pub fn expand_in_basis(f: &TruncSeries, basis: &SpiderBasis) -> Result<Vec<Rational>> {
    if f.order() != basis.len() {
        return Err(Error::OrderMismatch(f.order(), basis.len()));
    }
    solve_linear(&basis.matrix, f.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinear::int;
    use num_traits::Zero;

    #[test]
    fn basis_sizes() {
        for (legs, n) in [(vec![7, 7, 7], 22), (vec![1, 1], 3), (vec![3], 4)] {
            let b = build_basis(&SpiderType::new(legs).unwrap()).unwrap();
            assert_eq!(b.len(), n);
            assert_eq!(rank(b.coefficient_matrix()), n);
        }
    }

    #[test]
    fn single_leg_basis_is_powers_of_x() {
        let b = build_basis(&SpiderType::new(vec![3]).unwrap()).unwrap();
        let names: Vec<String> = b.monomials.iter().map(ToString::to_string).collect();
        assert_eq!(names, vec!["1", "x", "x^2", "x^3"]);
    }

    #[test]
    fn expansion_of_a_basis_element_is_a_unit_vector() {
        let b = build_basis(&SpiderType::new(vec![7, 7, 7]).unwrap()).unwrap();
        let k = b.position(&Monomial::var_power(4, 1, 3)).unwrap();
        let c = expand_in_basis(&b.series[k], &b).unwrap();
        for (i, ci) in c.iter().enumerate() {
            assert_eq!(*ci, if i == k { int(1) } else { int(0) });
        }
    }

    #[test]
    fn warm_up_x_squared_equals_y() {
        let b = build_basis(&SpiderType::new(vec![1, 1]).unwrap()).unwrap();
        let x2 = b.coords.coords[0].pow(2);
        let c = expand_in_basis(&x2, &b).unwrap();
        let y = b.position(&Monomial::var_power(3, 2, 1)).unwrap();
        for (i, ci) in c.iter().enumerate() {
            assert_eq!(ci.is_zero(), i != y);
        }
        assert_eq!(c[y], int(1));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let b = build_basis(&SpiderType::new(vec![1, 1]).unwrap()).unwrap();
        assert!(expand_in_basis(&TruncSeries::one(4), &b).is_err());
    }
}
