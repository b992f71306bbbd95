//! Exact rational scalars and dense linear algebra over ℚ.
//!
//! `Rational` is always kept in lowest terms with a positive denominator;
//! `num_rational` normalizes on construction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let token = token.trim();
    token
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("`{token}` is not a rational number ({e})")))
}

/// Bit size used to rank pivot candidates.
fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Greatest common divisor of the numerators; zero when all are zero.
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduction to row echelon form, considering only the first
    /// `pivot_cols` columns for pivots. Returns the pivot columns in order.
    fn echelonize(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            // Smallest-bit-size pivot keeps intermediate entries short.
            let Some(p) = (row..self.rows)
                .filter(|&i| !self[(i, col)].is_zero())
                .min_by_key(|&i| bit_size(&self[(i, col)]))
            else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for i in row + 1..self.rows {
                if self[(i, col)].is_zero() {
                    continue;
                }
                let factor = &self[(i, col)] * &inv;
                for j in col..self.cols {
                    if self[(row, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(row, j)];
                    self[(i, j)] -= delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact rank over ℚ.
pub fn rank(a: &Matrix) -> usize {
    let mut work = a.clone();
    let cols = work.cols;
    work.echelonize(cols).len()
}

/// Solves `a · x = b` exactly.
///
/// Overdetermined systems are accepted when consistent. Inconsistent systems
/// give `NoSolution`; consistent but rank-deficient ones give `NonUnique`.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.echelonize(n);
    let rank = pivots.len();
    if (rank..aug.rows).any(|i| !aug[(i, n)].is_zero()) {
        return Err(Error::NoSolution);
    }
    if rank < n {
        return Err(Error::NonUnique { rank, unknowns: n });
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &col) in pivots.iter().enumerate().rev() {
        let mut acc = aug[(i, n)].clone();
        for j in col + 1..n {
            if !aug[(i, j)].is_zero() {
                acc -= &aug[(i, j)] * &x[j];
            }
        }
        x[col] = acc / &aug[(i, col)];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_inverse() {
        let a = Matrix::from_i64(&[&[2]]).unwrap();
        assert_eq!(solve_linear(&a, &[int(1)]).unwrap(), vec![frac(1, 2)]);
    }

    #[test]
    fn identity_system() {
        let a = Matrix::identity(2);
        assert_eq!(
            solve_linear(&a, &[int(3), int(-5)]).unwrap(),
            vec![int(3), int(-5)]
        );
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]).unwrap();
        assert_eq!(solve_linear(&a, &[int(1), int(3)]), Err(Error::NoSolution));
        assert_eq!(
            solve_linear(&a, &[int(1), int(2)]),
            Err(Error::NonUnique {
                rank: 1,
                unknowns: 2
            })
        );
    }

    #[test]
    fn overdetermined_consistent() {
        let a = Matrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let x = solve_linear(&a, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
    }

    #[test]
    fn rank_needs_row_swap() {
        let a = Matrix::from_i64(&[&[0, 1, 2], &[0, 2, 4], &[3, 0, 1]]).unwrap();
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn parse_tokens() {
        assert_eq!(parse_rational("1/3").unwrap(), frac(1, 3));
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("4/6").unwrap(), frac(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn lcm_and_gcd() {
        let v = [frac(1, 4), frac(5, 6), int(3)];
        assert_eq!(denominator_lcm(&v), BigInt::from(12));
        let w = [int(6), int(-9), int(15)];
        assert_eq!(numerator_gcd(&w), BigInt::from(3));
    }
}
