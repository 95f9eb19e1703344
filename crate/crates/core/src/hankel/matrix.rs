//! Square exact matrices and the linear system that pins down the
//! coefficients of `L_s`.
//!
//! `M_s a = l̂_s` is solved through the factorization `M_s = L_s U_s D_s`
//! into lower and upper Pascal triangles and a diagonal, using the explicit
//! signed-binomial inverses of the Pascal factors.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::algebra::{choose, factorial, rat, sign, Rational};
use crate::error::{Error, Result};

/// Dense square matrix over [`Rational`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<Vec<Rational>>,
}

impl ExactMatrix {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| f(i, j)).collect())
            .collect();
        Self { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix rows must form a square".into()));
        }
        Ok(Self { dim, entries: rows })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!(
                "vector of length {} against {}x{} matrix",
                v.len(),
                self.dim,
                self.dim
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |a, (x, y)| a + x * y)
            })
            .collect())
    }

    /// Inverse of a diagonal matrix; fails on a zero pivot or off-diagonal entry.
    pub fn diagonal_inverse(&self) -> Result<Self> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && !self.entries[i][j].is_zero() {
                    return Err(Error::Dimension("matrix is not diagonal".into()));
                }
            }
            if self.entries[i][i].is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(Self::from_fn(self.dim, |i, j| {
            if i == j {
                self.entries[i][i].recip()
            } else {
                Rational::zero()
            }
        }))
    }

    /// Solves `self · x = b` by Gauss–Jordan elimination with exact pivots.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.dim {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let n = self.dim;
        let mut a: Vec<Vec<Rational>> = self
            .entries
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *v -= &factor * p;
                }
            }
        }
        Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }
}

impl Mul<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ExactMatrix::from_fn(self.dim, |i, j| {
            (0..self.dim).fold(Rational::zero(), |acc, k| {
                acc + &self.entries[i][k] * &rhs.entries[k][j]
            })
        })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(factorial(num), factorial(den))
}

fn binom_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(choose(n as u64, k as u64))
}

/// `M_s = ((-1)^j ((i+j)!/i!) ((2s+1)!/(s+j+1)!))`
pub fn build_ms(s: u32) -> ExactMatrix {
    let s = s as u64;
    ExactMatrix::from_fn(s as usize + 1, |i, j| {
        let (i, j) = (i as u64, j as u64);
        ratio(i + j, i) * ratio(2 * s + 1, s + j + 1) * rat(sign(j as i64))
    })
}

/// `N_s = ((i+j)! / (i! j!))`
pub fn build_ns(s: u32) -> ExactMatrix {
    ExactMatrix::from_fn(s as usize + 1, |i, j| binom_rat(i + j, i))
}

/// `D_s = diag((-1)^j j! (2s+1)!/(s+j+1)!)`
pub fn build_ds(s: u32) -> ExactMatrix {
    let s64 = s as u64;
    let diag: Vec<Rational> = (0..=s64)
        .map(|j| {
            Rational::from_integer(factorial(j))
                * ratio(2 * s64 + 1, s64 + j + 1)
                * rat(sign(j as i64))
        })
        .collect();
    ExactMatrix::diagonal(&diag)
}

/// `L_s = (C(i, j))`
pub fn pascal_lower(s: u32) -> ExactMatrix {
    ExactMatrix::from_fn(s as usize + 1, binom_rat)
}

/// `U_s = (C(j, i))`
pub fn pascal_upper(s: u32) -> ExactMatrix {
    ExactMatrix::from_fn(s as usize + 1, |i, j| binom_rat(j, i))
}

/// `L_s^{-1} = ((-1)^{i+j} C(i, j))`
pub fn pascal_lower_inv(s: u32) -> ExactMatrix {
    ExactMatrix::from_fn(s as usize + 1, |i, j| {
        binom_rat(i, j) * rat(sign((i + j) as i64))
    })
}

/// `U_s^{-1} = ((-1)^{i+j} C(j, i))`
pub fn pascal_upper_inv(s: u32) -> ExactMatrix {
    ExactMatrix::from_fn(s as usize + 1, |i, j| {
        binom_rat(j, i) * rat(sign((i + j) as i64))
    })
}

/// Coordinates of `l_s` in the basis `b_{s-i} ⊗ b_i`: `((-1)^i C(s, i))`.
pub fn lowest_weight_coords(s: u32) -> Vec<Rational> {
    (0..=s as usize)
        .map(|i| binom_rat(s as usize, i) * rat(sign(i as i64)))
        .collect()
}

/// Intermediate vectors of the factorized solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveTrace {
    pub s: u32,
    /// `l̂_s`
    pub rhs: Vec<Rational>,
    /// `L_s^{-1} l̂_s`
    pub after_lower: Vec<Rational>,
    /// `U_s^{-1} L_s^{-1} l̂_s`
    pub after_upper: Vec<Rational>,
    /// `D_s^{-1} U_s^{-1} L_s^{-1} l̂_s`
    pub a: Vec<Rational>,
}

/// Solves `M_s a = l̂_s` as `a = D_s^{-1} U_s^{-1} L_s^{-1} l̂_s`, checking each
/// intermediate against its closed form:
/// `L_s^{-1} l̂_s = ((-1)^j C(s+j, j))` and
/// `U_s^{-1} L_s^{-1} l̂_s = ((-1)^j C(s+j, j) C(2s+1, s+j+1))`.
pub fn solve_for_a_trace(s: u32) -> Result<SolveTrace> {
    let n = s as usize;
    let rhs = lowest_weight_coords(s);
    let after_lower = pascal_lower_inv(s).mul_vec(&rhs)?;
    let expected_lower: Vec<Rational> = (0..=n)
        .map(|j| binom_rat(n + j, j) * rat(sign(j as i64)))
        .collect();
    if after_lower != expected_lower {
        return Err(Error::ClosedFormMismatch(format!("L_s^-1 l_s at s = {s}")));
    }
    let after_upper = pascal_upper_inv(s).mul_vec(&after_lower)?;
    let expected_upper: Vec<Rational> = (0..=n)
        .map(|j| binom_rat(n + j, j) * binom_rat(2 * n + 1, n + j + 1) * rat(sign(j as i64)))
        .collect();
    if after_upper != expected_upper {
        return Err(Error::ClosedFormMismatch(format!(
            "U_s^-1 L_s^-1 l_s at s = {s}"
        )));
    }
    let a = build_ds(s).diagonal_inverse()?.mul_vec(&after_upper)?;
    Ok(SolveTrace {
        s,
        rhs,
        after_lower,
        after_upper,
        a,
    })
}

/// Coefficients of `L_s` obtained from the factorized linear solve.
pub fn solve_for_a(s: u32) -> Result<Vec<Rational>> {
    Ok(solve_for_a_trace(s)?.a)
}
