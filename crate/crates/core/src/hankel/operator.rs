use num_traits::Zero;

use crate::algebra::{choose, factorial, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::sections::{proj_plus, HalfWeight, Section};
use crate::tensor_rep::{oj_tensor, TensorElt};

/// `a_j = C(s, j) C(s+j, j) / s!` for `j = 0..=s`.
pub fn coeffs_a(s: u32) -> Vec<Rational> {
    let s64 = s as u64;
    let sf = factorial(s64);
    (0..=s64)
        .map(|j| Rational::new(choose(s64, j) * choose(s64 + j, j), sf.clone()))
        .collect()
}

/// Differential operator `Σ_j c_j(z) (d/dz)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    coeffs: Vec<LaurentPoly>,
}

impl DiffOp {
    /// Builds from coefficient functions `c_0, ..., c_order`.
    pub fn new(coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("a differential operator needs c_0".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &LaurentPoly {
        &self.coeffs[j]
    }

    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * &f.derive(j as u32))
            .sum()
    }
}

fn require_holomorphic(x: &LaurentPoly) -> Result<()> {
    match x.min_exp() {
        Some(e) if e < 0 => Err(Error::NonHolomorphicSymbol { exponent: e }),
        _ => Ok(()),
    }
}

/// `L_s(x) = Σ_j a_j x^{(s-j)} (d/dz)^j`.
pub fn build_ls(s: u32, x: &LaurentPoly) -> Result<DiffOp> {
    require_holomorphic(x)?;
    let coeffs = coeffs_a(s)
        .iter()
        .enumerate()
        .map(|(j, a)| x.derive(s - j as u32).scale(a))
        .collect();
    DiffOp::new(coeffs)
}

/// `B_{s+1}(x) f = P_+ L_s(x) f` for `f` already in the image of `P_-`.
pub fn apply_b(s: u32, x: &LaurentPoly, f: &Section) -> Result<Section> {
    if f.weight != HalfWeight::HALF {
        return Err(Error::WeightMismatch {
            expected: HalfWeight::HALF.twice(),
            found: f.weight.twice(),
        });
    }
    if let Some(e) = f.coeff.max_exp().filter(|e| *e >= 0) {
        return Err(Error::OperatorDomain { exponent: e });
    }
    let op = build_ls(s, x)?;
    proj_plus(&Section::half(op.apply(&f.coeff)))
}

/// Finite window of the matrix of `B_{s+1}(x)`: `entry[m][n]` is the
/// coefficient of `z^m` in `B_{s+1}(x) z^{-(n+1)}`. Row 0 comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWindow {
    pub s: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl OperatorWindow {
    /// Rows flipped so that row 0 is printed last, as in the usual drawings
    /// where weight increases upward.
    pub fn bottom_up(&self) -> Vec<Vec<Rational>> {
        self.entries.iter().rev().cloned().collect()
    }

    /// Whether every antidiagonal `m + n = const` carries a single value.
    pub fn is_antidiagonal_constant(&self) -> bool {
        for m in 0..self.rows {
            for n in 0..self.cols {
                if m + 1 < self.rows && n > 0 && self.entries[m][n] != self.entries[m + 1][n - 1] {
                    return false;
                }
            }
        }
        true
    }
}

pub fn matrix_window(s: u32, x: &LaurentPoly, rows: usize, cols: usize) -> Result<OperatorWindow> {
    let mut entries = vec![vec![Rational::zero(); cols]; rows];
    for n in 0..cols {
        let image = apply_b(s, x, &Section::basis(-(n as i64) - 1))?;
        for (m, row) in entries.iter_mut().enumerate() {
            row[n] = image.coeff.coeff(m as i64);
        }
    }
    Ok(OperatorWindow {
        s,
        rows,
        cols,
        entries,
    })
}

/// `B_{s+1}(x)` as an element of the tensor square: `Σ_j a_j O_j(x)`, extended
/// linearly over the monomials of `x`. Monomials `z^k` with `k <= s` give no
/// contribution.
pub fn b_as_tensor(s: u32, x: &LaurentPoly) -> Result<TensorElt> {
    require_holomorphic(x)?;
    let a = coeffs_a(s);
    let mut out = TensorElt::zero();
    for (k, xk) in x.terms() {
        let k = k as u32;
        if k <= s {
            continue;
        }
        for (j, aj) in a.iter().enumerate() {
            let oj = oj_tensor(s, j as u32, k)?;
            out = &out + &oj.scale(&(aj * xk));
        }
    }
    Ok(out)
}
