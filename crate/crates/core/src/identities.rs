//! Two binomial-coefficient identities that follow from equivariance of
//! `B_{s+1}`, evaluated exactly on finite grids.
//!
//! Identity A is the coefficient expansion of `B(A+ z^k) = π_⊗(A+) B(z^k)`.
//! Identity B expands `B((A+)^r z^{2s+1}) = π_⊗(A+)^r B(z^{2s+1})` with
//! `r = i + j - s`. In its commonly printed form the right-hand side carries
//! a factor `C(s, j)`; the operator expansion produces `C(s, l)` inside the
//! sum instead. Both forms are available through [`BForm`].

use std::fmt;

use num_traits::Zero;

use crate::algebra::{binom, factorial, rat, sign, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::hankel::b_as_tensor;
use crate::sections::{act_sl2, Section, Sl2Generator};
use crate::tensor_rep::{lowest_weight, tensor_act};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

/// Which right-hand side of identity B to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BForm {
    /// `Σ_l (-1)^l C(s, j) C(j, l) C(i, s - l)`, as usually printed.
    #[default]
    Printed,
    /// `Σ_l (-1)^l C(s, l) C(j, l) C(i, s - l)`, as produced by the
    /// operator expansion.
    Corrected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub family: Family,
    pub params: Vec<i64>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

impl IdentityResult {
    fn new(family: Family, params: Vec<i64>, lhs: Rational, rhs: Rational) -> Self {
        let equal = lhs == rhs;
        Self {
            family,
            params,
            lhs,
            rhs,
            equal,
        }
    }
}

fn c(n: i64, k: i64) -> Result<Rational> {
    binom(n, k)
}

/// Identity A for `s >= 1`, `k >= 2s + 1`, `0 <= l <= k - s`:
///
/// `Σ_j (-1)^j C(s+j, j) C(k, s-j) [C(l+j, j)(k-s) - C(l+j-1, j-1) l]`
/// `= Σ_j (-1)^j C(s+j, j) C(k+1, s-j) C(l+j, j)(k-2s)`.
pub fn identity_a(s: i64, k: i64, l: i64) -> Result<IdentityResult> {
    if s < 1 {
        return Err(Error::ParameterRange(format!(
            "identity A needs s >= 1 (s = {s})"
        )));
    }
    if k < 2 * s + 1 {
        return Err(Error::ParameterRange(format!(
            "identity A needs k >= 2s + 1 (s = {s}, k = {k})"
        )));
    }
    if l < 0 || l > k - s {
        return Err(Error::ParameterRange(format!(
            "identity A needs 0 <= l <= k - s (k - s = {}, l = {l})",
            k - s
        )));
    }
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for j in 0..=s {
        let sg = rat(sign(j));
        let common = c(s + j, j)? * &sg;
        let bracket = c(l + j, j)? * rat(k - s) - c(l + j - 1, j - 1)? * rat(l);
        lhs += &common * c(k, s - j)? * bracket;
        rhs += &common * c(k + 1, s - j)? * c(l + j, j)? * rat(k - 2 * s);
    }
    Ok(IdentityResult::new(Family::A, vec![s, k, l], lhs, rhs))
}

/// Identity B, printed form, for `s >= 1` and `i + j >= s`:
///
/// `Σ_l (-1)^l C(s+l, l) C(j+l, l) C(i+j+s+1, s-l) = Σ_l (-1)^l C(s, j) C(j, l) C(i, s-l)`.
pub fn identity_b(s: i64, i: i64, j: i64) -> Result<IdentityResult> {
    identity_b_with(s, i, j, BForm::Printed)
}

/// Identity B with the right-hand side chosen by `form`.
pub fn identity_b_with(s: i64, i: i64, j: i64, form: BForm) -> Result<IdentityResult> {
    if s < 1 {
        return Err(Error::ParameterRange(format!(
            "identity B needs s >= 1 (s = {s})"
        )));
    }
    if i < 0 || j < 0 {
        return Err(Error::ParameterRange(format!(
            "identity B needs i, j >= 0 (i = {i}, j = {j})"
        )));
    }
    if i + j < s {
        return Err(Error::ParameterRange(format!(
            "identity B needs i + j >= s (s = {s}, i + j = {})",
            i + j
        )));
    }
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for l in 0..=s {
        let sg = rat(sign(l));
        lhs += &sg * c(s + l, l)? * c(j + l, l)? * c(i + j + s + 1, s - l)?;
        let lead = match form {
            BForm::Printed => c(s, j)?,
            BForm::Corrected => c(s, l)?,
        };
        rhs += &sg * lead * c(j, l)? * c(i, s - l)?;
    }
    Ok(IdentityResult::new(Family::B, vec![s, i, j], lhs, rhs))
}

/// Identity A over `1 <= s <= max_s`, `2s + 1 <= k <= 2s + k_span`, all `l`.
pub fn identity_a_grid(max_s: i64, k_span: i64) -> Result<Vec<IdentityResult>> {
    let mut out = Vec::new();
    for s in 1..=max_s {
        for k in (2 * s + 1)..=(2 * s + k_span) {
            for l in 0..=(k - s) {
                out.push(identity_a(s, k, l)?);
            }
        }
    }
    Ok(out)
}

/// Identity B over `1 <= s <= max_s`, `0 <= i, j <= max_ij`, `i + j >= s`.
pub fn identity_b_grid(max_s: i64, max_ij: i64, form: BForm) -> Result<Vec<IdentityResult>> {
    let mut out = Vec::new();
    for s in 1..=max_s {
        for i in 0..=max_ij {
            for j in 0..=max_ij {
                if i + j >= s {
                    out.push(identity_b_with(s, i, j, form)?);
                }
            }
        }
    }
    Ok(out)
}

/// Recomputes `B(A+ z^k) = π_⊗(A+) B(z^k)` at the operator level and checks
/// that, at each tensor index `(k - s - l, l)`, the two sides equal the
/// left and right sides of identity A respectively.
pub fn equivariance_expansion_a(s: u32, k: u32) -> Result<bool> {
    if s < 1 || k < 2 * s + 1 {
        return Err(Error::ParameterRange(format!(
            "expansion needs s >= 1 and k >= 2s + 1 (s = {s}, k = {k})"
        )));
    }
    let symbol = Section::symbol(s, LaurentPoly::z(k as i64));
    let raised_symbol = act_sl2(Sl2Generator::Raise, &symbol);
    let lhs_op = tensor_act(Sl2Generator::Raise, &b_as_tensor(s, &symbol.coeff)?);
    let rhs_op = b_as_tensor(s, &raised_symbol.coeff)?;
    if lhs_op != rhs_op {
        return Ok(false);
    }
    let top = k - s;
    // Off the antidiagonal i + j = k - s both sides must vanish.
    if lhs_op.terms().any(|((i, j), _)| i + j != top) {
        return Ok(false);
    }
    for l in 0..=top {
        let id = identity_a(s as i64, k as i64, l as i64)?;
        if lhs_op.coeff(top - l, l) != id.lhs || rhs_op.coeff(top - l, l) != id.rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recomputes `B((A+)^r z^{2s+1}) = π_⊗(A+)^r l_s` with `r = i + j - s` and
/// checks the coefficient of `b_i ⊗ b_j` on each side against the two sides
/// of identity B in `form`, after dividing out the `r!` produced by raising
/// the symbol.
pub fn equivariance_expansion_b(s: u32, i: u32, j: u32, form: BForm) -> Result<bool> {
    if s < 1 || i + j < s {
        return Err(Error::ParameterRange(format!(
            "expansion needs s >= 1 and i + j >= s (s = {s}, i = {i}, j = {j})"
        )));
    }
    let r = i + j - s;
    let mut symbol = Section::symbol(s, LaurentPoly::z(2 * s as i64 + 1));
    let mut rhs_op = lowest_weight(s);
    for _ in 0..r {
        symbol = act_sl2(Sl2Generator::Raise, &symbol);
        rhs_op = tensor_act(Sl2Generator::Raise, &rhs_op);
    }
    let lhs_op = b_as_tensor(s, &symbol.coeff)?;
    if lhs_op != rhs_op {
        return Ok(false);
    }
    let rf = Rational::from_integer(factorial(r as u64));
    let id = identity_b_with(s as i64, i as i64, j as i64, form)?;
    Ok(lhs_op.coeff(i, j) / &rf == id.lhs && rhs_op.coeff(i, j) / &rf == id.rhs)
}
