//! The tensor square of the weight-1/2 Hardy space.
//!
//! A [`TensorElt`] `Σ c_ij b_i ⊗ b_j` with `b_p = z^p (dz)^(1/2)` doubles as an
//! operator from negative-power half-densities to nonnegative ones: the
//! second slot pairs against the input, `b_j` extracting the coefficient at
//! depth `j + 1`.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::algebra::{factorial, rat, sign, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::sections::{HalfWeight, Section, Sl2Generator};

/// Element of `H^{1/2} ⊗ H^{1/2}` in the basis `b_i ⊗ b_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElt {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl TensorElt {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c b_i ⊗ b_j`
    pub fn basis(i: u32, j: u32, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(i, j, c);
        t
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for ((i, j), v) in &self.terms {
            out.add_term(*i, *j, v * c);
        }
        out
    }
}

impl Add<&TensorElt> for &TensorElt {
    type Output = TensorElt;
    fn add(self, rhs: &TensorElt) -> TensorElt {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl Sub<&TensorElt> for &TensorElt {
    type Output = TensorElt;
    fn sub(self, rhs: &TensorElt) -> TensorElt {
        self + &rhs.scale(&rat(-1))
    }
}

impl std::iter::Sum for TensorElt {
    fn sum<I: Iterator<Item = TensorElt>>(iter: I) -> Self {
        iter.fold(TensorElt::zero(), |acc, t| &acc + &t)
    }
}

/// Leibniz action `π_⊗(X)` with both slots at weight 1/2.
pub fn tensor_act(x: Sl2Generator, t: &TensorElt) -> TensorElt {
    let twice_m = HalfWeight::HALF.twice();
    let mut out = TensorElt::zero();
    for ((i, j), c) in &t.terms {
        let (si, di) = x.monomial_action(*i as i64, twice_m);
        if si != 0 {
            out.add_term((*i as i64 + di) as u32, *j, c * rat(si));
        }
        let (sj, dj) = x.monomial_action(*j as i64, twice_m);
        if sj != 0 {
            out.add_term(*i, (*j as i64 + dj) as u32, c * rat(sj));
        }
    }
    out
}

/// `l_s = Σ_i (-1)^i C(s, i) b_{s-i} ⊗ b_i`
pub fn lowest_weight(s: u32) -> TensorElt {
    let mut t = TensorElt::zero();
    for i in 0..=s {
        let c = Rational::from_integer(crate::algebra::choose(s as u64, i as u64));
        t.add_term(s - i, i, c * rat(sign(i as i64)));
    }
    t
}

/// Applies `t` to `f (dz)^(1/2)` with `f` supported in exponents `<= -1`:
/// `Σ c_ij f_{-(j+1)} z^i`.
pub fn apply_tensor(t: &TensorElt, f: &Section) -> Result<Section> {
    if f.weight != HalfWeight::HALF {
        return Err(Error::WeightMismatch {
            expected: HalfWeight::HALF.twice(),
            found: f.weight.twice(),
        });
    }
    if let Some(e) = f.coeff.max_exp().filter(|e| *e >= 0) {
        return Err(Error::OperatorDomain { exponent: e });
    }
    let mut out = LaurentPoly::zero();
    for ((i, j), c) in &t.terms {
        let fc = f.coeff.coeff(-(*j as i64) - 1);
        if !fc.is_zero() {
            out.add_term(*i as i64, c * fc);
        }
    }
    Ok(Section::half(out))
}

/// Closed form of `O_j(z^k) = P_+ (d/dz)^{s-j}(z^k) (d/dz)^j` as a tensor:
/// `Σ_{i=0}^{k-s-1} (-1)^j ((i+j)!/i!) (k!/(k-s+j)!) b_{k-s-1-i} ⊗ b_i`.
///
/// Requires `k > s - j`; empty when `k <= s`.
pub fn oj_tensor(s: u32, j: u32, k: u32) -> Result<TensorElt> {
    if j > s {
        return Err(Error::ParameterRange(format!("j = {j} exceeds s = {s}")));
    }
    if k + j <= s {
        return Err(Error::OjHypothesis { s, j, k });
    }
    let mut t = TensorElt::zero();
    if k <= s {
        return Ok(t);
    }
    let top = k - s - 1;
    let outer =
        Rational::new(factorial(k as u64), factorial((k - s + j) as u64)) * rat(sign(j as i64));
    for i in 0..=top {
        let inner = Rational::new(factorial((i + j) as u64), factorial(i as u64));
        t.add_term(top - i, i, &outer * inner);
    }
    Ok(t)
}

/// Whether `t` is annihilated by the lowering operator.
pub fn is_lowest_weight(t: &TensorElt) -> bool {
    tensor_act(Sl2Generator::Lower, t).is_zero()
}

/// Cartan eigenvalue of `t`, if `t` is a nonzero eigenvector.
pub fn cartan_eigenvalue(t: &TensorElt) -> Option<Rational> {
    let ((i, j), c) = t.terms().next()?;
    let image = tensor_act(Sl2Generator::Cartan, t);
    let lambda = image.coeff(i, j) / c;
    (image == t.scale(&lambda)).then_some(lambda)
}
