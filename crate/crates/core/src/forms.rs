//! Transvectants and the two bilinear forms attached to a symbol.
//!
//! `K_{s+1}(x)[f, g]` pairs the conjugated symbol against the transvectant
//! `τ_{s+1}(f, g)` on the circle; `K̃_{s+1}(x)[f, g]` pairs the operator
//! `B_{s+1}(x)` against `θ ⊗ η` in the tensor square. The contour integral is
//! normalized to extraction of the `z^{-1}` coefficient and the tensor-square
//! pairing to the Kronecker delta on `b_i ⊗ b_j`; the two forms are then
//! proportional, and [`adjointness_report`] measures the constant.

use num_traits::Zero;

use crate::algebra::{choose, rat, sign, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::hankel::b_as_tensor;
use crate::sections::{HalfWeight, Section};

/// Lower limit of the sum defining `τ_{s+1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SumStart {
    /// `j = 0`, the classical transvectant.
    #[default]
    Zero,
    /// `j = 1`, which drops the `f^{(s)} g` term.
    One,
}

/// `τ_{s+1}(f, g) = Σ_{j=0}^s (-1)^j C(s, j)^2 f^{(s-j)} g^{(j)}`, weight `s + 1`.
pub fn transvect(s: u32, f: &LaurentPoly, g: &LaurentPoly) -> Section {
    transvect_with(s, f, g, SumStart::Zero)
}

pub fn transvect_with(s: u32, f: &LaurentPoly, g: &LaurentPoly, start: SumStart) -> Section {
    let first = match start {
        SumStart::Zero => 0,
        SumStart::One => 1,
    };
    let mut out = LaurentPoly::zero();
    for j in first..=s {
        let c = choose(s as u64, j as u64);
        let weight = Rational::from_integer(&c * &c) * rat(sign(j as i64));
        out += &(&f.derive(s - j) * &g.derive(j)).scale(&weight);
    }
    Section::new(HalfWeight::integer(s as i64 + 1), out)
}

/// Integral of a one-density over the circle, normalized to its `z^{-1}`
/// coefficient.
pub fn residue_pair(u: &Section) -> Result<Rational> {
    if u.weight != HalfWeight::ONE {
        return Err(Error::WeightMismatch {
            expected: HalfWeight::ONE.twice(),
            found: u.weight.twice(),
        });
    }
    Ok(u.coeff.coeff(-1))
}

/// Restriction to the circle of the conjugate of `x(z) (d/dz)^s`:
/// `z^k (d/dz)^s ↦ (-1)^s z^{2s-k} (d/dz)^s`.
pub fn conj_symbol(s: u32, x: &LaurentPoly) -> Section {
    let sg = rat(sign(s as i64));
    let coeff = LaurentPoly::from_terms(x.terms().map(|(k, c)| (2 * s as i64 - k, c * &sg)));
    Section::symbol(s, coeff)
}

fn require_holomorphic(name: &str, p: &LaurentPoly) -> Result<()> {
    match p.min_exp() {
        Some(e) if e < 0 => Err(Error::ParameterRange(format!(
            "{name} must be supported on nonnegative exponents (found z^{e})"
        ))),
        _ => Ok(()),
    }
}

/// Hankel form `K_{s+1}(x)[f, g]`.
pub fn form_k(s: u32, x: &LaurentPoly, f: &LaurentPoly, g: &LaurentPoly) -> Result<Rational> {
    require_holomorphic("f", f)?;
    require_holomorphic("g", g)?;
    let xbar = conj_symbol(s, x);
    let tau = transvect(s, f, g);
    let density = Section::new(xbar.weight + tau.weight, &xbar.coeff * &tau.coeff);
    residue_pair(&density)
}

/// `K̃_{s+1}(x)` at the basis element `b_i ⊗ b_j`: the coefficient of
/// `b_i ⊗ b_j` in `B_{s+1}(x)`.
pub fn form_ktilde(s: u32, x: &LaurentPoly, i: u32, j: u32) -> Result<Rational> {
    Ok(b_as_tensor(s, x)?.coeff(i, j))
}

/// How the arguments `f = z^a`, `g = z^b` of `K` are matched with the tensor
/// indices `(i, j)` of `K̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexPairing {
    /// `(i, j) = (b, a)`
    Swapped,
    /// `(i, j) = (a, b)`
    Direct,
}

impl IndexPairing {
    pub fn indices(self, a: u32, b: u32) -> (u32, u32) {
        match self {
            Self::Swapped => (b, a),
            Self::Direct => (a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Swapped => "swapped",
            Self::Direct => "direct",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSample {
    /// Exponent of the monomial symbol `z^k`.
    pub k: u32,
    pub a: u32,
    pub b: u32,
    /// `K_{s+1}(z^k)[z^a, z^b]`
    pub k_value: Rational,
    /// `K̃_{s+1}(z^k)` at `(i, j)` given by the pairing.
    pub kt_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearReport {
    pub s: u32,
    /// `K̃ = lambda K` on every sample, when defined.
    pub lambda: Option<Rational>,
    pub pairing: IndexPairing,
    pub samples: Vec<BilinearSample>,
    /// First sample that breaks proportionality, if any.
    pub offending: Option<usize>,
}

impl BilinearReport {
    pub fn is_proportional(&self) -> bool {
        self.lambda.is_some() && self.offending.is_none()
    }
}

/// Fits `lambda` from the first sample with nonzero `K` and checks it on all
/// others. `Err(index)` names the first sample that disagrees.
fn fit(samples: &[BilinearSample]) -> std::result::Result<Option<Rational>, usize> {
    let lambda = samples
        .iter()
        .find(|p| !p.k_value.is_zero())
        .map(|p| &p.kt_value / &p.k_value);
    for (idx, p) in samples.iter().enumerate() {
        let expected = match &lambda {
            Some(l) => l * &p.k_value,
            None => Rational::zero(),
        };
        if p.kt_value != expected {
            return Err(idx);
        }
    }
    Ok(lambda)
}

fn collect(s: u32, k_max: u32, pairing: IndexPairing) -> Result<Vec<BilinearSample>> {
    let mut samples = Vec::new();
    for k in (2 * s + 1)..=k_max {
        let x = LaurentPoly::z(k as i64);
        let tensor = b_as_tensor(s, &x)?;
        let box_size = k - s;
        for a in 0..=box_size {
            for b in 0..=(box_size - a) {
                let k_value = form_k(s, &x, &LaurentPoly::z(a as i64), &LaurentPoly::z(b as i64))?;
                let (i, j) = pairing.indices(a, b);
                samples.push(BilinearSample {
                    k,
                    a,
                    b,
                    k_value,
                    kt_value: tensor.coeff(i, j),
                });
            }
        }
    }
    Ok(samples)
}

/// Sweeps monomial symbols `z^k`, `2s + 1 <= k <= k_max`, and all argument
/// pairs `z^a, z^b` with `a + b <= k - s`, comparing `K` with `K̃`.
///
/// The swapped index pairing is tried first; the direct pairing is used only
/// if the swapped one is not proportional.
pub fn adjointness_report(s: u32, k_max: u32) -> Result<BilinearReport> {
    let mut first_failure = None;
    for pairing in [IndexPairing::Swapped, IndexPairing::Direct] {
        let samples = collect(s, k_max, pairing)?;
        match fit(&samples) {
            Ok(lambda) => {
                return Ok(BilinearReport {
                    s,
                    lambda,
                    pairing,
                    samples,
                    offending: None,
                })
            }
            Err(idx) => {
                if first_failure.is_none() {
                    first_failure = Some((pairing, samples, idx));
                }
            }
        }
    }
    let (pairing, samples, idx) = first_failure.expect("both pairings attempted");
    Ok(BilinearReport {
        s,
        lambda: None,
        pairing,
        samples,
        offending: Some(idx),
    })
}
