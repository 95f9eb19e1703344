//! Symmetric tensors over vector fields and the equivariant cross-section.
//!
//! A basis monomial `d_{p1} ⊙ ... ⊙ d_{ps}` with `d_p = z^p d/dz` is stored
//! as its multiset of powers, sorted descending. The sl(2) action is the
//! Leibniz rule over the `s` factors, each factor carrying weight -1.
//!
//! The cross-section `σ` sends `z^p (d/dz)^s` to a tensor of total power `p`.
//! For `p <= 2s` it is the raising chain of `(d_0)^s`; for `p >= 2s + 1` it is
//! the raising chain of `v_{2s+1}`, whose coefficients come from a linear
//! recursion seeded so that lowering `v_{2s+1}` lands on `C_s (d_2)^s`.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::algebra::{factorial, rat, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::sections::{HalfWeight, Section, Sl2Generator};

/// Degree-`s` symmetric tensor in the basis of sorted power multisets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTensor {
    degree: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SymTensor {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `c · ⊙ d_{p_i}`; the powers may be given in any order.
    pub fn monomial(powers: &[u32], c: Rational) -> Self {
        let mut t = Self::zero(powers.len() as u32);
        t.add_term(powers.to_vec(), c);
        t
    }

    /// `(d_p)^{⊙s}`
    pub fn power(p: u32, s: u32) -> Self {
        Self::monomial(&vec![p; s as usize], Rational::one())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add_term(&mut self, mut key: Vec<u32>, c: Rational) {
        assert_eq!(key.len(), self.degree as usize, "key degree mismatch");
        if c.is_zero() {
            return;
        }
        key.sort_unstable_by(|a, b| b.cmp(a));
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, powers: &[u32]) -> Rational {
        let mut key = powers.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms keyed by descending power tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
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
        let mut out = Self::zero(self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Sum of all coefficients, i.e. the coefficient of the single monomial
    /// `project_ps` produces when every key has the same total power.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }
}

impl Add<&SymTensor> for &SymTensor {
    type Output = SymTensor;
    fn add(self, rhs: &SymTensor) -> SymTensor {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SymTensor> for &SymTensor {
    type Output = SymTensor;
    fn sub(self, rhs: &SymTensor) -> SymTensor {
        self + &rhs.scale(&rat(-1))
    }
}

/// Leibniz action `π_⊙(X)`, each factor `d_p` transforming at weight -1.
pub fn sym_act(x: Sl2Generator, t: &SymTensor) -> SymTensor {
    let twice_m = HalfWeight::VECTOR_FIELD.twice();
    let mut out = SymTensor::zero(t.degree);
    for (key, c) in &t.terms {
        for i in 0..key.len() {
            let p = key[i] as i64;
            let (scale, shift) = x.monomial_action(p, twice_m);
            if scale == 0 {
                continue;
            }
            let mut next = key.clone();
            next[i] = (p + shift) as u32;
            out.add_term(next, c * rat(scale));
        }
    }
    out
}

fn raise_times(t: &SymTensor, times: u32) -> SymTensor {
    (0..times).fold(t.clone(), |acc, _| sym_act(Sl2Generator::Raise, &acc))
}

/// `P_s: ⊙ z^{p_i} d/dz ↦ z^{Σ p_i} (d/dz)^s`.
pub fn project_ps(t: &SymTensor) -> Section {
    let mut out = LaurentPoly::zero();
    for (key, c) in &t.terms {
        let total: u32 = key.iter().sum();
        out.add_term(total as i64, c.clone());
    }
    Section::symbol(t.degree, out)
}

/// The constant `C_s` with `(π_⊙(A+))^{2s} (d_0)^s = C_s (d_2)^s`, computed by
/// raising `2s` times.
pub fn compute_cs(s: u32) -> Result<Rational> {
    if s == 0 {
        return Err(Error::ParameterRange("C_s needs s >= 1".into()));
    }
    let raised = raise_times(&SymTensor::power(0, s), 2 * s);
    let top = vec![2; s as usize];
    if raised.len() != 1 || !raised.terms.contains_key(&top) {
        return Err(Error::RaisingChainCollapse { s });
    }
    Ok(raised.terms[&top].clone())
}

/// Coefficients `A_{pn}` of `v_{2s+1}`, indexed by the largest power `p` and
/// the multiplicity `n` of `d_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionTable {
    pub s: u32,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl RecursionTable {
    pub fn get(&self, p: u32, n: u32) -> Rational {
        self.entries
            .get(&(p, n))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in `(p, n)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether `A_{pn}` may be nonzero: opposite parity and
    /// `n <= min(p - 3, 2s + 1 - p)`.
    pub fn admissible(s: u32, p: u32, n: u32) -> bool {
        p >= 3 && p <= 2 * s + 1 && (p + n) % 2 == 1 && n <= (p - 3).min(2 * s + 1 - p)
    }
}

/// Fills `A_{pn}` for `4 <= p <= 2s + 1` from `A_{41} = -C_s (s - 1) / 6` by
/// `A_{(p+1)n} = -[(2s - p - n + 2) A_{p(n-1)} + (n + 1) A_{p(n+1)}] / (p + 1)`.
pub fn build_recursion(s: u32) -> Result<RecursionTable> {
    let mut table = RecursionTable {
        s,
        entries: BTreeMap::new(),
    };
    if s < 2 {
        return Ok(table);
    }
    let cs = compute_cs(s)?;
    let a41 = -(cs * rat(s as i64 - 1)) / rat(6);
    if !a41.is_zero() {
        table.entries.insert((4, 1), a41);
    }
    let si = s as i64;
    for p in 4..(2 * s + 1) {
        let pi = p as i64;
        // n ranges one past the largest n present at level p.
        let max_n = table
            .entries
            .keys()
            .filter(|(q, _)| *q == p)
            .map(|(_, n)| *n)
            .max();
        let Some(max_n) = max_n else { continue };
        for n in 0..=(max_n + 1) {
            let ni = n as i64;
            let lower = if n == 0 {
                Rational::zero()
            } else {
                table.get(p, n - 1)
            };
            let upper = table.get(p, n + 1);
            let value = -(rat(2 * si - pi - ni + 2) * lower + rat(ni + 1) * upper) / rat(pi + 1);
            if value.is_zero() {
                continue;
            }
            if !RecursionTable::admissible(s, p + 1, n) {
                return Err(Error::RecursionRange { p: p + 1, n });
            }
            table.entries.insert((p + 1, n), value);
        }
    }
    Ok(table)
}

/// Key `d_p ⊙ (d_2)^m ⊙ (d_1)^n ⊙ (d_0)^{s-m-n-1}`.
fn chain_key(s: u32, p: u32, m: u32, n: u32) -> Vec<u32> {
    let mut key = Vec::with_capacity(s as usize);
    key.push(p);
    key.extend(std::iter::repeat_n(2, m as usize));
    key.extend(std::iter::repeat_n(1, n as usize));
    key.extend(std::iter::repeat_n(0, (s - m - n - 1) as usize));
    key
}

/// The vector `v_{2s+1}` of total power `2s + 1`:
/// `-(C_s/3) d_3 ⊙ (d_2)^{s-1} - Σ_p d_p ⊙ Σ_n A_{pn} (d_2)^m ⊙ (d_1)^n ⊙ (d_0)^{s-m-n-1}`
/// with `2m + n = 2s + 1 - p`.
pub fn build_v(s: u32) -> Result<SymTensor> {
    let cs = compute_cs(s)?;
    let mut v = SymTensor::zero(s);
    v.add_term(chain_key(s, 3, s - 1, 0), -(cs / rat(3)));
    let table = build_recursion(s)?;
    for ((p, n), a) in table.entries() {
        let m = (2 * s + 1 - p - n) / 2;
        v.add_term(chain_key(s, p, m, n), -a.clone());
    }
    Ok(v)
}

/// `Π_{q=lo}^{hi-1} (q - 2s)`, the scalar picked up by raising `z^lo` to
/// `z^hi` at weight `-s`.
fn raising_scalar(s: u32, lo: u32, hi: u32) -> Rational {
    (lo..hi).fold(Rational::one(), |acc, q| acc * rat(q as i64 - 2 * s as i64))
}

/// Image of `z^p (d/dz)^s` under the cross-section, normalized so that
/// `project_ps` returns exactly `z^p (d/dz)^s`.
pub fn section_sigma(s: u32, p: u32) -> Result<SymTensor> {
    if s == 0 {
        return Err(Error::ParameterRange("cross-section needs s >= 1".into()));
    }
    if p <= 2 * s {
        let raised = raise_times(&SymTensor::power(0, s), p);
        return Ok(raised.scale(&(Rational::one() / raising_scalar(s, 0, p))));
    }
    let v = build_v(s)?;
    let nu = v.coefficient_sum();
    if nu.is_zero() {
        return Err(Error::Singular);
    }
    let r = p - 2 * s - 1;
    let raised = raise_times(&v, r);
    let norm = Rational::from_integer(factorial(r as u64)) * nu;
    Ok(raised.scale(&(Rational::one() / norm)))
}

/// `v_{2s+1}` divided by its coefficient sum, i.e. `section_sigma(s, 2s + 1)`.
pub fn normalized_v(s: u32) -> Result<SymTensor> {
    section_sigma(s, 2 * s + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;
    use crate::sections::act_sl2;
    use proptest::prelude::*;
    use Sl2Generator::*;

    #[test]
    fn act_examples() {
        let r = sym_act(Raise, &SymTensor::power(0, 2));
        assert_eq!(r, SymTensor::monomial(&[1, 0], rat(-4)));
        for s in 1..6 {
            assert!(sym_act(Raise, &SymTensor::power(2, s)).is_zero());
        }
        let e = sym_act(Cartan, &SymTensor::monomial(&[3, 2], rat(1)));
        assert_eq!(e, SymTensor::monomial(&[3, 2], rat(6)));
    }

    #[test]
    fn projection_examples() {
        let p = project_ps(&SymTensor::monomial(&[3, 2], rat(1)));
        assert_eq!(p, Section::symbol(2, LaurentPoly::z(5)));
        let p = project_ps(&SymTensor::power(0, 3));
        assert_eq!(p, Section::symbol(3, LaurentPoly::one()));
        let diff = &SymTensor::monomial(&[4, 1], rat(1)) - &SymTensor::monomial(&[3, 2], rat(1));
        assert!(project_ps(&diff).is_zero());
    }

    #[test]
    fn cs_examples() {
        assert_eq!(compute_cs(1).unwrap(), rat(2));
        assert_eq!(compute_cs(2).unwrap(), rat(24));
        assert_eq!(compute_cs(3).unwrap(), rat(720));
        assert!(compute_cs(0).is_err());
    }

    #[test]
    fn recursion_examples() {
        let t = build_recursion(2).unwrap();
        assert_eq!(t.get(4, 1), rat(-4));
        assert_eq!(t.get(5, 0), frac(4, 5));
        assert!(build_recursion(1).unwrap().is_empty());
        let t3 = build_recursion(3).unwrap();
        assert_eq!(t3.get(4, 1), rat(-240));
        for ((p, n), _) in t3.entries() {
            assert!(RecursionTable::admissible(3, p, n), "({p}, {n})");
        }
    }

    #[test]
    fn v5_matches_displayed_ratios() {
        let v = build_v(2).unwrap();
        let scale = -(compute_cs(2).unwrap() / rat(3));
        let mut expected = SymTensor::zero(2);
        expected.add_term(vec![3, 2], scale.clone());
        expected.add_term(vec![4, 1], scale.clone() * frac(-1, 2));
        expected.add_term(vec![5, 0], scale * frac(1, 10));
        assert_eq!(v, expected);
        assert_eq!(v.coeff(&[3, 2]), rat(-8));
        assert_eq!(v.coeff(&[4, 1]), rat(4));
        assert_eq!(v.coeff(&[5, 0]), frac(-4, 5));
    }

    #[test]
    fn v3_is_single_term() {
        assert_eq!(build_v(1).unwrap(), SymTensor::monomial(&[3], frac(-2, 3)));
    }

    #[test]
    fn lowering_v_hits_cs_d2() {
        for s in 1..=8 {
            let lowered = sym_act(Lower, &build_v(s).unwrap());
            let expected = SymTensor::power(2, s).scale(&compute_cs(s).unwrap());
            assert_eq!(lowered, expected, "s = {s}");
        }
    }

    #[test]
    fn v_key_shape() {
        for s in 1..=7 {
            let v = build_v(s).unwrap();
            for (key, _) in v.terms() {
                assert_eq!(key.iter().sum::<u32>(), 2 * s + 1);
                assert!((3..=2 * s + 1).contains(&key[0]));
                assert!(key[1..].iter().all(|&q| q <= 2));
            }
        }
    }

    #[test]
    fn sigma_examples() {
        for s in 1..4 {
            assert_eq!(section_sigma(s, 0).unwrap(), SymTensor::power(0, s));
        }
        assert_eq!(section_sigma(1, 1).unwrap(), SymTensor::power(1, 1));
        let v5 = build_v(2).unwrap();
        assert_eq!(section_sigma(2, 5).unwrap(), v5.scale(&frac(-5, 24)));
    }

    #[test]
    fn sigma_is_right_inverse() {
        for s in 1..=4 {
            for p in 0..=(2 * s + 6) {
                let got = project_ps(&section_sigma(s, p).unwrap());
                assert_eq!(
                    got,
                    Section::symbol(s, LaurentPoly::z(p as i64)),
                    "s={s} p={p}"
                );
            }
        }
    }

    #[test]
    fn raising_chain_consistency() {
        for s in 1..=4 {
            for p in 0..=(2 * s + 5) {
                let lhs = sym_act(Raise, &section_sigma(s, p).unwrap());
                let rhs = section_sigma(s, p + 1)
                    .unwrap()
                    .scale(&rat(p as i64 - 2 * s as i64));
                assert_eq!(lhs, rhs, "s={s} p={p}");
            }
        }
    }

    fn arb_tensor() -> impl Strategy<Value = SymTensor> {
        (1u32..4).prop_flat_map(|s| {
            proptest::collection::vec(
                (proptest::collection::vec(0u32..7, s as usize), -9i64..9),
                0..6,
            )
            .prop_map(move |terms| {
                let mut t = SymTensor::zero(s);
                for (k, c) in terms {
                    t.add_term(k, rat(c));
                }
                t
            })
        })
    }

    proptest! {
        #[test]
        fn projection_intertwines(t in arb_tensor()) {
            for x in Sl2Generator::ALL {
                prop_assert_eq!(project_ps(&sym_act(x, &t)), act_sl2(x, &project_ps(&t)));
            }
        }
    }
}
