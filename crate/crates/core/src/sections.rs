//! Weighted differentials `f(z) (dz)^m` and the infinitesimal sl(2) action.
//!
//! The weight is stored doubled so that half-integers stay integral. A
//! weight-1/2 section with support in nonnegative exponents lives in the
//! Hardy space on the disk, one with support in exponents `<= -1` lives on
//! the complementary disk at infinity.

use std::fmt;

use crate::algebra::{frac, rat, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Weight `m` of a section, stored as `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfWeight {
    twice_m: i64,
}

impl HalfWeight {
    pub const HALF: HalfWeight = HalfWeight { twice_m: 1 };
    pub const ONE: HalfWeight = HalfWeight { twice_m: 2 };
    pub const VECTOR_FIELD: HalfWeight = HalfWeight { twice_m: -2 };

    pub const fn from_twice(twice_m: i64) -> Self {
        Self { twice_m }
    }

    /// Integer weight `m`.
    pub const fn integer(m: i64) -> Self {
        Self { twice_m: 2 * m }
    }

    /// Weight `-s`, the weight of `x(z) (d/dz)^s`.
    pub const fn symbol(s: u32) -> Self {
        Self {
            twice_m: -2 * s as i64,
        }
    }

    pub const fn twice(self) -> i64 {
        self.twice_m
    }

    pub fn as_rational(self) -> Rational {
        frac(self.twice_m, 2)
    }
}

impl std::ops::Add for HalfWeight {
    type Output = HalfWeight;
    fn add(self, rhs: HalfWeight) -> HalfWeight {
        HalfWeight::from_twice(self.twice_m + rhs.twice_m)
    }
}

impl fmt::Display for HalfWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_m % 2 == 0 {
            write!(f, "{}", self.twice_m / 2)
        } else {
            write!(f, "{}/2", self.twice_m)
        }
    }
}

/// Generators of sl(2): lowering `A-`, raising `A+` and Cartan `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl2Generator {
    Lower,
    Raise,
    Cartan,
}

impl Sl2Generator {
    pub const ALL: [Sl2Generator; 3] = [Self::Lower, Self::Raise, Self::Cartan];

    /// Scalar by which this generator maps `z^p` at weight `2m = twice_m`,
    /// together with the exponent shift.
    ///
    /// `A-: -p z^(p-1)`, `A+: (p + 2m) z^(p+1)`, `E: (2p + 2m) z^p`.
    pub fn monomial_action(self, p: i64, twice_m: i64) -> (i64, i64) {
        match self {
            Self::Lower => (-p, -1),
            Self::Raise => (p + twice_m, 1),
            Self::Cartan => (2 * p + twice_m, 0),
        }
    }
}

impl fmt::Display for Sl2Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lower => "A-",
            Self::Raise => "A+",
            Self::Cartan => "E",
        })
    }
}

/// `f(z) (dz)^m`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section {
    pub weight: HalfWeight,
    pub coeff: LaurentPoly,
}

impl Section {
    pub fn new(weight: HalfWeight, coeff: LaurentPoly) -> Self {
        Self { weight, coeff }
    }

    /// Half-density `f(z) (dz)^(1/2)`.
    pub fn half(coeff: LaurentPoly) -> Self {
        Self::new(HalfWeight::HALF, coeff)
    }

    /// Symbol `x(z) (d/dz)^s`.
    pub fn symbol(s: u32, coeff: LaurentPoly) -> Self {
        Self::new(HalfWeight::symbol(s), coeff)
    }

    /// Basis half-density `b_p = z^p (dz)^(1/2)`.
    pub fn basis(p: i64) -> Self {
        Self::half(LaurentPoly::z(p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn expect_weight(&self, w: HalfWeight) -> Result<()> {
        if self.weight != w {
            return Err(Error::WeightMismatch {
                expected: w.twice(),
                found: self.weight.twice(),
            });
        }
        Ok(())
    }
}

/// Applies an sl(2) generator to a section at its own weight `m`:
/// `A- = -d/dz`, `A+ = z^2 d/dz + 2m z`, `E = 2z d/dz + 2m`.
pub fn act_sl2(x: Sl2Generator, u: &Section) -> Section {
    let twice_m = u.weight.twice();
    let mut out = LaurentPoly::zero();
    for (p, c) in u.coeff.terms() {
        let (scale, shift) = x.monomial_action(p, twice_m);
        if scale != 0 {
            out.add_term(p + shift, c * rat(scale));
        }
    }
    Section::new(u.weight, out)
}

/// Commutator `[X, Y] u = X(Y u) - Y(X u)`.
pub fn bracket(x: Sl2Generator, y: Sl2Generator, u: &Section) -> Section {
    let xy = act_sl2(x, &act_sl2(y, u));
    let yx = act_sl2(y, &act_sl2(x, u));
    Section::new(u.weight, &xy.coeff - &yx.coeff)
}

/// Constants `(c1, c2, c3)` with `[E, A+] = c1 A+`, `[E, A-] = c2 A-` and
/// `[A+, A-] = c3 E`, read off one monomial where every right-hand side is
/// nonzero. Returns `None` if no such monomial exists at this weight.
pub fn bracket_constants(weight: HalfWeight) -> Option<[Rational; 3]> {
    use Sl2Generator::*;
    let pairs = [
        (Cartan, Raise, Raise),
        (Cartan, Lower, Lower),
        (Raise, Lower, Cartan),
    ];
    let mut found: [Option<Rational>; 3] = [None, None, None];
    for p in -4..=8 {
        let u = Section::new(weight, LaurentPoly::z(p));
        for (slot, (x, y, z)) in pairs.iter().enumerate() {
            if found[slot].is_some() {
                continue;
            }
            let rhs = act_sl2(*z, &u);
            let lead = rhs.coeff.terms().next().map(|(e, c)| (e, c.clone()));
            if let Some((e, c)) = lead {
                let lhs = bracket(*x, *y, &u).coeff.coeff(e);
                found[slot] = Some(lhs / c);
            }
        }
    }
    let [a, b, c] = found;
    Some([a?, b?, c?])
}

fn require_half(u: &Section) -> Result<()> {
    if u.weight != HalfWeight::HALF {
        return Err(Error::ProjectionWeight {
            twice_m: u.weight.twice(),
        });
    }
    Ok(())
}

/// Cauchy–Szegő projection onto nonnegative modes.
pub fn proj_plus(u: &Section) -> Result<Section> {
    require_half(u)?;
    Ok(Section::half(u.coeff.filter_exponents(|e| e >= 0)))
}

/// Complementary projection onto modes `<= -1`.
pub fn proj_minus(u: &Section) -> Result<Section> {
    require_half(u)?;
    Ok(Section::half(u.coeff.filter_exponents(|e| e <= -1)))
}

/// Lie derivative of a half-density along `x(z) d/dz`:
/// `((1/2) x' f + x f') (dz)^(1/2)`.
pub fn lie_half(x: &Section, u: &Section) -> Result<Section> {
    x.expect_weight(HalfWeight::VECTOR_FIELD)?;
    u.expect_weight(HalfWeight::HALF)?;
    let half = frac(1, 2);
    let out = &(&x.coeff.derive(1) * &u.coeff).scale(&half) + &(&x.coeff * &u.coeff.derive(1));
    Ok(Section::half(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Sl2Generator::*;

    fn mono(w: HalfWeight, p: i64) -> Section {
        Section::new(w, LaurentPoly::z(p))
    }

    #[test]
    fn raising_vector_fields() {
        let r = act_sl2(Raise, &mono(HalfWeight::VECTOR_FIELD, 0));
        assert_eq!(r.coeff, LaurentPoly::monomial(1, rat(-2)));
        assert!(act_sl2(Raise, &mono(HalfWeight::VECTOR_FIELD, 2)).is_zero());
    }

    #[test]
    fn cartan_on_half_densities() {
        for i in 0..6 {
            let r = act_sl2(Cartan, &Section::basis(i));
            assert_eq!(r.coeff, LaurentPoly::monomial(i, rat(2 * i + 1)));
        }
    }

    #[test]
    fn raising_terminates_on_symbols() {
        for s in 1..6u32 {
            let w = HalfWeight::symbol(s);
            for p in 0..(3 * s as i64) {
                let r = act_sl2(Raise, &mono(w, p));
                assert_eq!(r.coeff, LaurentPoly::monomial(p + 1, rat(p - 2 * s as i64)));
            }
            assert!(act_sl2(Raise, &mono(w, 2 * s as i64)).is_zero());
        }
    }

    #[test]
    fn measured_bracket_constants() {
        for twice_m in -8..=8 {
            let c = bracket_constants(HalfWeight::from_twice(twice_m)).unwrap();
            assert_eq!(c, [rat(2), rat(-2), rat(1)], "twice_m = {twice_m}");
        }
    }

    #[test]
    fn brackets_on_every_monomial() {
        for twice_m in -8..=8 {
            let w = HalfWeight::from_twice(twice_m);
            for p in -6..=10 {
                let u = mono(w, p);
                let scaled = |g, c: i64| act_sl2(g, &u).coeff.scale(&rat(c));
                assert_eq!(bracket(Cartan, Raise, &u).coeff, scaled(Raise, 2));
                assert_eq!(bracket(Cartan, Lower, &u).coeff, scaled(Lower, -2));
                assert_eq!(bracket(Raise, Lower, &u).coeff, scaled(Cartan, 1));
            }
        }
    }

    #[test]
    fn projections() {
        let u = Section::half(LaurentPoly::from_ints([(2, 1), (-3, 1)]));
        assert_eq!(proj_plus(&u).unwrap().coeff, LaurentPoly::z(2));
        assert_eq!(proj_minus(&u).unwrap().coeff, LaurentPoly::z(-3));
        assert!(proj_plus(&Section::basis(-1)).unwrap().is_zero());
        let sum = &proj_plus(&u).unwrap().coeff + &proj_minus(&u).unwrap().coeff;
        assert_eq!(sum, u.coeff);
    }

    #[test]
    fn projection_rejects_other_weights() {
        let u = Section::new(HalfWeight::ONE, LaurentPoly::z(1));
        assert_eq!(proj_plus(&u), Err(Error::ProjectionWeight { twice_m: 2 }));
        assert!(proj_minus(&u).is_err());
    }

    #[test]
    fn lie_half_examples() {
        let vf = |p| Section::new(HalfWeight::VECTOR_FIELD, LaurentPoly::z(p));
        assert!(lie_half(&vf(2), &Section::basis(-1)).unwrap().is_zero());
        assert_eq!(
            lie_half(&vf(0), &Section::basis(1)).unwrap().coeff,
            LaurentPoly::one()
        );
        assert_eq!(
            lie_half(&vf(1), &Section::basis(1)).unwrap().coeff,
            LaurentPoly::monomial(1, frac(3, 2))
        );
        assert!(lie_half(&Section::basis(1), &Section::basis(1)).is_err());
        assert!(lie_half(&vf(1), &vf(1)).is_err());
    }

    #[test]
    fn weight_display() {
        assert_eq!(HalfWeight::HALF.to_string(), "1/2");
        assert_eq!(HalfWeight::symbol(3).to_string(), "-3");
        assert_eq!(HalfWeight::HALF.as_rational(), frac(1, 2));
    }

    proptest! {
        #[test]
        fn projection_idempotents(terms in proptest::collection::vec((-10i64..10, -9i64..9), 0..10)) {
            let u = Section::half(LaurentPoly::from_ints(terms));
            let pp = proj_plus(&u).unwrap();
            prop_assert_eq!(proj_plus(&pp).unwrap(), pp);
            prop_assert!(proj_plus(&proj_minus(&u).unwrap()).unwrap().is_zero());
        }
    }
}
