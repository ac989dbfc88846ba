//! Exact scalars: rationals and Laurent polynomials in the formal scale `h`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders `num/den` with an explicit denominator, e.g. `3/1`, `-1/2`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// h-adic valuation. `Infinite` is the valuation of zero and compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i32),
    Infinite,
}

impl Valuation {
    pub fn is_at_least(self, bound: i32) -> bool {
        self >= Valuation::Finite(bound)
    }

    pub fn finite(self) -> Option<i32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i32(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Valuation::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Valuation::Infinite),
            Raw::Str(s) => Err(de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// Laurent polynomial in `h` with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentH {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentH {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    /// `c * h^exp`
    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn h_power(exp: i32) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the rational value when the polynomial has no h-dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        if entry.denom().is_one() && c.denom().is_one() {
            // integer fast path, skips the gcd
            *entry = Rational::new_raw(entry.numer() + c.numer(), BigInt::one());
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(e) => Valuation::Finite(*e),
            None => Valuation::Infinite,
        }
    }

    /// Exact value at `h = 2^-level`.
    pub fn evaluate_at_scale(&self, level: u32) -> Rational {
        let two = BigInt::from(2);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let shift = i64::from(*e) * i64::from(level);
            let p = two.pow(shift.unsigned_abs() as u32);
            let factor = if shift >= 0 {
                Rational::new(BigInt::one(), p)
            } else {
                Rational::from_integer(p)
            };
            acc += c * factor;
        }
        acc
    }

    /// `x / h^k`, i.e. every exponent shifted by `-k`.
    pub fn divide_by_h_power(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e - k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, mul_rational(x, c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest absolute coefficient, useful for quick magnitude checks in tests.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for LaurentH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "h")?,
                (1, false) => write!(f, "{mag}h")?,
                (e, true) => write!(f, "h^{e}")?,
                (e, false) => write!(f, "{mag}h^{e}")?,
            }
        }
        Ok(())
    }
}

fn mul_rational(a: &Rational, b: &Rational) -> Rational {
    if a.denom().is_one() && b.denom().is_one() {
        Rational::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

impl From<Rational> for LaurentH {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentH {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl<'a> Add<&'a LaurentH> for &'a LaurentH {
    type Output = LaurentH;
    fn add(self, rhs: &'a LaurentH) -> LaurentH {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentH {
    type Output = LaurentH;
    fn add(mut self, rhs: LaurentH) -> LaurentH {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentH> for LaurentH {
    fn add_assign(&mut self, rhs: &LaurentH) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentH {
    fn add_assign(&mut self, rhs: LaurentH) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentH> for LaurentH {
    fn sub_assign(&mut self, rhs: &LaurentH) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentH> for &'a LaurentH {
    type Output = LaurentH;
    fn sub(self, rhs: &'a LaurentH) -> LaurentH {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentH {
    type Output = LaurentH;
    fn sub(mut self, rhs: LaurentH) -> LaurentH {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentH {
    type Output = LaurentH;
    fn neg(self) -> LaurentH {
        LaurentH {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentH {
    type Output = LaurentH;
    fn neg(self) -> LaurentH {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentH> for &'a LaurentH {
    type Output = LaurentH;
    fn mul(self, rhs: &'a LaurentH) -> LaurentH {
        let mut out = LaurentH::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, mul_rational(ca, cb));
            }
        }
        out
    }
}

impl Mul for LaurentH {
    type Output = LaurentH;
    fn mul(self, rhs: LaurentH) -> LaurentH {
        &self * &rhs
    }
}

impl Zero for LaurentH {
    fn zero() -> Self {
        LaurentH::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentH::is_zero(self)
    }
}

impl One for LaurentH {
    fn one() -> Self {
        LaurentH::one()
    }
}

impl Serialize for LaurentH {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(i32, String)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, format_rational(c)))
            .collect();
        let mut st = s.serialize_struct("LaurentH", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentH {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            terms: Vec<(i32, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let mut out = LaurentH::zero();
        for (e, c) in raw.terms {
            let c = parse_rational(&c).map_err(de::Error::custom)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lh(terms: &[(i32, i64)]) -> LaurentH {
        LaurentH::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(LaurentH::zero().valuation(), Valuation::Infinite);
        assert_eq!(lh(&[(2, 3), (3, -1)]).valuation(), Valuation::Finite(2));
        let x = &LaurentH::h_power(-1) * &lh(&[(2, 1), (3, 1)]);
        assert_eq!(x.valuation(), Valuation::Finite(1));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(LaurentH::h_power(1).evaluate_at_scale(1), rat(1, 2));
        assert_eq!(LaurentH::h_power(-1).evaluate_at_scale(2), int(4));
        assert_eq!(lh(&[(0, 1), (2, 2)]).evaluate_at_scale(1), rat(3, 2));
    }

    #[test]
    fn divide_examples() {
        assert_eq!(lh(&[(3, 1)]).divide_by_h_power(2), lh(&[(1, 1)]));
        assert_eq!(LaurentH::zero().divide_by_h_power(5), LaurentH::zero());
        assert_eq!(lh(&[(1, 2), (2, -1)]).divide_by_h_power(1), lh(&[(0, 2), (1, -1)]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = lh(&[(1, 2), (4, 1)]);
        let y = lh(&[(1, -2)]);
        let s = &x + &y;
        assert_eq!(s, lh(&[(4, 1)]));
        assert_eq!((&x - &x).valuation(), Valuation::Infinite);
    }

    #[test]
    fn json_roundtrip_and_format() {
        let x = LaurentH::from_terms([(-1, rat(1, 2)), (3, int(-4))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"terms":[[-1,"1/2"],[3,"-4/1"]]}"#);
        let back: LaurentH = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let bare: LaurentH = serde_json::from_str(r#"{"terms":[[0,"7"]]}"#).unwrap();
        assert_eq!(bare, LaurentH::from_int(7));
        assert!(serde_json::from_str::<LaurentH>(r#"{"terms":[[0,"1/0"]]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(lh(&[(2, 3), (3, -1)]).to_string(), "3h^2 - h^3");
        assert_eq!(LaurentH::zero().to_string(), "0");
    }

    prop_compose! {
        fn arb_laurent()(terms in prop::collection::vec((-3i32..4, -5i64..6, 1i64..4), 0..5)) -> LaurentH {
            LaurentH::from_terms(terms.into_iter().map(|(e, n, d)| (e, rat(n, d))))
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn valuation_laws(a in arb_laurent(), b in arb_laurent()) {
            let (va, vb) = (a.valuation(), b.valuation());
            let prod = (&a * &b).valuation();
            match (va, vb) {
                (Valuation::Finite(x), Valuation::Finite(y)) => prop_assert_eq!(prod, Valuation::Finite(x + y)),
                _ => prop_assert_eq!(prod, Valuation::Infinite),
            }
            let sum = (&a + &b).valuation();
            prop_assert!(sum >= va.min(vb));
            if va != vb {
                prop_assert_eq!(sum, va.min(vb));
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_laurent(), b in arb_laurent(), level in 0u32..6) {
            prop_assert_eq!((&a * &b).evaluate_at_scale(level), a.evaluate_at_scale(level) * b.evaluate_at_scale(level));
            prop_assert_eq!((&a + &b).evaluate_at_scale(level), a.evaluate_at_scale(level) + b.evaluate_at_scale(level));
        }

        #[test]
        fn divide_then_multiply(a in arb_laurent(), k in -4i32..5) {
            prop_assert_eq!(&a.divide_by_h_power(k) * &LaurentH::h_power(k), a);
        }
    }
}
