//! Exact half-integer exponents and formal character labels.
//!
//! Every exponent of `nu = |det|` that shows up in the theory lives in
//! `(1/2)Z`, so a [`HalfInt`] stores twice its value. Character labels are
//! elements of a free abelian group on named generators; only triviality of
//! a label ever matters downstream.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse;

/// A number in `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// `n / 2`.
    pub const fn half(n: i64) -> Self {
        HalfInt { twice: n }
    }

    /// The integer `n`.
    pub const fn whole(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// True when `self - other` is an integer, i.e. both sit on the same
    /// lattice `Z` or `1/2 + Z`.
    pub fn same_lattice(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// Multiply by a half-integer, failing when the result leaves `(1/2)Z`.
    pub fn checked_mul(self, other: HalfInt) -> Option<HalfInt> {
        let p = self.twice * other.twice;
        (p % 2 == 0).then_some(HalfInt { twice: p / 2 })
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_halfint(s)
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HalfInt {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::whole(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + o.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - o.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt { twice: self.twice * k }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.twice += o.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, o: HalfInt) {
        self.twice -= o.twice;
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, |a, b| a + b)
    }
}

pub fn half(n: i64) -> HalfInt {
    HalfInt::half(n)
}

pub fn whole(n: i64) -> HalfInt {
    HalfInt::whole(n)
}

/// Element of the free abelian group on named generators. The empty map is
/// the identity label `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CharLabel {
    exponents: BTreeMap<String, i64>,
}

impl CharLabel {
    pub fn trivial() -> Self {
        CharLabel::default()
    }

    /// A single generator, e.g. `chi`.
    pub fn generator(name: &str) -> Self {
        let mut exponents = BTreeMap::new();
        exponents.insert(name.to_string(), 1);
        CharLabel { exponents }
    }

    pub fn from_exponents<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut out = CharLabel::default();
        for (name, e) in items {
            *out.exponents.entry(name.into()).or_insert(0) += e;
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.exponents.retain(|_, e| *e != 0);
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<String, i64> {
        &self.exponents
    }

    pub fn mul(&self, other: &CharLabel) -> CharLabel {
        let mut out = self.clone();
        for (g, e) in &other.exponents {
            *out.exponents.entry(g.clone()).or_insert(0) += e;
        }
        out.prune();
        out
    }

    pub fn inv(&self) -> CharLabel {
        CharLabel {
            exponents: self.exponents.iter().map(|(g, e)| (g.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> CharLabel {
        let mut out = CharLabel {
            exponents: self.exponents.iter().map(|(g, e)| (g.clone(), e * k)).collect(),
        };
        out.prune();
        out
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CharLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let c: FormalCharacter = s.parse()?;
        if c.exp != HalfInt::ZERO {
            return Err(Error::parse(0, "a label may not carry a power of nu"));
        }
        Ok(c.label)
    }
}

impl From<CharLabel> for String {
    fn from(l: CharLabel) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for CharLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// `label * nu^exp`, a character of `F^x` (or of `G_r` through `det`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FormalCharacter {
    pub label: CharLabel,
    pub exp: HalfInt,
}

impl FormalCharacter {
    pub fn new(label: CharLabel, exp: HalfInt) -> Self {
        FormalCharacter { label, exp }
    }

    pub fn trivial() -> Self {
        FormalCharacter::default()
    }

    /// `nu^exp` with trivial label.
    pub fn nu(exp: HalfInt) -> Self {
        FormalCharacter {
            label: CharLabel::trivial(),
            exp,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.label.is_trivial() && self.exp == HalfInt::ZERO
    }

    pub fn mul(&self, other: &FormalCharacter) -> FormalCharacter {
        FormalCharacter {
            label: self.label.mul(&other.label),
            exp: self.exp + other.exp,
        }
    }

    pub fn inv(&self) -> FormalCharacter {
        FormalCharacter {
            label: self.label.inv(),
            exp: -self.exp,
        }
    }

    pub fn pow(&self, k: i64) -> FormalCharacter {
        FormalCharacter {
            label: self.label.pow(k),
            exp: self.exp * k,
        }
    }

    /// Multiply by `nu^t`.
    pub fn shift(&self, t: HalfInt) -> FormalCharacter {
        FormalCharacter {
            label: self.label.clone(),
            exp: self.exp + t,
        }
    }
}

pub fn char_mul(a: &FormalCharacter, b: &FormalCharacter) -> FormalCharacter {
    a.mul(b)
}

pub(crate) fn fmt_nu_power(f: &mut fmt::Formatter<'_>, exp: HalfInt) -> fmt::Result {
    if exp == HalfInt::ONE {
        write!(f, "nu")
    } else if exp.is_integer() {
        write!(f, "nu^{exp}")
    } else {
        write!(f, "nu^{{{exp}}}")
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.label.is_trivial(), self.exp == HalfInt::ZERO) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", self.label),
            (true, false) => fmt_nu_power(f, self.exp),
            (false, false) => {
                write!(f, "{}*", self.label)?;
                fmt_nu_power(f, self.exp)
            }
        }
    }
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FormalCharacter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_character(s)
    }
}

impl From<FormalCharacter> for String {
    fn from(c: FormalCharacter) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for FormalCharacter {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfint_basics() {
        assert_eq!(half(3).to_string(), "3/2");
        assert_eq!(whole(2).to_string(), "2");
        assert_eq!(half(3) + half(-3), HalfInt::ZERO);
        assert_eq!(half(-1).to_string(), "-1/2");
        assert!(whole(-4).is_integer());
        assert!(!half(5).is_integer());
        assert_eq!(half(4), whole(2));
    }

    #[test]
    fn halfint_parse_print() {
        for t in -20..=20 {
            let h = HalfInt::from_twice(t);
            assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        }
        assert_eq!("6/4".parse::<HalfInt>().unwrap(), half(3));
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn labels_cancel() {
        let chi = CharLabel::generator("chi");
        let a = FormalCharacter::new(chi.clone(), half(1));
        let b = FormalCharacter::new(chi.inv(), half(1));
        assert_eq!(a.mul(&b), FormalCharacter::nu(whole(1)));
        let c = FormalCharacter::nu(half(3)).mul(&FormalCharacter::nu(half(-3)));
        assert!(c.is_trivial());
    }

    #[test]
    fn shalika_product_for_nu_minus_half_alpha() {
        // chi * chi nu^alpha with chi = nu^{-alpha/2} is trivial
        for alpha in 1..=6 {
            let chi = FormalCharacter::nu(half(-alpha));
            let other = chi.shift(whole(alpha));
            assert!(chi.mul(&other).is_trivial());
        }
    }

    #[test]
    fn character_display() {
        let chi = CharLabel::generator("chi");
        assert_eq!(FormalCharacter::new(chi.clone(), half(1)).to_string(), "chi*nu^{1/2}");
        assert_eq!(FormalCharacter::nu(whole(1)).to_string(), "nu");
        assert_eq!(FormalCharacter::nu(whole(-1)).to_string(), "nu^-1");
        assert_eq!(FormalCharacter::trivial().to_string(), "1");
        assert_eq!(FormalCharacter::new(chi.pow(-2), HalfInt::ZERO).to_string(), "chi^-2");
    }
}
