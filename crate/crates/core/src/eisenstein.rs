//! Exact arithmetic in the Eisenstein integers `Z[ω]`, `ω² + ω + 1 = 0`.
//!
//! Elements are stored in the basis `(1, ω)`; `ω²` is always rewritten as
//! `-1 - ω`, so equality is coordinatewise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `a + bω` of `Z[ω]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt {
    a: BigInt,
    b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    pub fn omega_sq() -> Self {
        Self::new(-1, -1)
    }

    /// The ramified prime `λ = 1 - ω` of norm 3.
    pub fn lambda() -> Self {
        Self::new(1, -1)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a² - ab + b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate `a + bω² = (a - b) - bω`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `N(r) < N(d)`.
    ///
    /// The quotient rounds each rational coordinate of `self / d` to the
    /// nearest integer, ties toward negative infinity.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let num = self * &d.conj();
        let q = Self::new(round_half_down(&num.a, &n), round_half_down(&num.b, &n));
        let r = self - &(&q * d);
        Ok((q, r))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divmod(d)?.1)
    }

    /// `Some(self / d)` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self * &d.conj();
        let (qa, ra) = num.a.div_rem(&n);
        if !ra.is_zero() {
            return None;
        }
        let (qb, rb) = num.b.div_rem(&n);
        if !rb.is_zero() {
            return None;
        }
        Some(Self::new(qa, qb))
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// `true` iff `m | self - other`.
    pub fn congruent_mod(&self, other: &Self, m: &Self) -> Result<bool> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(m.divides(&(self - other)))
    }

    /// `self ≡ 2 (mod 3)`, i.e. `a ≡ 2` and `b ≡ 0 (mod 3)`.
    pub fn is_primary(&self) -> bool {
        let three = BigInt::from(3);
        self.a.mod_floor(&three) == BigInt::from(2) && self.b.mod_floor(&three).is_zero()
    }

    pub fn is_coprime_to_three(&self) -> bool {
        !self.norm().mod_floor(&BigInt::from(3)).is_zero()
    }

    /// The six values `u·self`, in the order of [`Unit::ALL`].
    pub fn associates(&self) -> [Self; 6] {
        Unit::ALL.map(|u| u * self)
    }

    /// The unique associate congruent to 2 mod 3.
    pub fn primary_associate(&self) -> Result<Self> {
        if !self.is_coprime_to_three() {
            return Err(Error::NotCoprimeToThree(self.to_string()));
        }
        self.associates()
            .into_iter()
            .find(|c| c.is_primary())
            .ok_or_else(|| Error::NotCoprimeToThree(self.to_string()))
    }

    /// The unit `u` with `u·self` primary.
    pub fn primary_unit(&self) -> Result<Unit> {
        if !self.is_coprime_to_three() {
            return Err(Error::NotCoprimeToThree(self.to_string()));
        }
        Unit::ALL
            .into_iter()
            .find(|u| (*u * self).is_primary())
            .ok_or_else(|| Error::NotCoprimeToThree(self.to_string()))
    }

    /// Canonical greatest common divisor.
    ///
    /// A unit gcd is returned as `1`. Otherwise the gcd is written as
    /// `λ^k · c` with `c` coprime to 3, and `c` is replaced by its primary
    /// associate (a unit cofactor becomes `1`).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r;
        }
        Ok(canonical_divisor(x))
    }

    pub fn is_coprime(&self, other: &Self) -> Result<bool> {
        Ok(self.gcd(other)?.is_unit())
    }

    /// `self^k mod m` by square-and-multiply, reducing with [`Self::divmod`]
    /// after every product. The result satisfies `N(result) < N(m)`.
    pub fn pow_mod(&self, k: &BigUint, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Self::one().rem(m)?;
        let base = self.rem(m)?;
        for i in (0..k.bits()).rev() {
            acc = (&acc * &acc).rem(m)?;
            if k.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Number of times `p` divides `self` exactly (`self` must be nonzero).
    pub fn count_divisions(&self, p: &Self) -> (u32, Self) {
        let mut e = 0;
        let mut cur = self.clone();
        if p.is_unit() || p.is_zero() || cur.is_zero() {
            return (0, cur);
        }
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            e += 1;
        }
        (e, cur)
    }

    /// Small-coordinate view, when both coordinates fit an `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }
}

fn canonical_divisor(g: EisensteinInt) -> EisensteinInt {
    if g.is_unit() {
        return EisensteinInt::one();
    }
    let lambda = EisensteinInt::lambda();
    let (k, cofactor) = g.count_divisions(&lambda);
    let cofactor = if cofactor.is_unit() {
        EisensteinInt::one()
    } else {
        cofactor
            .primary_associate()
            .expect("cofactor after removing λ is coprime to 3")
    };
    &lambda.pow(k as u64) * &cofactor
}

/// Nearest integer to `p / n` (`n > 0`), ties toward negative infinity.
fn round_half_down(p: &BigInt, n: &BigInt) -> BigInt {
    let two_n: BigInt = n << 1;
    let num: BigInt = (p << 1) - n;
    num.div_ceil(&two_n)
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<EisensteinInt> for EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: EisensteinInt) -> EisensteinInt {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&EisensteinInt> for EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: &EisensteinInt) -> EisensteinInt {
                (&self).$method(rhs)
            }
        }
        impl $imp<EisensteinInt> for &EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: EisensteinInt) -> EisensteinInt {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&EisensteinInt> for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&EisensteinInt> for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&EisensteinInt> for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bb = &self.b * &rhs.b;
        EisensteinInt::new(
            &self.a * &rhs.a - &bb,
            &self.a * &rhs.b + &rhs.a * &self.b - bb,
        )
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt::new(-self.a, -self.b)
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt::new(-&self.a, -&self.b)
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

impl From<BigInt> for EisensteinInt {
    fn from(a: BigInt) -> Self {
        Self::from_int(a)
    }
}

impl From<(i64, i64)> for EisensteinInt {
    fn from((a, b): (i64, i64)) -> Self {
        Self::new(a, b)
    }
}

/// Renders as `a+b*w`, dropping zero parts and unit coefficients:
/// `2+3*w`, `-1-3*w`, `7`, `w`, `-4-w`.
impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coef = |f: &mut fmt::Formatter<'_>, b: &BigInt| -> fmt::Result {
            if b.abs().is_one() {
                write!(f, "w")
            } else {
                write!(f, "{}*w", b.abs())
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
            return coef(f, &self.b);
        }
        write!(f, "{}", self.a)?;
        write!(f, "{}", if self.b.is_negative() { "-" } else { "+" })?;
        coef(f, &self.b)
    }
}

impl FromStr for EisensteinInt {
    type Err = Error;

    /// Accepts sums of terms `n`, `n*w`, `nw`, `w`, `n*w^2`, `w^2`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty Eisenstein integer".into()));
        }
        let bad = || Error::Parse(format!("invalid Eisenstein integer `{s}`"));
        let bytes = text.as_bytes();
        let mut acc = EisensteinInt::zero();
        let mut i = 0;
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            } else if i != 0 {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef = if i > start {
                text[start..i].parse::<BigInt>().map_err(|_| bad())?
            } else {
                BigInt::one()
            };
            let mut term = EisensteinInt::from_int(coef.clone());
            let had_digits = i > start;
            if i < bytes.len() && bytes[i] == b'*' {
                if !had_digits {
                    return Err(bad());
                }
                i += 1;
                if i >= bytes.len() || bytes[i] != b'w' {
                    return Err(bad());
                }
            }
            if i < bytes.len() && bytes[i] == b'w' {
                i += 1;
                let mut power = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let ps = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    power = text[ps..i].parse::<u64>().map_err(|_| bad())?;
                }
                term = &EisensteinInt::from_int(coef) * &EisensteinInt::omega().pow(power);
            } else if !had_digits {
                return Err(bad());
            }
            acc = if negative { acc - term } else { acc + term };
        }
        Ok(acc)
    }
}

impl Serialize for EisensteinInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EisensteinInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The six units `±1, ±ω, ±ω²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    Omega,
    OmegaSq,
    NegOne,
    NegOmega,
    NegOmegaSq,
}

impl Unit {
    pub const ALL: [Unit; 6] = [
        Unit::One,
        Unit::Omega,
        Unit::OmegaSq,
        Unit::NegOne,
        Unit::NegOmega,
        Unit::NegOmegaSq,
    ];

    /// `(negated, k)` with `self = (±1)·ω^k`.
    pub fn sign_power(self) -> (bool, u8) {
        match self {
            Unit::One => (false, 0),
            Unit::Omega => (false, 1),
            Unit::OmegaSq => (false, 2),
            Unit::NegOne => (true, 0),
            Unit::NegOmega => (true, 1),
            Unit::NegOmegaSq => (true, 2),
        }
    }

    pub fn from_sign_power(negated: bool, k: u8) -> Unit {
        match (negated, k % 3) {
            (false, 0) => Unit::One,
            (false, 1) => Unit::Omega,
            (false, _) => Unit::OmegaSq,
            (true, 0) => Unit::NegOne,
            (true, 1) => Unit::NegOmega,
            (true, _) => Unit::NegOmegaSq,
        }
    }

    pub fn inv(self) -> Unit {
        let (neg, k) = self.sign_power();
        Unit::from_sign_power(neg, (3 - k) % 3)
    }

    pub fn to_eisenstein(self) -> EisensteinInt {
        let (neg, k) = self.sign_power();
        let v = EisensteinInt::omega().pow(k as u64);
        if neg {
            -v
        } else {
            v
        }
    }

    pub fn from_eisenstein(x: &EisensteinInt) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| &u.to_eisenstein() == x)
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        let (n1, k1) = self.sign_power();
        let (n2, k2) = rhs.sign_power();
        Unit::from_sign_power(n1 ^ n2, k1 + k2)
    }
}

impl Mul<&EisensteinInt> for Unit {
    type Output = EisensteinInt;
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        &self.to_eisenstein() * rhs
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::One => "1",
            Unit::Omega => "w",
            Unit::OmegaSq => "w^2",
            Unit::NegOne => "-1",
            Unit::NegOmega => "-w",
            Unit::NegOmegaSq => "-w^2",
        };
        f.write_str(s)
    }
}

impl FromStr for Unit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let x: EisensteinInt = s.parse()?;
        Unit::from_eisenstein(&x).ok_or_else(|| Error::Parse(format!("`{s}` is not a unit")))
    }
}

impl Serialize for Unit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Values of the cubic residue character: `0`, `1`, `ω`, `ω²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharValue {
    Zero,
    One,
    Omega,
    OmegaSq,
}

impl CharValue {
    /// `ω^k`.
    pub fn omega_pow(k: u64) -> CharValue {
        match k % 3 {
            0 => CharValue::One,
            1 => CharValue::Omega,
            _ => CharValue::OmegaSq,
        }
    }

    /// `Some(k)` with `self = ω^k`, `None` for zero.
    pub fn exponent(self) -> Option<u8> {
        match self {
            CharValue::Zero => None,
            CharValue::One => Some(0),
            CharValue::Omega => Some(1),
            CharValue::OmegaSq => Some(2),
        }
    }

    pub fn pow(self, e: u64) -> CharValue {
        match self.exponent() {
            None if e == 0 => CharValue::One,
            None => CharValue::Zero,
            Some(k) => CharValue::omega_pow((k as u64 * (e % 3)) % 3),
        }
    }

    pub fn to_eisenstein(self) -> EisensteinInt {
        match self.exponent() {
            None => EisensteinInt::zero(),
            Some(k) => EisensteinInt::omega().pow(k as u64),
        }
    }

    pub fn is_one(self) -> bool {
        self == CharValue::One
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for CharValue {
    type Output = CharValue;
    fn mul(self, rhs: CharValue) -> CharValue {
        match (self.exponent(), rhs.exponent()) {
            (Some(x), Some(y)) => CharValue::omega_pow((x + y) as u64),
            _ => CharValue::Zero,
        }
    }
}

impl std::iter::Product for CharValue {
    fn product<I: Iterator<Item = CharValue>>(iter: I) -> CharValue {
        iter.fold(CharValue::One, |a, b| a * b)
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharValue::Zero => "0",
            CharValue::One => "1",
            CharValue::Omega => "w",
            CharValue::OmegaSq => "w^2",
        })
    }
}

impl FromStr for CharValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(CharValue::Zero),
            "1" => Ok(CharValue::One),
            "w" => Ok(CharValue::Omega),
            "w^2" => Ok(CharValue::OmegaSq),
            other => Err(Error::Parse(format!("`{other}` is not a character value"))),
        }
    }
}

impl Serialize for CharValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(e(1, 0) + e(-1, 0), EisensteinInt::zero());
        assert_eq!(e(2, 3) + e(-1, -3), EisensteinInt::one());
        let z = 10;
        assert_eq!(e(1 + z, 2 * z) + e(1 - z, -2 * z), e(2, 0));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(e(2, 3) * e(-1, -3), e(7, 0));
        let w = EisensteinInt::omega();
        assert_eq!(&(&w * &w) * &w, EisensteinInt::one());
        assert_eq!(e(1, -1) * e(1, -1), e(0, -3));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(e(2, 3).conj(), e(-1, -3));
        assert_eq!(e(5, 8).conj().conj(), e(5, 8));
        assert_eq!(e(7, 0).conj(), e(7, 0));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(2, 3).norm(), BigInt::from(7));
        assert_eq!(EisensteinInt::zero().norm(), BigInt::zero());
        assert_eq!(e(11, 20).norm(), BigInt::from(301));
        assert_eq!(e(-1, -3).norm(), BigInt::from(7));
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(e(7, 0).divmod(&e(2, 3)).unwrap(), (e(-1, -3), e(0, 0)));
        assert_eq!(e(3, 4).divmod(&e(1, 0)).unwrap(), (e(3, 4), e(0, 0)));
        // exact quotient (1/2, 1): the tie on the first coordinate rounds down
        assert_eq!(e(1, 2).divmod(&e(2, 0)).unwrap(), (e(0, 1), e(1, 0)));
        assert_eq!(e(1, 2).divmod(&e(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rounding_ties_go_down() {
        assert_eq!(
            round_half_down(&BigInt::from(1), &BigInt::from(2)),
            BigInt::zero()
        );
        assert_eq!(
            round_half_down(&BigInt::from(-1), &BigInt::from(2)),
            BigInt::from(-1)
        );
        assert_eq!(
            round_half_down(&BigInt::from(3), &BigInt::from(2)),
            BigInt::from(1)
        );
        assert_eq!(
            round_half_down(&BigInt::from(5), &BigInt::from(3)),
            BigInt::from(2)
        );
        assert_eq!(
            round_half_down(&BigInt::from(-5), &BigInt::from(3)),
            BigInt::from(-2)
        );
    }

    #[test]
    fn congruences_modulo_seven_primes() {
        assert!(EisensteinInt::omega()
            .congruent_mod(&e(4, 0), &e(2, 3))
            .unwrap());
        assert!(EisensteinInt::omega()
            .congruent_mod(&e(2, 0), &e(-1, -3))
            .unwrap());
        assert!(e(5, 8).congruent_mod(&e(5, 8), &e(3, 0)).unwrap());
        assert_eq!(
            e(5, 8).congruent_mod(&e(5, 8), &EisensteinInt::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn primary_examples() {
        assert!(e(2, 3).is_primary());
        assert!(e(-1, -3).is_primary());
        assert!(e(2, 0).is_primary());
        assert!(!EisensteinInt::omega().is_primary());
        assert_eq!(e(2, 3).primary_associate().unwrap(), e(2, 3));
        assert_eq!(e(3, 4).primary_associate().unwrap(), e(-1, 3));
        assert!(matches!(
            e(1, -1).primary_associate(),
            Err(Error::NotCoprimeToThree(_))
        ));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(e(3, 4).gcd(&e(-1, -4)).unwrap(), EisensteinInt::one());
        assert_eq!(e(2, 3).gcd(&EisensteinInt::zero()).unwrap(), e(2, 3));
        assert_eq!(e(2, 3).gcd(&e(-1, -3)).unwrap(), EisensteinInt::one());
        assert_eq!(
            EisensteinInt::zero().gcd(&EisensteinInt::zero()),
            Err(Error::BothZero)
        );
        // 3 = -ω²λ², gcd(9, 3λ) = λ³
        assert_eq!(
            e(9, 0).gcd(&(&e(3, 0) * &EisensteinInt::lambda())).unwrap(),
            EisensteinInt::lambda().pow(3)
        );
        // ramified part times primary cofactor
        let g = &EisensteinInt::lambda() * &e(2, 3);
        assert_eq!(
            (&g * &e(5, 0)).gcd(&(&g * &e(11, 0))).unwrap(),
            &EisensteinInt::lambda() * &e(2, 3)
        );
    }

    #[test]
    fn pow_mod_examples() {
        let rho_bar = e(-1, -3);
        let r = e(2, 0).pow_mod(&BigUint::from(2u32), &rho_bar).unwrap();
        assert!(r.congruent_mod(&e(4, 0), &rho_bar).unwrap());
        assert!(r.norm() < rho_bar.norm());

        let r = e(5, 8).pow_mod(&BigUint::zero(), &e(3, 0)).unwrap();
        assert_eq!(r, e(1, 0));

        let p = e(-1, 6);
        let r = e(28, 0).pow_mod(&BigUint::from(14u32), &p).unwrap();
        assert!(r.congruent_mod(&EisensteinInt::omega_sq(), &p).unwrap());
    }

    #[test]
    fn units_form_a_group() {
        for u in Unit::ALL {
            assert!(u.to_eisenstein().is_unit());
            assert_eq!(u * u.inv(), Unit::One);
            assert_eq!(Unit::from_eisenstein(&u.to_eisenstein()), Some(u));
            for v in Unit::ALL {
                assert_eq!(
                    (u * v).to_eisenstein(),
                    &u.to_eisenstein() * &v.to_eisenstein()
                );
            }
        }
    }

    #[test]
    fn char_value_table() {
        use CharValue::*;
        for v in [Zero, One, Omega, OmegaSq] {
            assert_eq!(Zero * v, Zero);
            assert_eq!(v * Zero, Zero);
        }
        assert_eq!(Omega * Omega, OmegaSq);
        assert_eq!(Omega * OmegaSq, One);
        assert_eq!(OmegaSq * OmegaSq, Omega);
        for v in [One, Omega, OmegaSq] {
            assert_eq!(v.pow(3), One);
            assert_eq!(v * v * v, One);
        }
        assert_eq!(OmegaSq.pow(2), Omega);
    }

    #[test]
    fn text_rendering() {
        assert_eq!(e(2, 3).to_string(), "2+3*w");
        assert_eq!(e(-1, -3).to_string(), "-1-3*w");
        assert_eq!(e(7, 0).to_string(), "7");
        assert_eq!(e(0, -1).to_string(), "-w");
        assert_eq!(e(-4, -1).to_string(), "-4-w");
        for s in ["2+3*w", "-1-3*w", "7", "w", "-w", "0", "-4-w", "3*w"] {
            assert_eq!(s.parse::<EisensteinInt>().unwrap().to_string(), s);
        }
        assert_eq!("w^2".parse::<EisensteinInt>().unwrap(), e(-1, -1));
        assert_eq!("2 + 3w".parse::<EisensteinInt>().unwrap(), e(2, 3));
        assert!("2+*w".parse::<EisensteinInt>().is_err());
        assert!("".parse::<EisensteinInt>().is_err());
        assert!("x".parse::<EisensteinInt>().is_err());
    }
}
