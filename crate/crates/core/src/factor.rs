//! Prime factorization in `Z[ω]`.
//!
//! Factorization goes through the norm: factor `N(x)` over `Z`, then peel
//! the Eisenstein primes above each rational prime off `x` by exact
//! division. `λ = 1 - ω` is kept apart from the primary primes.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::eisenstein::{EisensteinInt, Unit};
use crate::error::{Error, Result};
use crate::rational::{self, FactorBudget};

/// How a rational prime decomposes in `Z[ω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSplitType {
    /// `3 = -ω²λ²`.
    Ramified,
    /// `p ≡ 2 (mod 3)` stays prime.
    Inert,
    /// `p ≡ 1 (mod 3)` is `π·π̄`; holds the primary `π` from [`split_prime`].
    Split(EisensteinInt),
}

pub fn classify_rational_prime(p: &BigInt) -> Result<PrimeSplitType> {
    if !rational::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    match p.mod_floor(&BigInt::from(3)).to_u8() {
        Some(0) => Ok(PrimeSplitType::Ramified),
        Some(2) => Ok(PrimeSplitType::Inert),
        _ => Ok(PrimeSplitType::Split(split_prime(p)?)),
    }
}

/// A primary prime of norm `p` for a rational prime `p ≡ 1 (mod 3)`.
///
/// Of the two conjugate primary primes above `p`, returns the one whose
/// coordinates `(a, b)` are lexicographically smaller.
pub fn split_prime(p: &BigInt) -> Result<EisensteinInt> {
    if !p.mod_floor(&BigInt::from(3)).is_one() {
        return Err(Error::WrongResidueClass(p.to_string()));
    }
    let pu = p
        .to_biguint()
        .ok_or_else(|| Error::NotPrime(p.to_string()))?;
    if !rational::is_probable_prime(&pu) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let t = rational::cube_root_of_unity(&pu);
    // N(ω - t) = t² + t + 1 ≡ 0 (mod p) and p ∤ ω - t, so the gcd has norm p
    let pe = EisensteinInt::from_int(p.clone());
    let g = pe.gcd(&EisensteinInt::new(-BigInt::from(t), 1))?;
    debug_assert_eq!(&g.norm(), p);
    let pi = g.primary_associate()?;
    let other = pi.conj();
    Ok(std::cmp::min(pi, other))
}

/// True for Eisenstein primes: norm a rational prime, or an associate of a
/// rational prime `q ≡ 2 (mod 3)`.
pub fn is_eisenstein_prime(x: &EisensteinInt) -> bool {
    let n = x.norm();
    if n.is_zero() || n.is_one() {
        return false;
    }
    if rational::is_prime(&n) {
        return true;
    }
    let q = n.sqrt();
    if &q * &q != n || !rational::is_prime(&q) {
        return false;
    }
    if q.mod_floor(&BigInt::from(3)) != BigInt::from(2) {
        return false;
    }
    x.div_exact(&EisensteinInt::from_int(q))
        .map(|u| u.is_unit())
        .unwrap_or(false)
}

/// `unit · λ^lambda_exp · Π prime^exp`, primes primary and sorted by
/// `(norm, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EisensteinFactorization {
    pub unit: Unit,
    pub lambda_exp: u32,
    pub factors: Vec<(EisensteinInt, u32)>,
}

impl EisensteinFactorization {
    pub fn recompose(&self) -> EisensteinInt {
        let mut acc = self.unit.to_eisenstein();
        acc = &acc * &EisensteinInt::lambda().pow(self.lambda_exp as u64);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e as u64);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "unit": self.unit.to_string(),
            "lambda_exp": self.lambda_exp,
            "factors": self
                .factors
                .iter()
                .map(|(p, e)| serde_json::json!([p.to_string(), e]))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn prime_order(x: &EisensteinInt, y: &EisensteinInt) -> Ordering {
    x.norm()
        .cmp(&y.norm())
        .then_with(|| x.a().cmp(y.a()))
        .then_with(|| x.b().cmp(y.b()))
}

pub fn factor(x: &EisensteinInt) -> Result<EisensteinFactorization> {
    factor_with(x, &FactorBudget::default())
}

pub fn factor_with(x: &EisensteinInt, budget: &FactorBudget) -> Result<EisensteinFactorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let norm = x.norm();
    let rational_factors = rational::factor_biguint(norm.magnitude(), budget)?;

    let mut rest = x.clone();
    let mut lambda_exp = 0;
    let mut factors: Vec<(EisensteinInt, u32)> = Vec::new();
    for (p, e) in rational_factors {
        let p = BigInt::from(p);
        match p.mod_floor(&BigInt::from(3)).to_u8() {
            Some(0) => {
                let (k, cof) = rest.count_divisions(&EisensteinInt::lambda());
                debug_assert_eq!(k, e);
                lambda_exp = k;
                rest = cof;
            }
            Some(2) => {
                let q = EisensteinInt::from_int(p);
                let (k, cof) = rest.count_divisions(&q);
                debug_assert_eq!(2 * k, e);
                factors.push((q, k));
                rest = cof;
            }
            _ => {
                let pi = split_prime(&p)?;
                for prime in [pi.clone(), pi.conj()] {
                    let (k, cof) = rest.count_divisions(&prime);
                    if k > 0 {
                        factors.push((prime, k));
                    }
                    rest = cof;
                }
            }
        }
    }
    let unit = Unit::from_eisenstein(&rest).ok_or_else(|| {
        Error::PreconditionViolated(format!("cofactor {rest} of {x} is not a unit"))
    })?;
    factors.sort_by(|(p, _), (q, _)| prime_order(p, q));
    Ok(EisensteinFactorization {
        unit,
        lambda_exp,
        factors,
    })
}

/// Exponent of the associate class of the prime `pi` in `x`.
pub fn valuation(x: &EisensteinInt, pi: &EisensteinInt) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_eisenstein_prime(pi) {
        return Err(Error::NotPrime(pi.to_string()));
    }
    Ok(x.count_divisions(pi).0)
}

/// Valuation of a rational integer at a rational prime.
pub fn rational_valuation(n: &BigInt, p: &BigUint) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let p = BigInt::from(p.clone());
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn classifies_small_primes() {
        assert!(matches!(
            classify_rational_prime(&BigInt::from(7)).unwrap(),
            PrimeSplitType::Split(pi) if pi.norm() == BigInt::from(7) && pi.is_primary()
        ));
        assert_eq!(
            classify_rational_prime(&BigInt::from(2)).unwrap(),
            PrimeSplitType::Inert
        );
        assert_eq!(
            classify_rational_prime(&BigInt::from(3)).unwrap(),
            PrimeSplitType::Ramified
        );
        assert!(matches!(
            classify_rational_prime(&BigInt::from(21)),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn split_prime_examples() {
        assert_eq!(split_prime(&BigInt::from(7)).unwrap(), e(-1, -3));
        assert_eq!(split_prime(&BigInt::from(13)).unwrap(), e(-4, -3));
        assert_eq!(
            split_prime(&BigInt::from(43)).unwrap().norm(),
            BigInt::from(43)
        );
        assert!(matches!(
            split_prime(&BigInt::from(11)),
            Err(Error::WrongResidueClass(_))
        ));
        assert!(matches!(
            split_prime(&BigInt::from(91)),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&e(7, 0)).unwrap();
        assert_eq!(f.unit, Unit::One);
        assert_eq!(f.lambda_exp, 0);
        assert_eq!(f.factors, vec![(e(-1, -3), 1), (e(2, 3), 1)]);

        let f = factor(&EisensteinInt::omega()).unwrap();
        assert_eq!(f.unit, Unit::Omega);
        assert!(f.factors.is_empty());

        let f = factor(&e(3, 0)).unwrap();
        assert_eq!(f.unit, Unit::NegOmegaSq);
        assert_eq!(f.lambda_exp, 2);
        assert!(f.factors.is_empty());
        assert_eq!(f.recompose(), e(3, 0));

        assert_eq!(factor(&EisensteinInt::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn primary_values_have_sign_units() {
        for x in [e(-7, 0), e(2, 3), e(-1, 6), e(-28, 0)] {
            if x.is_primary() {
                let f = factor(&x).unwrap();
                assert_eq!(f.lambda_exp, 0);
                assert!(matches!(f.unit, Unit::One | Unit::NegOne), "{x}: {f:?}");
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&e(11, 20), &e(2, 3)).unwrap(), 1);
        assert_eq!(valuation(&e(11, 20), &e(-1, -3)).unwrap(), 0);
        assert_eq!(valuation(&e(49, 0), &e(2, 3)).unwrap(), 2);
        assert_eq!(valuation(&e(0, 0), &e(2, 3)), Err(Error::ZeroInput));
        assert!(matches!(
            valuation(&e(49, 0), &e(7, 0)),
            Err(Error::NotPrime(_))
        ));
        // associates count as the same prime
        assert_eq!(
            valuation(&e(49, 0), &(Unit::NegOmega * &e(2, 3))).unwrap(),
            2
        );
    }

    #[test]
    fn prime_recognition() {
        assert!(is_eisenstein_prime(&e(2, 0)));
        assert!(is_eisenstein_prime(&e(0, 2)));
        assert!(is_eisenstein_prime(&EisensteinInt::lambda()));
        assert!(is_eisenstein_prime(&e(2, 3)));
        assert!(!is_eisenstein_prime(&e(7, 0)));
        assert!(!is_eisenstein_prime(&e(3, 0)));
        assert!(!is_eisenstein_prime(&EisensteinInt::one()));
        assert!(!is_eisenstein_prime(&e(4, 0)));
    }

    #[test]
    fn json_rendering() {
        let j = factor(&e(7, 0)).unwrap().to_json();
        assert_eq!(
            j.to_string(),
            r#"{"unit":"1","lambda_exp":0,"factors":[["-1-3*w",1],["2+3*w",1]]}"#
        );
    }
}
