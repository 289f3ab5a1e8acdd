//! The cubic residue character `(α/π)₃` and its extension to primary
//! moduli, a brute-force residue oracle, and reciprocity checkers.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::eisenstein::{CharValue, EisensteinInt};
use crate::error::{Error, Result};
use crate::factor::{self, is_eisenstein_prime};
use crate::rational::FactorBudget;

/// Default norm bound for [`is_cubic_residue_oracle`].
pub const DEFAULT_ORACLE_BOUND: u64 = 20_000;

/// `(α/π)₃` for a prime `π` of norm other than 3, by Euler's criterion
/// `α^((N(π)-1)/3) ≡ (α/π)₃ (mod π)`.
///
/// Primality of `π` is not tested up front. A power that matches none of
/// `1, ω, ω²` modulo `π` is reported as [`Error::NotPrime`].
pub fn char_prime(alpha: &EisensteinInt, pi: &EisensteinInt) -> Result<CharValue> {
    let n = pi.norm();
    if n == BigInt::from(3) {
        return Err(Error::RamifiedModulus(pi.to_string()));
    }
    if n <= BigInt::one() || !n.mod_floor(&BigInt::from(3)).is_one() {
        return Err(Error::NotPrime(pi.to_string()));
    }
    if pi.divides(alpha) {
        return Ok(CharValue::Zero);
    }
    let e: BigUint = ((n - 1u32) / 3u32).to_biguint().expect("positive");
    let r = alpha.pow_mod(&e, pi)?;
    for k in 0..3u64 {
        if r.congruent_mod(&EisensteinInt::omega().pow(k), pi)? {
            return Ok(CharValue::omega_pow(k));
        }
    }
    Err(Error::NotPrime(pi.to_string()))
}

/// Residue-field evaluation of `(·/π)₃` for a split prime `π` over a
/// rational prime `p < 2⁶²`: `Z[ω]/π ≅ F_p` with `ω ↦ t`.
#[derive(Clone, Debug)]
pub struct SplitCharacter {
    p: u64,
    t: u64,
    exponent: u64,
}

impl SplitCharacter {
    /// `None` unless `π` is a prime whose norm is a rational prime
    /// `p ≡ 1 (mod 3)` below 2⁶².
    pub fn new(pi: &EisensteinInt) -> Option<Self> {
        let p = pi.norm().to_u64()?;
        if p >= 1 << 62 || p % 3 != 1 || !crate::rational::is_prime_u64(p) {
            return None;
        }
        // the two roots of t² + t + 1 mod p; ω ≡ t for exactly one of them
        let r = crate::rational::cube_root_of_unity(&BigUint::from(p)).to_u64()?;
        let other = mul_mod(r, r, p);
        let t = [r, other].into_iter().find(|&t| {
            EisensteinInt::omega()
                .congruent_mod(&EisensteinInt::from_int(t), pi)
                .unwrap_or(false)
        })?;
        Some(SplitCharacter {
            p,
            t,
            exponent: (p - 1) / 3,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of `α` in `F_p`.
    pub fn reduce(&self, alpha: &EisensteinInt) -> u64 {
        let p = BigInt::from(self.p);
        let a = alpha.a().mod_floor(&p).to_u64().expect("reduced");
        let b = alpha.b().mod_floor(&p).to_u64().expect("reduced");
        (a + mul_mod(b, self.t, self.p)) % self.p
    }

    pub fn eval_residue(&self, c: u64) -> CharValue {
        if c.is_multiple_of(self.p) {
            return CharValue::Zero;
        }
        let r = pow_mod(c, self.exponent, self.p);
        if r == 1 {
            CharValue::One
        } else if r == self.t {
            CharValue::Omega
        } else {
            debug_assert_eq!(r, mul_mod(self.t, self.t, self.p));
            CharValue::OmegaSq
        }
    }

    pub fn eval(&self, alpha: &EisensteinInt) -> CharValue {
        self.eval_residue(self.reduce(alpha))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `(α/η)₃ = Π (α/πᵢ)₃^eᵢ` over the primary factorization `η = ±Π πᵢ^eᵢ`.
pub fn char_primary(alpha: &EisensteinInt, eta: &EisensteinInt) -> Result<CharValue> {
    char_primary_with(alpha, eta, &FactorBudget::default())
}

pub fn char_primary_with(
    alpha: &EisensteinInt,
    eta: &EisensteinInt,
    budget: &FactorBudget,
) -> Result<CharValue> {
    if !eta.is_primary() {
        return Err(Error::NotPrimary(eta.to_string()));
    }
    let f = factor::factor_with(eta, budget)?;
    let mut acc = CharValue::One;
    for (pi, e) in &f.factors {
        acc = acc * char_prime(alpha, pi)?.pow(*e as u64);
        if acc == CharValue::Zero {
            break;
        }
    }
    Ok(acc)
}

enum Transversal {
    /// `Z[ω]/π ≅ Z/p`, `ω ↦ t`; holds the set of cubes in `0..p`.
    Split {
        p: BigInt,
        t: BigInt,
        cubes: HashSet<BigInt>,
    },
    /// `Z[ω]/q` for inert `q`; cubes as reduced coordinate pairs.
    Inert {
        q: BigInt,
        cubes: HashSet<(BigInt, BigInt)>,
    },
}

/// Exhaustive cube-residue test modulo a fixed prime.
pub struct CubicResidueOracle {
    pi: EisensteinInt,
    transversal: Transversal,
}

impl CubicResidueOracle {
    pub fn new(pi: &EisensteinInt, bound: u64) -> Result<Self> {
        if !is_eisenstein_prime(pi) {
            return Err(Error::NotPrime(pi.to_string()));
        }
        let n = pi.norm();
        if n > BigInt::from(bound) {
            return Err(Error::OracleBoundExceeded {
                norm: n.to_string(),
                bound,
            });
        }
        let transversal = if crate::rational::is_prime(&n) {
            let p = n;
            // the integer t in 0..p with ω ≡ t (mod π), found by scanning
            let mut t = None;
            let mut c = BigInt::zero();
            while c < p {
                if EisensteinInt::omega().congruent_mod(&EisensteinInt::from_int(c.clone()), pi)? {
                    t = Some(c.clone());
                    break;
                }
                c += 1;
            }
            let t = t.ok_or_else(|| Error::NotPrime(pi.to_string()))?;
            let mut cubes = HashSet::new();
            let mut x = BigInt::zero();
            while x < p {
                cubes.insert((&x * &x * &x).mod_floor(&p));
                x += 1;
            }
            Transversal::Split { p, t, cubes }
        } else {
            let q = n.sqrt();
            let mut cubes = HashSet::new();
            let qi = q.to_i64().expect("bounded by oracle bound");
            for c in 0..qi {
                for d in 0..qi {
                    let x = EisensteinInt::new(c, d);
                    let cube = &(&x * &x) * &x;
                    cubes.insert((cube.a().mod_floor(&q), cube.b().mod_floor(&q)));
                }
            }
            Transversal::Inert { q, cubes }
        };
        Ok(CubicResidueOracle {
            pi: pi.clone(),
            transversal,
        })
    }

    pub fn modulus(&self) -> &EisensteinInt {
        &self.pi
    }

    /// `true` iff some `x` in the transversal has `x³ ≡ α (mod π)`.
    pub fn is_residue(&self, alpha: &EisensteinInt) -> bool {
        match &self.transversal {
            Transversal::Split { p, t, cubes } => {
                cubes.contains(&(alpha.a() + alpha.b() * t).mod_floor(p))
            }
            Transversal::Inert { q, cubes } => {
                cubes.contains(&(alpha.a().mod_floor(q), alpha.b().mod_floor(q)))
            }
        }
    }

    /// A complete residue system modulo `π`.
    pub fn transversal(&self) -> Vec<EisensteinInt> {
        match &self.transversal {
            Transversal::Split { p, .. } => {
                let p = p.to_i64().expect("bounded");
                (0..p).map(EisensteinInt::from).collect()
            }
            Transversal::Inert { q, .. } => {
                let q = q.to_i64().expect("bounded");
                (0..q)
                    .flat_map(|c| (0..q).map(move |d| EisensteinInt::new(c, d)))
                    .collect()
            }
        }
    }
}

/// Whether `x³ ≡ α (mod π)` is solvable, by exhausting a residue system.
pub fn is_cubic_residue_oracle(
    alpha: &EisensteinInt,
    pi: &EisensteinInt,
    bound: u64,
) -> Result<bool> {
    let oracle = CubicResidueOracle::new(pi, bound)?;
    if pi.divides(alpha) {
        return Err(Error::PreconditionViolated(format!("{pi} divides {alpha}")));
    }
    Ok(oracle.is_residue(alpha))
}

/// Both sides of a reciprocity law for one pair of moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub lhs: CharValue,
    pub rhs: CharValue,
    pub equal: bool,
    /// The common value when both sides agree.
    pub value: Option<CharValue>,
}

impl ReciprocityReport {
    fn new(lhs: CharValue, rhs: CharValue) -> Self {
        ReciprocityReport {
            lhs,
            rhs,
            equal: lhs == rhs,
            value: (lhs == rhs).then_some(lhs),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "equal": self.equal,
            "value": self.value.map(|v| v.to_string()),
        })
    }
}

/// `(π₂/π₁)₃` against `(π₁/π₂)₃` for primary primes with distinct norms
/// other than 3.
pub fn check_prime_reciprocity(
    pi1: &EisensteinInt,
    pi2: &EisensteinInt,
) -> Result<ReciprocityReport> {
    for pi in [pi1, pi2] {
        if !pi.is_primary() {
            return Err(Error::PreconditionViolated(format!("{pi} is not primary")));
        }
        if !is_eisenstein_prime(pi) {
            return Err(Error::PreconditionViolated(format!("{pi} is not prime")));
        }
    }
    let (n1, n2) = (pi1.norm(), pi2.norm());
    if n1 == n2 {
        return Err(Error::PreconditionViolated(format!(
            "{pi1} and {pi2} have equal norm {n1}"
        )));
    }
    let lhs = char_prime(pi2, pi1)?;
    let rhs = char_prime(pi1, pi2)?;
    Ok(ReciprocityReport::new(lhs, rhs))
}

/// `(η/θ)₃` against `(θ/η)₃` for primary `η`, `θ`.
pub fn check_general_reciprocity(
    eta: &EisensteinInt,
    theta: &EisensteinInt,
) -> Result<ReciprocityReport> {
    check_general_reciprocity_with(eta, theta, &FactorBudget::default())
}

pub fn check_general_reciprocity_with(
    eta: &EisensteinInt,
    theta: &EisensteinInt,
    budget: &FactorBudget,
) -> Result<ReciprocityReport> {
    let lhs = char_primary_with(eta, theta, budget)?;
    let rhs = char_primary_with(theta, eta, budget)?;
    Ok(ReciprocityReport::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn char_prime_examples() {
        assert_eq!(char_prime(&e(2, 0), &e(2, 3)).unwrap(), CharValue::Omega);
        assert_eq!(
            char_prime(&e(2, 0), &e(-1, -3)).unwrap(),
            CharValue::OmegaSq
        );
        assert_eq!(char_prime(&e(7, 0), &e(2, 3)).unwrap(), CharValue::Zero);
        assert!(matches!(
            char_prime(&e(2, 0), &EisensteinInt::lambda()),
            Err(Error::RamifiedModulus(_))
        ));
        // 7 is not prime in Z[ω]; 2 ≡ ... has no cube-root-of-unity image
        assert!(matches!(
            char_prime(&e(2, 0), &e(7, 0)),
            Err(Error::NotPrime(_))
        ));
        assert!(matches!(
            char_prime(&e(2, 0), &e(4, 0)),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn char_primary_examples() {
        assert_eq!(char_primary(&e(2, 0), &e(-7, 0)).unwrap(), CharValue::One);
        assert_eq!(
            char_primary(&e(2, 0), &e(2, 3)).unwrap(),
            char_prime(&e(2, 0), &e(2, 3)).unwrap()
        );
        assert_eq!(
            char_primary(&e(28, 0), &e(-1, 6)).unwrap(),
            CharValue::OmegaSq
        );
        assert!(matches!(
            char_primary(&e(2, 0), &e(7, 0)),
            Err(Error::NotPrimary(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        assert!(is_cubic_residue_oracle(&e(1, 0), &e(2, 3), DEFAULT_ORACLE_BOUND).unwrap());
        assert!(!is_cubic_residue_oracle(&e(2, 0), &e(2, 3), DEFAULT_ORACLE_BOUND).unwrap());
        assert!(matches!(
            is_cubic_residue_oracle(&e(1, 0), &e(2, 3), 5),
            Err(Error::OracleBoundExceeded { .. })
        ));
        let pi = e(-4, -3);
        let oracle = CubicResidueOracle::new(&pi, DEFAULT_ORACLE_BOUND).unwrap();
        for alpha in oracle.transversal() {
            if pi.divides(&alpha) {
                continue;
            }
            assert_eq!(
                oracle.is_residue(&alpha),
                char_prime(&alpha, &pi).unwrap() == CharValue::One,
                "{alpha}"
            );
        }
    }

    #[test]
    fn inert_oracle_matches_character() {
        let q = e(5, 0);
        let oracle = CubicResidueOracle::new(&q, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(oracle.transversal().len(), 25);
        for alpha in oracle.transversal().into_iter().skip(1) {
            assert_eq!(
                oracle.is_residue(&alpha),
                char_prime(&alpha, &q).unwrap().is_one(),
                "{alpha}"
            );
        }
    }

    #[test]
    fn shortcut_agrees_with_reference() {
        for pi in [e(2, 3), e(-1, -3), e(-4, -3), e(-1, 6)] {
            let fast = SplitCharacter::new(&pi).unwrap();
            for a in -10..10 {
                for b in -10..10 {
                    let alpha = e(a, b);
                    assert_eq!(fast.eval(&alpha), char_prime(&alpha, &pi).unwrap());
                }
            }
        }
        assert!(SplitCharacter::new(&e(2, 0)).is_none());
    }

    #[test]
    fn prime_reciprocity_examples() {
        let r = check_prime_reciprocity(&e(2, 3), &e(-4, -3)).unwrap();
        assert!(r.equal);
        let r = check_prime_reciprocity(&e(2, 0), &e(-1, -3)).unwrap();
        assert!(r.equal);
        assert!(matches!(
            check_prime_reciprocity(&e(2, 3), &e(-1, -3)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn general_reciprocity_examples() {
        assert!(
            check_general_reciprocity(&e(-7, 0), &e(-1, 6))
                .unwrap()
                .equal
        );
        let r = check_general_reciprocity(&e(-7, 0), &e(-7, 0)).unwrap();
        assert_eq!((r.lhs, r.rhs), (CharValue::Zero, CharValue::Zero));
        assert!(r.equal);
        assert!(
            check_general_reciprocity(&e(2, 0), &e(-1, -3))
                .unwrap()
                .equal
        );
        assert_eq!(
            r.to_json().to_string(),
            r#"{"lhs":"0","rhs":"0","equal":true,"value":"0"}"#
        );
    }
}
