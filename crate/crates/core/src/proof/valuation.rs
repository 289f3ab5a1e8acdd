//! Sampled check that `v_p(7x³ + 2y³)` is a multiple of 3 at primes `p`
//! where 28 is not a cube.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::character::char_prime;
use crate::eisenstein::{CharValue, EisensteinInt};
use crate::error::{Error, Result};
use crate::factor::is_eisenstein_prime;

/// One sampled pair with `p | 7x³ + 2y³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationWitness {
    pub p: EisensteinInt,
    /// `v_p(7x³ + 2y³)`.
    pub e: u32,
    /// `min(v_p(x), v_p(y))`.
    pub m: u32,
    pub x: BigInt,
    pub y: BigInt,
}

impl ValuationWitness {
    pub fn holds(&self) -> bool {
        self.e == 3 * self.m
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p.to_string(),
            "e": self.e,
            "m": self.m,
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "holds": self.holds(),
        })
    }
}

fn v_p(x: &BigInt, p: &EisensteinInt) -> Option<u32> {
    (!x.is_zero()).then(|| EisensteinInt::from_int(x.clone()).count_divisions(p).0)
}

/// Rational prime below `p`: its norm when that is prime, else `|a|`.
fn rational_prime_below(p: &EisensteinInt) -> BigInt {
    let n = p.norm();
    if crate::rational::is_prime(&n) {
        n
    } else {
        num_traits::Signed::abs(p.a())
    }
}

/// Samples `trials` pairs `(q^k·x₁, q^k·y₁)` with `q` the rational prime
/// under `p`, `k` cycling through `0..4`, and small random `x₁, y₁`,
/// returning a witness for each pair where `p` divides the form.
pub fn verify_valuation_cube_property(
    p: &EisensteinInt,
    trials: u32,
    seed: u64,
) -> Result<Vec<ValuationWitness>> {
    if !p.is_primary() || !is_eisenstein_prime(p) {
        return Err(Error::PreconditionViolated(format!(
            "{p} is not a primary prime"
        )));
    }
    let n = p.norm().to_u64().unwrap_or(u64::MAX);
    if matches!(n, 3 | 4 | 7) {
        return Err(Error::PreconditionViolated(format!("{p} divides 42")));
    }
    if char_prime(&EisensteinInt::from_int(28), p)? == CharValue::One {
        return Err(Error::PreconditionViolated(format!(
            "28 is a cube modulo {p}"
        )));
    }
    let q = rational_prime_below(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..trials {
        let scale = q.pow(i % 4);
        let (x1, y1) = loop {
            let x1: i64 = rng.gen_range(-60..=60);
            let y1: i64 = rng.gen_range(-60..=60);
            if x1 != 0 || y1 != 0 {
                break (x1, y1);
            }
        };
        let x = &scale * x1;
        let y = &scale * y1;
        let f: BigInt = BigInt::from(7) * &x * &x * &x + BigInt::from(2) * &y * &y * &y;
        let Some(e) = v_p(&f, p) else { continue };
        if e == 0 {
            continue;
        }
        let m = match (v_p(&x, p), v_p(&y, p)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!("pair is nonzero"),
        };
        out.push(ValuationWitness {
            p: p.clone(),
            e,
            m,
            x,
            y,
        });
    }
    Ok(out)
}
