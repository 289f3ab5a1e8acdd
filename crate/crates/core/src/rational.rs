//! Factoring of rational integers: trial division, Miller-Rabin, and
//! Brent's variant of Pollard's rho with a seed derived from the input.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Effort limits for [`factor_biguint`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs through all candidates up to this bound.
    pub trial_limit: u64,
    /// Total Pollard-rho iterations allowed per input.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 1_000_000,
            rho_iterations: 1 << 24,
        }
    }
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in MR_BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin; deterministic below 3.3·10²⁴, a strong probable-prime
/// test with 20 fixed bases above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    for p in MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let bases = MR_BASES
        .iter()
        .copied()
        .chain([41, 43, 47, 53, 59, 61, 67, 71]);
    'bases: for a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => is_probable_prime(&u),
        None => false,
    }
}

fn seed_for(n: &BigUint) -> u64 {
    // FNV-1a over the little-endian digits
    n.to_bytes_le()
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
            (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
        })
}

/// One nontrivial divisor of composite `n`, or `None` once `budget` runs out.
fn brent_split(n: &BigUint, rng: &mut ChaCha8Rng, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    loop {
        let c = BigUint::from(rng.gen_range(1..u64::MAX)) % n;
        let mut y = BigUint::from(rng.gen::<u64>()) % n;
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let f = |v: &BigUint| (v * v + &c) % n;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
                let spent = m.min(r) + 1;
                if *budget < spent {
                    return None;
                }
                *budget -= spent;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
            }
        }
        if &g != n {
            return Some(g);
        }
        // retry with a fresh polynomial
    }
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        out.push((p, e));
    }
}

/// Prime factorization `[(p, e)]` of `n ≥ 1`, sorted by `p`.
pub fn factor_biguint(n: &BigUint, budget: &FactorBudget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    let mut rest = n.clone();

    if let Some(small) = rest.to_u64() {
        let mut m = small;
        trial_divide_u64(&mut m, budget.trial_limit, &mut out);
        rest = BigUint::from(m);
    } else {
        let mut d = 2u64;
        while d <= budget.trial_limit {
            if (&rest % d).is_zero() {
                let mut e = 0;
                while (&rest % d).is_zero() {
                    rest /= d;
                    e += 1;
                }
                out.push((BigUint::from(d), e));
            }
            if BigUint::from(d) * d > rest {
                break;
            }
            d += if d == 2 { 1 } else { 2 };
        }
    }

    if !rest.is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(n));
        let mut remaining = budget.rho_iterations;
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                push_factor(&mut out, m, 1);
                continue;
            }
            match brent_split(&m, &mut rng, &mut remaining) {
                Some(d) => {
                    let other = &m / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => return Err(Error::FactoringBudgetExceeded(m.to_string())),
            }
        }
    }
    out.sort();
    Ok(out)
}

fn trial_divide_u64(m: &mut u64, limit: u64, out: &mut Vec<(BigUint, u32)>) {
    let mut d = 2u64;
    while d <= limit && d.saturating_mul(d) <= *m {
        if (*m).is_multiple_of(d) {
            let mut e = 0;
            while (*m).is_multiple_of(d) {
                *m /= d;
                e += 1;
            }
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if *m > 1 && (d.saturating_mul(d) > *m) {
        out.push((BigUint::from(*m), 1));
        *m = 1;
    }
}

/// Factorization of a signed integer's absolute value.
pub fn factor_bigint(n: &BigInt, budget: &FactorBudget) -> Result<Vec<(BigUint, u32)>> {
    if n.sign() == Sign::NoSign {
        return Err(Error::ZeroInput);
    }
    factor_biguint(n.magnitude(), budget)
}

/// A primitive cube root of unity modulo a prime `p ≡ 1 (mod 3)`.
pub fn cube_root_of_unity(p: &BigUint) -> BigUint {
    let e = (p - 1u32) / 3u32;
    let one = BigUint::one();
    let mut g = BigUint::from(2u32);
    loop {
        let t = g.modpow(&e, p);
        if t != one {
            return t;
        }
        g += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u128) -> Vec<(u128, u32)> {
        factor_biguint(&BigUint::from(n), &FactorBudget::default())
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_u128().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                83, 89, 97
            ]
        );
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn factors_norms() {
        assert_eq!(fac(301), vec![(7, 1), (43, 1)]);
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(2u128.pow(10) * 9), vec![(2, 10), (3, 2)]);
        assert_eq!(
            fac(1_000_003 * 1_000_033),
            vec![(1_000_003, 1), (1_000_033, 1)]
        );
    }

    #[test]
    fn pollard_splits_large_semiprime() {
        // product of two primes above the trial-division limit, beyond 64 bits
        let p = 4_294_967_311u128;
        let q = 1_099_511_627_791u128;
        assert!(is_prime_u64(p as u64) && is_prime_u64(q as u64));
        assert_eq!(fac(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(fac(p * p * q), vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn budget_is_enforced() {
        let p = 4_294_967_311u128;
        let q = 1_099_511_627_791u128;
        let tight = FactorBudget {
            trial_limit: 100,
            rho_iterations: 10,
        };
        assert!(matches!(
            factor_biguint(&BigUint::from(p * q), &tight),
            Err(Error::FactoringBudgetExceeded(_))
        ));
    }

    #[test]
    fn deterministic_output() {
        let n = BigUint::from(4_294_967_311u128 * 1_099_511_627_791u128 * 97);
        let a = factor_biguint(&n, &FactorBudget::default()).unwrap();
        let b = factor_biguint(&n, &FactorBudget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cube_roots_of_unity() {
        for p in [7u32, 13, 43, 1_000_003] {
            let p = BigUint::from(p);
            let t = cube_root_of_unity(&p);
            assert_eq!((&t * &t + &t + 1u32) % &p, BigUint::zero());
        }
    }
}
