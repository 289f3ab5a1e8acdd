//! Exhaustive congruence checks modulo small integers.

use crate::catalog::compact::{key_slots, Compact, PAD};
use crate::catalog::equation::CubicEquation;
use crate::error::{Error, Result};

/// Default ceiling on residue tuples visited by one sweep.
pub const DEFAULT_SWEEP_BUDGET: u128 = 2_000_000;

/// Small prime powers tried by the classification pipeline.
pub const DEFAULT_MODULI: [u64; 16] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81];

/// Number of residue tuples a sweep modulo `m` visits, if it fits `u128`.
pub fn sweep_size(num_vars: usize, m: u64) -> Option<u128> {
    (m as u128).checked_pow(num_vars as u32)
}

/// Whether `eq ≡ 0 (mod m)` has a solution; `None` when the sweep exceeds
/// `budget`.
pub fn has_root_mod(eq: &Compact, m: u64, budget: u128) -> Option<bool> {
    let n = eq.num_vars as usize;
    if sweep_size(n, m).is_none_or(|t| t > budget) {
        return None;
    }
    if m == 1 {
        return Some(true);
    }
    let terms: Vec<(u64, [u8; 3])> = eq
        .terms
        .iter()
        .map(|&(k, c)| (c.rem_euclid(m as i64) as u64, key_slots(k)))
        .filter(|t| t.0 != 0)
        .collect();
    if terms.is_empty() {
        return Some(true);
    }
    if n == 0 {
        return Some(false);
    }
    let mut point = vec![0u64; n + 1];
    point[n] = 1;
    let eval = |p: &[u64]| {
        let mut acc = 0u64;
        for (c, s) in &terms {
            let mut t = *c;
            for &v in s {
                let v = if v == PAD { n } else { v as usize };
                t = t * p[v] % m;
            }
            acc += t;
        }
        acc % m
    };
    loop {
        if eval(&point) == 0 {
            return Some(true);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(false);
            }
            point[i] += 1;
            if point[i] < m {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Whether some residue tuple modulo `m` satisfies the equation.
pub fn check_local_solvability(eq: &CubicEquation, m: u64) -> Result<bool> {
    check_local_solvability_with(eq, m, DEFAULT_SWEEP_BUDGET)
}

pub fn check_local_solvability_with(eq: &CubicEquation, m: u64, budget: u128) -> Result<bool> {
    if m < 2 {
        return Err(Error::PreconditionViolated(format!(
            "modulus {m} is below 2"
        )));
    }
    let tuples = sweep_size(eq.num_vars, m).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::SweepBudgetExceeded { tuples, budget });
    }
    let reduced = reduce_mod(eq, m);
    Ok(has_root_mod(&reduced, m, budget).expect("within budget"))
}

fn reduce_mod(eq: &CubicEquation, m: u64) -> Compact {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let mb = BigInt::from(m);
    let mut reduced = eq.clone();
    for mono in &mut reduced.monomials {
        let r = mono.coeff.mod_floor(&mb);
        mono.coeff = if r.to_u64() == Some(0) { mb.clone() } else { r };
    }
    Compact::from_equation(&reduced).expect("reduced coefficients fit a word")
}
