//! Seeded random sweeps of the prime and general cubic reciprocity laws.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::character::{check_general_reciprocity, check_prime_reciprocity, ReciprocityReport};
use crate::eisenstein::{CharValue, EisensteinInt};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::is_prime_u64;

/// Every primary prime with norm at most `bound`, other than those above 3.
pub fn primary_primes(bound: u64) -> Vec<EisensteinInt> {
    let mut out = Vec::new();
    for p in 2..=bound {
        if !is_prime_u64(p) || p == 3 {
            continue;
        }
        if p % 3 == 1 {
            let pi = crate::factor::split_prime(&p.into()).expect("split prime");
            out.push(pi.conj());
            out.push(pi);
        } else if p.checked_mul(p).is_some_and(|n| n <= bound) {
            out.push(EisensteinInt::from_int(p));
        }
    }
    out
}

fn random_coprime_to_three(rng: &mut ChaCha8Rng, norm_bound: u64) -> EisensteinInt {
    let r = ((norm_bound as f64).sqrt() * 1.16) as i64 + 1;
    loop {
        let a: i64 = rng.gen_range(-r..=r);
        let b: i64 = rng.gen_range(-r..=r);
        let n = (a * a - a * b + b * b) as u64;
        if n > 1 && n <= norm_bound && !n.is_multiple_of(3) {
            return EisensteinInt::new(a, b);
        }
    }
}

fn primary(x: &EisensteinInt) -> EisensteinInt {
    x.primary_associate().expect("coprime to 3")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReciprocitySweep {
    pub prime_pairs: usize,
    pub composite_pairs: usize,
    /// Composite pairs where both sides were zero.
    pub zero_zero: usize,
    pub violations: Vec<(EisensteinInt, EisensteinInt, ReciprocityReport)>,
    pub errors: Vec<(EisensteinInt, EisensteinInt, Error)>,
}

impl ReciprocitySweep {
    pub fn verified(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.errors
            .iter()
            .any(|(_, _, e)| matches!(e, Error::FactoringBudgetExceeded(_)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prime_pairs": self.prime_pairs,
            "composite_pairs": self.composite_pairs,
            "zero_zero": self.zero_zero,
            "violations": self.violations.iter().map(|(a, b, r)| json!({
                "eta": a.to_string(), "theta": b.to_string(), "report": r.to_json(),
            })).collect::<Vec<_>>(),
            "errors": self.errors.iter().map(|(a, b, e)| json!({
                "eta": a.to_string(), "theta": b.to_string(), "error": e.to_string(),
            })).collect::<Vec<_>>(),
            "verified": self.verified(),
        })
    }
}

/// Options for [`reciprocity_sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub prime_pairs: usize,
    pub prime_norm_bound: u64,
    pub composite_pairs: usize,
    /// How many composite pairs are built with a common prime factor.
    pub shared_pairs: usize,
    pub composite_norm_bound: u64,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            prime_pairs: 500,
            prime_norm_bound: 10_000,
            composite_pairs: 200,
            shared_pairs: 20,
            composite_norm_bound: 1_000_000,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

pub type Pair = (EisensteinInt, EisensteinInt);

/// Pairs of primary primes with distinct norms, then pairs of primary
/// elements, some sharing a prime factor.
pub fn sample_pairs(opts: &SweepOptions) -> (Vec<Pair>, Vec<Pair>) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let primes = primary_primes(opts.prime_norm_bound);
    let mut prime_pairs = Vec::with_capacity(opts.prime_pairs);
    while prime_pairs.len() < opts.prime_pairs && primes.len() > 1 {
        let p = primes.choose(&mut rng).expect("nonempty").clone();
        let q = primes.choose(&mut rng).expect("nonempty").clone();
        if p.norm() != q.norm() {
            prime_pairs.push((p, q));
        }
    }
    let small = primary_primes(100);
    let mut composite = Vec::with_capacity(opts.composite_pairs);
    for i in 0..opts.composite_pairs {
        if i < opts.shared_pairs {
            let pi = small.choose(&mut rng).expect("nonempty").clone();
            let rest = opts.composite_norm_bound / pi.norm().try_into().unwrap_or(u64::MAX);
            let k1 = random_coprime_to_three(&mut rng, rest.max(2));
            let k2 = random_coprime_to_three(&mut rng, rest.max(2));
            composite.push((primary(&(&pi * &k1)), primary(&(&pi * &k2))));
        } else {
            let e = random_coprime_to_three(&mut rng, opts.composite_norm_bound);
            let t = random_coprime_to_three(&mut rng, opts.composite_norm_bound);
            composite.push((primary(&e), primary(&t)));
        }
    }
    (prime_pairs, composite)
}

pub fn reciprocity_sweep(opts: &SweepOptions) -> ReciprocitySweep {
    let (prime_pairs, composite) = sample_pairs(opts);
    let mut out = ReciprocitySweep {
        prime_pairs: prime_pairs.len(),
        composite_pairs: composite.len(),
        ..Default::default()
    };
    let check =
        |pairs: &[(EisensteinInt, EisensteinInt)],
         f: fn(&EisensteinInt, &EisensteinInt) -> Result<ReciprocityReport>| {
            par::map(opts.exec, pairs, |(a, b)| f(a, b))
        };
    let prime_results = check(&prime_pairs, check_prime_reciprocity);
    let composite_results = check(&composite, check_general_reciprocity);
    for ((a, b), r) in prime_pairs.iter().zip(prime_results) {
        match r {
            Ok(rep) if rep.equal => {}
            Ok(rep) => out.violations.push((a.clone(), b.clone(), rep)),
            Err(e) => out.errors.push((a.clone(), b.clone(), e)),
        }
    }
    for ((a, b), r) in composite.iter().zip(composite_results) {
        match r {
            Ok(rep) if rep.equal => {
                if rep.lhs == CharValue::Zero {
                    out.zero_zero += 1;
                }
            }
            Ok(rep) => out.violations.push((a.clone(), b.clone(), rep)),
            Err(e) => out.errors.push((a.clone(), b.clone(), e)),
        }
    }
    out
}
