//! The chain of Eisenstein-integer quantities attached to a candidate `z`
//! for `7x³ + 2y³ = 3z² + 1`, and the symbol identities it must satisfy.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::character::{char_primary_with, char_prime};
use crate::eisenstein::{CharValue, EisensteinInt};
use crate::error::{Error, Result};
use crate::factor::rational_valuation;
use crate::par::{self, Exec};
use crate::rational::FactorBudget;

/// `ρ = 2 + 3ω`.
pub fn rho() -> EisensteinInt {
    EisensteinInt::new(2, 3)
}

/// `ρ̄ = -1 - 3ω`.
pub fn rho_bar() -> EisensteinInt {
    EisensteinInt::new(-1, -3)
}

/// `z` even, `z ≡ 3 (mod 7)`, `3 ∤ z`.
pub fn is_valid_z(z: i64) -> bool {
    z % 2 == 0 && z.rem_euclid(7) == 3 && z % 3 != 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainProofTrace {
    pub z: i64,
    /// `3z² + 1`.
    pub n: BigInt,
    /// `v₇(n)`.
    pub a: u32,
    /// `n / 7^a`.
    pub b: BigInt,
    /// `1 + z + 2zω`.
    pub alpha: EisensteinInt,
    pub rho: EisensteinInt,
    /// `v_ρ(α)`.
    pub r: u32,
    /// `α / ρ^r`.
    pub beta: EisensteinInt,
    /// Primary associate of `β`.
    pub beta0: EisensteinInt,
    pub sym_beta_2: CharValue,
    pub sym_beta_rho: CharValue,
    pub sym_beta_rhobar: CharValue,
    /// `(28/β₀)₃`; absent when `b` did not factor within budget.
    pub sym_28_beta0: Option<CharValue>,
    pub budget_exhausted: bool,
}

pub fn build_main_trace(z: i64) -> Result<MainProofTrace> {
    build_main_trace_with(z, &FactorBudget::default())
}

pub fn build_main_trace_with(z: i64, budget: &FactorBudget) -> Result<MainProofTrace> {
    if !is_valid_z(z) {
        return Err(Error::PreconditionViolated(format!(
            "z = {z} must be even, 3 mod 7, and prime to 3"
        )));
    }
    let zb = BigInt::from(z);
    let n: BigInt = BigInt::from(3) * &zb * &zb + 1;
    let a = rational_valuation(&n, &BigUint::from(7u32));
    let b = &n / BigInt::from(7).pow(a);
    let alpha = EisensteinInt::new(&zb + 1, BigInt::from(2) * &zb);
    let rho = rho();
    let (r, beta) = alpha.count_divisions(&rho);
    let beta0 = beta.primary_associate()?;
    let two = EisensteinInt::from_int(2);
    let sym_beta_2 = char_prime(&beta, &two)?;
    let sym_beta_rho = char_prime(&beta, &rho)?;
    let sym_beta_rhobar = char_prime(&beta, &rho_bar())?;
    let (sym_28_beta0, budget_exhausted) =
        match char_primary_with(&EisensteinInt::from_int(28), &beta0, budget) {
            Ok(v) => (Some(v), false),
            Err(Error::FactoringBudgetExceeded(_)) => (None, true),
            Err(e) => return Err(e),
        };
    Ok(MainProofTrace {
        z,
        n,
        a,
        b,
        alpha,
        rho,
        r,
        beta,
        beta0,
        sym_beta_2,
        sym_beta_rho,
        sym_beta_rhobar,
        sym_28_beta0,
        budget_exhausted,
    })
}

impl MainProofTrace {
    /// Structural facts that hold for every valid `z`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let zb = BigInt::from(self.z);
        let seven = BigInt::from(7);
        if self.n != BigInt::from(3) * &zb * &zb + 1 {
            out.push("n != 3z^2+1".into());
        }
        if (&self.b % &seven).is_zero() {
            out.push("7 divides b".into());
        }
        if self.alpha.norm() != self.n {
            out.push("N(alpha) != n".into());
        }
        if self.r != self.a {
            out.push(format!("r = {} but a = {}", self.r, self.a));
        }
        if self.beta.norm() != self.b {
            out.push("N(beta) != b".into());
        }
        let beta = &self.beta;
        for (name, p) in [
            ("2", EisensteinInt::from_int(2)),
            ("lambda", EisensteinInt::lambda()),
            ("rho", rho()),
            ("rho_bar", rho_bar()),
        ] {
            if p.divides(beta) {
                out.push(format!("{name} divides beta"));
            }
        }
        if !beta.is_coprime(&beta.conj()).unwrap_or(false) {
            out.push("beta and its conjugate share a factor".into());
        }
        out
    }

    /// `(β/2)₃ = ω^(2a mod 3)`, `(β/ρ̄)₃ = ω²`, `β ≡ 4b (mod ρ)`, and, when
    /// available, `(28/β₀)₃ = (β/2)₃²(β/ρ)₃(β/ρ̄)₃`.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let want = CharValue::omega_pow(2 * self.a as u64 % 3);
        if self.sym_beta_2 != want {
            out.push(format!(
                "(beta/2) = {} but expected {want}",
                self.sym_beta_2
            ));
        }
        if self.sym_beta_rhobar != CharValue::OmegaSq {
            out.push(format!("(beta/rho_bar) = {}", self.sym_beta_rhobar));
        }
        let four_b = EisensteinInt::from_int(BigInt::from(4) * &self.b);
        if !self.beta.congruent_mod(&four_b, &self.rho).unwrap_or(false) {
            out.push("beta is not 4b mod rho".into());
        }
        if let Some(s) = self.sym_28_beta0 {
            let rhs = self.sym_beta_2.pow(2) * self.sym_beta_rho * self.sym_beta_rhobar;
            if s != rhs {
                out.push(format!("(28/beta0) = {s} but the product is {rhs}"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "z": self.z,
            "n": self.n.to_string(),
            "a": self.a,
            "b": self.b.to_string(),
            "alpha": self.alpha.to_string(),
            "rho": self.rho.to_string(),
            "r": self.r,
            "beta": self.beta.to_string(),
            "beta0": self.beta0.to_string(),
            "sym_beta_2": self.sym_beta_2.to_string(),
            "sym_beta_rho": self.sym_beta_rho.to_string(),
            "sym_beta_rhobar": self.sym_beta_rhobar.to_string(),
            "sym_28_beta0": self.sym_28_beta0.map(|v| v.to_string()),
            "budget_exhausted": self.budget_exhausted,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub z_lo: i64,
    pub z_hi: i64,
    /// Distinct traced values after sign normalization.
    pub traced: u64,
    /// Traces on which the `(28/β₀)₃` identity was checked.
    pub symbol_checked: u64,
    /// Traced `z` whose `b` did not factor within budget.
    pub skipped: Vec<i64>,
    pub violations: Vec<(i64, String)>,
}

impl TraceReport {
    pub fn verified(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "z_lo": self.z_lo,
            "z_hi": self.z_hi,
            "traced": self.traced,
            "symbol_checked": self.symbol_checked,
            "skipped": self.skipped,
            "violations": self
                .violations
                .iter()
                .map(|(z, m)| json!({"z": z, "message": m}))
                .collect::<Vec<_>>(),
            "verified": self.verified(),
        })
    }
}

/// Traced values for a range: `z` with `z ≡ 4 (mod 7)` is replaced by
/// `-z`, then only valid values are kept.
pub fn normalized_range(z_lo: i64, z_hi: i64) -> Vec<i64> {
    let set: BTreeSet<i64> = (z_lo..=z_hi)
        .map(|z| if z.rem_euclid(7) == 4 { -z } else { z })
        .filter(|&z| is_valid_z(z))
        .collect();
    set.into_iter().collect()
}

/// Checks every trace invariant and identity for valid `z` in
/// `[z_lo, z_hi]`. `factor_bound` is the trial-division limit used to
/// factor `b`; values it cannot factor are listed, not dropped.
pub fn verify_trace_identities(z_lo: i64, z_hi: i64, factor_bound: u64) -> TraceReport {
    verify_trace_identities_with(z_lo, z_hi, factor_bound, Exec::default())
}

pub fn verify_trace_identities_with(
    z_lo: i64,
    z_hi: i64,
    factor_bound: u64,
    exec: Exec,
) -> TraceReport {
    let budget = FactorBudget {
        trial_limit: factor_bound,
        rho_iterations: 0,
    };
    let zs = normalized_range(z_lo, z_hi);
    let results = par::map(exec, &zs, |&z| match build_main_trace_with(z, &budget) {
        Ok(t) => {
            let mut v = t.invariant_violations();
            v.extend(t.identity_violations());
            (z, t.sym_28_beta0.is_some(), t.budget_exhausted, v)
        }
        Err(e) => (z, false, false, vec![e.to_string()]),
    });
    let mut report = TraceReport {
        z_lo,
        z_hi,
        ..Default::default()
    };
    for (z, checked, skipped, v) in results {
        report.traced += 1;
        report.symbol_checked += checked as u64;
        if skipped {
            report.skipped.push(z);
        }
        report.violations.extend(v.into_iter().map(|m| (z, m)));
    }
    report
}

/// `x = 7^u·x₀`, `y = 7^v·y₀` with `7 ∤ x₀y₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SevenAdicSplit {
    pub u: u32,
    pub x0: BigInt,
    pub v: u32,
    pub y0: BigInt,
}

impl SevenAdicSplit {
    pub fn new(x: &BigInt, y: &BigInt) -> Result<Self> {
        if x.is_zero() || y.is_zero() {
            return Err(Error::ZeroInput);
        }
        let seven = BigUint::from(7u32);
        let u = rational_valuation(x, &seven);
        let v = rational_valuation(y, &seven);
        Ok(SevenAdicSplit {
            u,
            x0: x / BigInt::from(7).pow(u),
            v,
            y0: y / BigInt::from(7).pow(v),
        })
    }

    /// `v₇(7x³ + 2y³)`, which is `min(1 + 3u, 3v)` since the two
    /// exponents differ modulo 3.
    pub fn form_valuation(&self) -> u32 {
        (1 + 3 * self.u).min(3 * self.v)
    }

    /// `(7x³ + 2y³) / 7^{form_valuation}` modulo 7, in `1..7`.
    pub fn unit_part_mod7(&self) -> u32 {
        let x: BigInt = &self.x0 * BigInt::from(7).pow(self.u);
        let y: BigInt = &self.y0 * BigInt::from(7).pow(self.v);
        let f: BigInt = BigInt::from(7) * &x * &x * &x + BigInt::from(2) * &y * &y * &y;
        let rest = f / BigInt::from(7).pow(self.form_valuation());
        rest.mod_floor(&BigInt::from(7))
            .to_u32()
            .expect("residue below 7")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_at_ten() {
        let t = build_main_trace(10).unwrap();
        assert_eq!(t.n, BigInt::from(301));
        assert_eq!(t.a, 1);
        assert_eq!(t.b, BigInt::from(43));
        assert_eq!(t.alpha, EisensteinInt::new(11, 20));
        assert_eq!(t.beta, EisensteinInt::new(7, 1));
        assert_eq!(t.beta0, EisensteinInt::new(-1, 6));
        assert_eq!(t.sym_beta_rhobar, CharValue::OmegaSq);
        assert_eq!(t.sym_28_beta0, Some(CharValue::OmegaSq));
        assert!(t.invariant_violations().is_empty());
        assert!(t.identity_violations().is_empty());
    }

    #[test]
    fn invalid_z() {
        for z in [3, 11, 24, 0] {
            assert!(matches!(
                build_main_trace(z),
                Err(Error::PreconditionViolated(_))
            ));
        }
    }

    #[test]
    fn small_range() {
        let r = verify_trace_identities(-300, 300, 1000);
        assert!(r.verified(), "{:?}", r.violations);
        assert!(r.traced > 20);
        assert!(r.skipped.is_empty());
        assert_eq!(r.symbol_checked, r.traced);
        assert!(normalized_range(-300, 300).contains(&-32));
        assert!(!normalized_range(-300, 300).contains(&32));
    }

    #[test]
    fn seven_adic() {
        let s = SevenAdicSplit::new(&BigInt::from(98), &BigInt::from(-343 * 5)).unwrap();
        assert_eq!((s.u, s.v), (2, 3));
        assert_eq!(
            (s.x0.clone(), s.y0.clone()),
            (BigInt::from(2), BigInt::from(-5))
        );
        assert_eq!(s.form_valuation(), 7);
        assert!(SevenAdicSplit::new(&BigInt::zero(), &BigInt::from(1)).is_err());
    }
}
