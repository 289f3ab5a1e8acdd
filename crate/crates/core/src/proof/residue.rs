//! Exhaustive residue sweeps behind the congruence steps of the two
//! nonexistence arguments.

use serde::Serialize;
use serde_json::{json, Value};

/// `7x³ + 2y³ - 3z² - 1`.
pub const MAIN_EQUATION: &str = "7*x^3+2*y^3-3*z^2-1";

/// `4x³ + 3xy² + z³ + 2`.
pub const COMPANION_EQUATION: &str = "4*x^3+3*x*y^2+z^3+2";

/// Outcome of sweeping every residue triple modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueObstructionReport {
    pub modulus: u64,
    pub claim: String,
    /// Residue triples visited; always `modulus³`.
    pub visited: u64,
    /// Triples solving the congruence.
    pub solutions: u64,
    /// Solutions violating the claim.
    pub counterexamples: Vec<[u64; 3]>,
}

impl ResidueObstructionReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "modulus": self.modulus,
            "claim": self.claim,
            "visited": self.visited,
            "solutions": self.solutions,
            "counterexamples": self.counterexamples,
            "verified": self.verified(),
        })
    }
}

/// Sweeps `(x, y, z) ∈ (Z/m)³`, checking `claim` on every solution of
/// `congruence`. Both closures see residues in `0..m`.
pub fn sweep<E, C>(m: u64, claim: &str, congruence: E, holds: C) -> ResidueObstructionReport
where
    E: Fn(u64, u64, u64) -> bool,
    C: Fn(u64, u64, u64) -> bool,
{
    let mut report = ResidueObstructionReport {
        modulus: m,
        claim: claim.to_string(),
        visited: 0,
        solutions: 0,
        counterexamples: Vec::new(),
    };
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                report.visited += 1;
                if congruence(x, y, z) {
                    report.solutions += 1;
                    if !holds(x, y, z) {
                        report.counterexamples.push([x, y, z]);
                    }
                }
            }
        }
    }
    report
}

fn main_congruence(m: u64) -> impl Fn(u64, u64, u64) -> bool {
    move |x, y, z| (7 * x * x * x + 2 * y * y * y) % m == (3 * z * z + 1) % m
}

fn companion_congruence(m: u64) -> impl Fn(u64, u64, u64) -> bool {
    move |x, y, z| (4 * x * x * x + 3 * x * y * y + z * z * z + 2) % m == 0
}

/// Modulo 9: `3 ∤ xyz`. Modulo 8: `z` even. Modulo 7: `7 | y` and
/// `z ≡ ±3`.
pub fn verify_main_residues() -> Vec<ResidueObstructionReport> {
    vec![
        sweep(9, "3 does not divide xyz", main_congruence(9), |x, y, z| {
            x % 3 != 0 && y % 3 != 0 && z % 3 != 0
        }),
        sweep(8, "z is even", main_congruence(8), |_, _, z| z % 2 == 0),
        sweep(
            7,
            "7 divides y and z = 3 or 4 mod 7",
            main_congruence(7),
            |_, y, z| y == 0 && (z == 3 || z == 4),
        ),
    ]
}

/// Modulo 4: `y` odd. Modulo 9: `x ≡ 1 (mod 3)`, `3 ∤ y`, `3 | z`.
pub fn verify_companion_residues() -> Vec<ResidueObstructionReport> {
    vec![
        sweep(4, "y is odd", companion_congruence(4), |_, y, _| y % 2 == 1),
        sweep(
            9,
            "x = 1 mod 3, 3 does not divide y, 3 divides z",
            companion_congruence(9),
            |x, y, z| x % 3 == 1 && y % 3 != 0 && z % 3 == 0,
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCycleReport {
    /// `7^k mod 9` for `k = 1..=9`.
    pub powers: Vec<u64>,
    pub period_three: bool,
    /// Exponents `a < 9` with `7^a ≡ 4 (mod 9)`.
    pub exponents_giving_four: Vec<u64>,
    pub verified: bool,
}

/// Powers of 7 modulo 9 cycle through `7, 4, 1`, so `7^a ≡ 4` exactly when
/// `a ≡ 2 (mod 3)`.
pub fn verify_power7_cycle() -> PowerCycleReport {
    let mut powers = Vec::new();
    let mut p = 1u64;
    for _ in 1..=9 {
        p = p * 7 % 9;
        powers.push(p);
    }
    let period_three = powers.chunks(3).all(|c| c == [7, 4, 1]);
    let mut exponents_giving_four = Vec::new();
    let mut p = 1u64;
    for a in 0..9u64 {
        if p == 4 {
            exponents_giving_four.push(a);
        }
        p = p * 7 % 9;
    }
    let verified = period_three
        && exponents_giving_four.iter().all(|a| a % 3 == 2)
        && exponents_giving_four.len() == 3;
    PowerCycleReport {
        powers,
        period_three,
        exponents_giving_four,
        verified,
    }
}
