//! Exact evaluation of published integer solutions.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::equation::CubicEquation;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownSolution {
    pub equation: &'static str,
    pub point: [&'static str; 3],
}

/// Published solutions of three cubic equations, as `(x, y, z)`.
pub const PUBLISHED: [KnownSolution; 3] = [
    KnownSolution {
        equation: "6*x^2*z+z^2*y+3*y^3+1",
        point: ["2350866170", "-1017461719", "95574914"],
    },
    KnownSolution {
        equation: "y^2+10*x*y*z+x^3-x-2",
        point: [
            "23499130751021842",
            "252697047241468990409432149765008357514",
            "-1075346360334969622883",
        ],
    },
    KnownSolution {
        equation: "y^2+7*x*y*z+3*x^3-2",
        point: [
            "47699434725285831080938680589289",
            "80298610335148427555",
            "-12143437727264755796194424115079504569776282",
        ],
    },
];

pub fn verify_known_solution(eq: &CubicEquation, point: &[BigInt]) -> Result<bool> {
    eq.is_solution(point)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionCheck {
    pub equation: String,
    pub point: Vec<String>,
    pub value: String,
    pub holds: bool,
}

impl SolutionCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "equation": self.equation,
            "point": self.point,
            "value": self.value,
            "holds": self.holds,
        })
    }
}

pub fn check_solution(equation: &str, point: &[&str]) -> Result<SolutionCheck> {
    let eq: CubicEquation = equation.parse()?;
    let p: Vec<BigInt> = point
        .iter()
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|e| crate::error::Error::Parse(format!("{s}: {e}")))
        })
        .collect::<Result<_>>()?;
    let value = eq.evaluate(&p)?;
    Ok(SolutionCheck {
        equation: eq.to_string(),
        point: point.iter().map(|s| s.to_string()).collect(),
        holds: value == BigInt::from(0),
        value: value.to_string(),
    })
}

/// Evaluates every entry of [`PUBLISHED`].
pub fn verify_published_solutions() -> Vec<SolutionCheck> {
    PUBLISHED
        .iter()
        .map(|s| check_solution(s.equation, &s.point).expect("published data parses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn published_hold() {
        for c in verify_published_solutions() {
            assert!(c.holds, "{}", c.equation);
        }
    }

    #[test]
    fn origin_is_not_a_solution() {
        let c = check_solution("7*x^3+2*y^3-3*z^2-1", &["0", "0", "0"]).unwrap();
        assert!(!c.holds);
        assert_eq!(c.value, "-1");
        let eq: CubicEquation = "x*y*z+1".parse().unwrap();
        assert!(matches!(
            verify_known_solution(&eq, &[BigInt::from(1)]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
