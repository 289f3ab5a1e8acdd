//! Integer polynomial equations of degree three, their text form, and the
//! length measure `L(P) = Π |aᵢ|·2^{dᵢ}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `coeff · Π x_i^{e_i}` with `coeff ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    /// Variable index to positive exponent; absent variables are omitted.
    pub exponents: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn new(coeff: BigInt, exponents: BTreeMap<usize, u32>) -> Self {
        Monomial { coeff, exponents }
    }

    pub fn constant(coeff: BigInt) -> Self {
        Monomial {
            coeff,
            exponents: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exponents.get(&var).copied().unwrap_or(0)
    }

    /// Dense exponent vector over `num_vars` variables.
    pub fn exponent_vector(&self, num_vars: usize) -> Vec<u32> {
        (0..num_vars).map(|v| self.exponent(v)).collect()
    }

    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        let mut acc = self.coeff.clone();
        for (&v, &e) in &self.exponents {
            acc *= num_traits::pow(point[v].clone(), e as usize);
        }
        acc
    }
}

/// A reduced-form integer polynomial `P` of degree exactly 3, read as the
/// equation `P = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicEquation {
    pub monomials: Vec<Monomial>,
    pub num_vars: usize,
}

fn monomial_order(num_vars: usize) -> impl Fn(&Monomial, &Monomial) -> Ordering {
    move |p, q| {
        q.degree().cmp(&p.degree()).then_with(|| {
            q.exponent_vector(num_vars)
                .cmp(&p.exponent_vector(num_vars))
        })
    }
}

impl CubicEquation {
    /// Builds an equation from monomials, merging repeated exponent
    /// patterns, dropping zero terms, and renumbering unused variables away.
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<(usize, u32)>, BigInt> = BTreeMap::new();
        for m in monomials {
            let key: Vec<(usize, u32)> = m
                .exponents
                .iter()
                .filter(|(_, &e)| e > 0)
                .map(|(&v, &e)| (v, e))
                .collect();
            *merged.entry(key).or_default() += m.coeff;
        }
        let mut used: Vec<usize> = merged
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .flat_map(|(k, _)| k.iter().map(|&(v, _)| v))
            .collect();
        used.sort_unstable();
        used.dedup();
        let rename: BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let monomials: Vec<Monomial> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Monomial::new(c, k.into_iter().map(|(v, e)| (rename[&v], e)).collect()))
            .collect();
        Self::from_reduced(monomials, used.len())
    }

    fn from_reduced(mut monomials: Vec<Monomial>, num_vars: usize) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::Degree("zero polynomial".into()));
        }
        let degree = monomials.iter().map(Monomial::degree).max().unwrap_or(0);
        if degree > 3 {
            return Err(Error::Degree(format!("degree {degree} exceeds 3")));
        }
        if degree < 3 {
            return Err(Error::Degree(format!("degree {degree} is not 3")));
        }
        monomials.sort_by(monomial_order(num_vars));
        Ok(CubicEquation {
            monomials,
            num_vars,
        })
    }

    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        Ok(self.monomials.iter().map(|m| m.evaluate(point)).sum())
    }

    pub fn is_solution(&self, point: &[BigInt]) -> Result<bool> {
        Ok(self.evaluate(point)?.is_zero())
    }

    /// Greatest common divisor of the coefficients.
    pub fn content(&self) -> BigInt {
        self.monomials.iter().fold(BigInt::zero(), |g, m| {
            num_integer::Integer::gcd(&g, &m.coeff)
        })
    }

    /// The same equation divided by its content.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_one() {
            return self.clone();
        }
        CubicEquation {
            monomials: self
                .monomials
                .iter()
                .map(|m| Monomial::new(&m.coeff / &g, m.exponents.clone()))
                .collect(),
            num_vars: self.num_vars,
        }
    }

    pub fn variable_name(&self, var: usize) -> String {
        variable_name(self.num_vars, var)
    }
}

/// `x`, `y`, `z` for up to three variables, otherwise `x1`, `x2`, ...
pub fn variable_name(num_vars: usize, var: usize) -> String {
    if num_vars <= 3 {
        ["x", "y", "z"][var].to_string()
    } else {
        format!("x{}", var + 1)
    }
}

impl fmt::Display for CubicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.monomials.iter().enumerate() {
            let negative = m.coeff.is_negative();
            if negative {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let mag = m.coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.exponents.is_empty() {
                factors.push(mag.to_string());
            }
            for (&v, &e) in &m.exponents {
                let name = self.variable_name(v);
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for CubicEquation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for CubicEquation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::catalog::parser::parse_equation(s)
    }
}

/// Exact length `L` and its base-2 logarithm for display.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LengthMeasure {
    pub exact: BigUint,
}

impl LengthMeasure {
    pub fn new(exact: BigUint) -> Self {
        LengthMeasure { exact }
    }

    /// `l = log₂ L`; for presentation only.
    pub fn l_display(&self) -> f64 {
        match self.exact.to_f64() {
            Some(v) if v.is_finite() => v.log2(),
            _ => {
                let bits = self.exact.bits();
                let shift = bits.saturating_sub(60);
                let top = (&self.exact >> shift).to_f64().unwrap_or(1.0);
                top.log2() + shift as f64
            }
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact.to_u64()
    }
}

impl fmt::Display for LengthMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} l={:.3}", self.exact, self.l_display())
    }
}

/// `L(P) = Π |aᵢ|·2^{dᵢ}` over the monomials as written.
pub fn length_measure(eq: &CubicEquation) -> LengthMeasure {
    let mut acc = BigUint::one();
    for m in &eq.monomials {
        acc *= m.coeff.magnitude();
        acc <<= m.degree() as usize;
    }
    LengthMeasure::new(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(s: &str) -> CubicEquation {
        s.parse().unwrap()
    }

    #[test]
    fn lengths() {
        let cases = [
            ("6*x^2*z+z^2*y+3*y^3+1", 9216u64),
            ("7*x^3+2*y^3-3*z^2-1", 10752),
            ("y^2-x^3-3", 96),
            ("x^2*y+y^2+z^2+1", 128),
            ("x^3", 8),
        ];
        for (s, l) in cases {
            assert_eq!(length_measure(&eq(s)).to_u64(), Some(l), "{s}");
        }
        let l = length_measure(&eq("7*x^3+2*y^3-3*z^2-1")).l_display();
        assert!((l - (9.0 + 21f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "7*x^3+2*y^3-3*z^2-1",
            "x*y*z+1",
            "x1^3+x2*x3-x4",
            "x^2*y+y^2+z^2+1",
        ] {
            let e = eq(s);
            let again: CubicEquation = e.to_string().parse().unwrap();
            assert_eq!(e, again);
        }
        assert_eq!(eq("7*x^3+2*y^3-3*z^2-1").to_string(), "7*x^3+2*y^3-3*z^2-1");
        assert_eq!(eq("1+x*y*z").to_string(), "x*y*z+1");
    }

    #[test]
    fn evaluation() {
        let e = eq("x*y*z+1");
        let p: Vec<BigInt> = [1, 1, -1].iter().map(|&v| BigInt::from(v)).collect();
        assert!(e.is_solution(&p).unwrap());
        assert_eq!(
            e.evaluate(&p[..2]),
            Err(Error::ArityMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn content_and_primitive() {
        let e = eq("4*x^3+6*y");
        assert_eq!(e.content(), BigInt::from(2));
        assert_eq!(e.primitive(), eq("2*x^3+3*y"));
    }
}
