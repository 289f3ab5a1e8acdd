//! Machine-word representation of small cubic equations and their
//! canonical form under variable permutations, sign changes `xᵢ → -xᵢ`,
//! and scaling.
//!
//! A monomial is stored as a [`Key`]: its (at most three) variable indices
//! in ascending order, one byte each, padded with [`PAD`]. Ordering keys as
//! integers orders `x³ < x²y < x² < xy² < xyz < xy < x < y³ < ... < 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::catalog::equation::{variable_name, CubicEquation, Monomial};
use crate::error::{Error, Result};

pub type Key = u32;

pub const PAD: u8 = 0xFF;

/// Largest supported variable count.
pub const MAX_VARS: usize = 64;

pub const CONSTANT_KEY: Key = 0x00FF_FFFF;

pub fn make_key(vars: &[u8]) -> Key {
    debug_assert!(vars.len() <= 3);
    let mut slots = [PAD; 3];
    slots[..vars.len()].copy_from_slice(vars);
    slots.sort_unstable();
    (slots[0] as u32) << 16 | (slots[1] as u32) << 8 | slots[2] as u32
}

pub fn key_slots(k: Key) -> [u8; 3] {
    [(k >> 16) as u8, (k >> 8) as u8, k as u8]
}

pub fn key_degree(k: Key) -> u32 {
    key_slots(k).iter().filter(|&&s| s != PAD).count() as u32
}

/// Distinct variables of a key with their exponents.
pub fn key_powers(k: Key) -> impl Iterator<Item = (u8, u32)> {
    let s = key_slots(k);
    let mut out = [(PAD, 0u32); 3];
    let mut n = 0;
    for v in s {
        if v == PAD {
            break;
        }
        if n > 0 && out[n - 1].0 == v {
            out[n - 1].1 += 1;
        } else {
            out[n] = (v, 1);
            n += 1;
        }
    }
    out.into_iter().take(n)
}

pub fn key_exponent(k: Key, var: u8) -> u32 {
    key_slots(k).iter().filter(|&&s| s == var).count() as u32
}

/// A cubic equation with word-sized coefficients. Terms are sorted by key,
/// keys are distinct, and coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Compact {
    pub num_vars: u8,
    pub terms: Vec<(Key, i64)>,
}

impl Compact {
    /// Builds from unsorted terms; panics on repeated keys.
    pub fn new(num_vars: u8, mut terms: Vec<(Key, i64)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Compact { num_vars, terms }
    }

    pub fn from_equation(eq: &CubicEquation) -> Result<Self> {
        if eq.num_vars > MAX_VARS {
            return Err(Error::PreconditionViolated(format!(
                "{} variables exceed the supported {MAX_VARS}",
                eq.num_vars
            )));
        }
        let mut terms = Vec::with_capacity(eq.monomials.len());
        for m in &eq.monomials {
            let c = m.coeff.to_i64().ok_or_else(|| {
                Error::PreconditionViolated(format!("coefficient {} exceeds 64 bits", m.coeff))
            })?;
            let mut vars = Vec::with_capacity(3);
            for (&v, &e) in &m.exponents {
                for _ in 0..e {
                    vars.push(v as u8);
                }
            }
            terms.push((make_key(&vars), c));
        }
        Ok(Compact::new(eq.num_vars as u8, terms))
    }

    pub fn to_equation(&self) -> CubicEquation {
        let monomials = self
            .terms
            .iter()
            .map(|&(k, c)| {
                Monomial::new(
                    BigInt::from(c),
                    key_powers(k)
                        .map(|(v, e)| (v as usize, e))
                        .collect::<BTreeMap<_, _>>(),
                )
            })
            .collect();
        CubicEquation::new(monomials).expect("compact equations are cubic")
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| key_degree(t.0))
            .max()
            .unwrap_or(0)
    }

    /// `Π |aᵢ|·2^{dᵢ}`, saturating.
    pub fn length(&self) -> u128 {
        self.terms.iter().fold(1u128, |acc, &(k, c)| {
            acc.saturating_mul(c.unsigned_abs() as u128) << key_degree(k)
        })
    }

    pub fn content(&self) -> u64 {
        self.terms
            .iter()
            .fold(0u64, |g, t| g.gcd(&t.1.unsigned_abs()))
    }

    /// Sum of absolute coefficients.
    pub fn weight(&self) -> u128 {
        self.terms.iter().map(|t| t.1.unsigned_abs() as u128).sum()
    }

    pub fn eval_i128(&self, point: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for &(k, c) in &self.terms {
            let mut t = c as i128;
            for v in key_slots(k) {
                if v == PAD {
                    break;
                }
                t = t.checked_mul(point[v as usize] as i128)?;
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    /// Value modulo `m` at a residue point (entries below `m`).
    pub fn eval_mod(&self, point: &[u64], m: u64) -> u64 {
        let mut acc: u64 = 0;
        for &(k, c) in &self.terms {
            let mut t = c.rem_euclid(m as i64) as u64;
            for v in key_slots(k) {
                if v == PAD {
                    break;
                }
                t = t * point[v as usize] % m;
            }
            acc = (acc + t) % m;
        }
        acc
    }

    pub fn canonical(&self) -> Compact {
        canonicalize(self)
    }
}

impl fmt::Display for Compact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_vars as usize;
        for (i, &(k, c)) in self.terms.iter().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c.unsigned_abs() != 1 || k == CONSTANT_KEY {
                factors.push(c.unsigned_abs().to_string());
            }
            for (v, e) in key_powers(k) {
                let name = variable_name(n, v as usize);
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

fn mix(mut h: u64, x: u64) -> u64 {
    h ^= x
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(h << 6)
        .wrapping_add(h >> 2);
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

struct Term {
    powers: Vec<(u8, u32)>,
    degree: u32,
    mag: u64,
    neg: bool,
}

struct Ctx {
    n: usize,
    terms: Vec<Term>,
    var_terms: Vec<Vec<usize>>,
    index: BTreeMap<Key, usize>,
    keys: Vec<Key>,
    /// Echelon basis of the sign patterns reachable by `xᵢ → -xᵢ` and
    /// global negation, over the original term order; `None` when there
    /// are too many terms for a word-sized mask.
    signs: Option<Vec<u64>>,
}

/// Reduces `v` against an echelon basis kept sorted by leading bit.
fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let lead = 63 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v
}

fn insert_basis(basis: &mut Vec<u64>, v: u64) {
    let v = reduce(basis, v);
    if v != 0 {
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
        // keep the basis fully reduced so `reduce` is a single pass
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j {
                    let lead = 63 - basis[j].leading_zeros();
                    if basis[i] >> lead & 1 == 1 {
                        basis[i] ^= basis[j];
                    }
                }
            }
        }
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
}

/// Sign flip masks over `keys` (bit `len-1-i` stands for term `i`).
fn sign_basis(n: usize, keys: &[Key]) -> Vec<u64> {
    let len = keys.len();
    let mut basis = Vec::new();
    let all = if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    };
    insert_basis(&mut basis, all);
    for v in 0..n as u8 {
        let mut mask = 0u64;
        for (i, &k) in keys.iter().enumerate() {
            if key_exponent(k, v) % 2 == 1 {
                mask |= 1 << (len - 1 - i);
            }
        }
        insert_basis(&mut basis, mask);
    }
    basis
}

impl Ctx {
    fn new(c: &Compact, content: u64) -> Ctx {
        let n = c.num_vars as usize;
        let mut var_terms = vec![Vec::new(); n];
        let mut terms = Vec::with_capacity(c.terms.len());
        let mut index = BTreeMap::new();
        for (i, &(k, coef)) in c.terms.iter().enumerate() {
            let powers: Vec<(u8, u32)> = key_powers(k).collect();
            for &(v, _) in &powers {
                var_terms[v as usize].push(i);
            }
            terms.push(Term {
                degree: key_degree(k),
                powers,
                mag: coef.unsigned_abs() / content,
                neg: coef < 0,
            });
            index.insert(k, i);
        }
        let keys: Vec<Key> = c.terms.iter().map(|t| t.0).collect();
        let signs = (keys.len() <= 64).then(|| sign_basis(n, &keys));
        Ctx {
            n,
            terms,
            var_terms,
            index,
            keys,
            signs,
        }
    }

    /// Splits color classes until stable. Colors are ranks `0..k`.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_classes(colors);
        loop {
            let mut sig: Vec<(u32, u64, usize)> = (0..self.n)
                .map(|v| {
                    let mut parts: Vec<u64> = self.var_terms[v]
                        .iter()
                        .map(|&ti| {
                            let t = &self.terms[ti];
                            let mut h = mix(t.degree as u64, t.mag);
                            let mut others: [u64; 2] = [u64::MAX; 2];
                            let mut no = 0;
                            for &(w, e) in &t.powers {
                                if w as usize == v {
                                    h = mix(h, 100 + e as u64);
                                } else {
                                    others[no] = (colors[w as usize] as u64) << 8 | e as u64;
                                    no += 1;
                                }
                            }
                            others.sort_unstable();
                            mix(mix(h, others[0]), others[1])
                        })
                        .collect();
                    parts.sort_unstable();
                    let h = parts.iter().fold(0x5151u64, |h, &p| mix(h, p));
                    (colors[v], h, v)
                })
                .collect();
            sig.sort_unstable();
            let mut rank = 0u32;
            for i in 0..sig.len() {
                if i > 0 && (sig[i].0, sig[i].1) != (sig[i - 1].0, sig[i - 1].1) {
                    rank += 1;
                }
                colors[sig[i].2] = rank;
            }
            let now = rank as usize + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    /// Whether swapping `u` and `v`, followed by some sign change, maps the
    /// equation to itself.
    fn is_twin(&self, u: u8, v: u8) -> bool {
        let Some(basis) = &self.signs else {
            return false;
        };
        let len = self.keys.len();
        let mut diff = 0u64;
        for (i, &k) in self.keys.iter().enumerate() {
            let s = key_slots(k);
            let swapped: Vec<u8> = s
                .iter()
                .filter(|&&x| x != PAD)
                .map(|&x| {
                    if x == u {
                        v
                    } else if x == v {
                        u
                    } else {
                        x
                    }
                })
                .collect();
            let Some(&j) = self.index.get(&make_key(&swapped)) else {
                return false;
            };
            let (a, b) = (&self.terms[i], &self.terms[j]);
            if a.mag != b.mag {
                return false;
            }
            if a.neg != b.neg {
                diff |= 1 << (len - 1 - j);
            }
        }
        reduce(basis, diff) == 0
    }

    fn leaf(&self, labels: &[u32]) -> Vec<(Key, u64, bool)> {
        let mut enc: Vec<(Key, u64, bool)> = self
            .terms
            .iter()
            .map(|t| {
                let mut vars = [PAD; 3];
                let mut n = 0;
                for &(w, e) in &t.powers {
                    for _ in 0..e {
                        vars[n] = labels[w as usize] as u8;
                        n += 1;
                    }
                }
                (make_key(&vars[..n]), t.mag, t.neg)
            })
            .collect();
        enc.sort_unstable_by_key(|e| e.0);
        if enc.len() <= 64 {
            let keys: Vec<Key> = enc.iter().map(|e| e.0).collect();
            let basis = sign_basis(self.n, &keys);
            let len = enc.len();
            let mut s = 0u64;
            for (i, e) in enc.iter().enumerate() {
                if e.2 {
                    s |= 1 << (len - 1 - i);
                }
            }
            let s = reduce(&basis, s);
            for (i, e) in enc.iter_mut().enumerate() {
                e.2 = s >> (len - 1 - i) & 1 == 1;
            }
        }
        enc
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<Vec<(Key, u64, bool)>>) {
        let mut counts = vec![0usize; self.n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| counts[c] > 1);
        let Some(target) = target else {
            let enc = self.leaf(&colors);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        };
        let cell: Vec<usize> = (0..self.n)
            .filter(|&v| colors[v] as usize == target)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.is_twin(u as u8, v as u8)) {
                continue;
            }
            let mut next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| 2 * c + u32::from(c as usize == target && w != v))
                .collect();
            self.refine(&mut next);
            self.search(next, best);
            tried.push(v);
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// The least member of the equivalence class of `c`, after dividing by the
/// content: terms sorted by key and compared as `(key, |a|, a < 0)`.
pub fn canonicalize(c: &Compact) -> Compact {
    let content = c.content().max(1);
    let ctx = Ctx::new(c, content);
    let mut colors = vec![0u32; ctx.n];
    ctx.refine(&mut colors);
    let mut best = None;
    ctx.search(colors, &mut best);
    let best = best.expect("search reaches a leaf");
    Compact {
        num_vars: c.num_vars,
        terms: best
            .into_iter()
            .map(|(k, m, neg)| (k, if neg { -(m as i64) } else { m as i64 }))
            .collect(),
    }
}

/// Canonical form of an arbitrary-precision equation.
pub fn canonicalize_equation(eq: &CubicEquation) -> Result<CubicEquation> {
    Ok(Compact::from_equation(eq)?.canonical().to_equation())
}
