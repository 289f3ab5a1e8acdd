//! Brute-force class counts: every labeled equation is generated, and
//! orbits under variable swaps, sign changes, and negation are counted by
//! breadth-first search.

use std::collections::{BTreeMap, HashSet, VecDeque};

/// A term packs two-bit exponents for up to 9 variables above a biased
/// coefficient; an equation is its sorted term list.
type Eq = Vec<u64>;

const COEF_BITS: u32 = 24;
const BIAS: i64 = 1 << 23;

fn pack(exps: u32, coef: i64) -> u64 {
    (exps as u64) << COEF_BITS | (coef + BIAS) as u64
}

fn unpack(t: u64) -> (u32, i64) {
    (
        (t >> COEF_BITS) as u32,
        (t & ((1 << COEF_BITS) - 1)) as i64 - BIAS,
    )
}

fn exp(exps: u32, v: usize) -> u32 {
    exps >> (2 * v) & 3
}

fn degree(exps: u32, n: usize) -> u32 {
    (0..n).map(|v| exp(exps, v)).sum()
}

fn monomials(n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for code in 0..(1u32 << (2 * n)) {
        if degree(code, n) <= 3 && (0..n).all(|v| exp(code, v) <= 3) {
            out.push(code);
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct Gen<'a> {
    n: usize,
    l_max: u64,
    monos: &'a [u32],
    terms: Vec<u64>,
    out: Vec<(u64, Eq)>,
}

impl Gen<'_> {
    fn rec(&mut self, start: usize, cost: u64, covered: u32) {
        let all = (1u32 << self.n) - 1;
        let cubic = self.terms.iter().any(|&t| degree(unpack(t).0, self.n) == 3);
        if covered == all && cubic {
            let g = self.terms.iter().fold(0, |g, &t| gcd(g, unpack(t).1));
            if g == 1 {
                let mut e = self.terms.clone();
                e.sort_unstable();
                self.out.push((cost, e));
            }
        }
        for i in start..self.monos.len() {
            let m = self.monos[i];
            let d = degree(m, self.n);
            let mut cov = covered;
            for v in 0..self.n {
                if exp(m, v) > 0 {
                    cov |= 1 << v;
                }
            }
            let missing = self.n as u32 - cov.count_ones();
            for c in 1.. {
                let next = cost * ((c as u64) << d);
                if next << missing > self.l_max {
                    break;
                }
                for s in [c, -c] {
                    self.terms.push(pack(m, s));
                    self.rec(i + 1, next, cov);
                    self.terms.pop();
                }
            }
        }
    }
}

fn transform(e: &Eq, n: usize, op: usize) -> Eq {
    let mut out: Eq = e
        .iter()
        .map(|&t| {
            let (x, c) = unpack(t);
            if op + 1 < n {
                let (a, b) = (exp(x, op), exp(x, op + 1));
                let mut y = x & !(0xF << (2 * op));
                y |= a << (2 * (op + 1)) | b << (2 * op);
                pack(y, c)
            } else if op + 1 == n {
                pack(x, if exp(x, 0) % 2 == 1 { -c } else { c })
            } else {
                pack(x, -c)
            }
        })
        .collect();
    out.sort_unstable();
    out
}

/// Number of classes with `n` variables, keyed by length.
pub fn oracle_counts(n: usize, l_max: u64) -> BTreeMap<u64, u64> {
    let monos = monomials(n);
    let mut g = Gen {
        n,
        l_max,
        monos: &monos,
        terms: Vec::new(),
        out: Vec::new(),
    };
    g.rec(0, 1, 0);
    let mut seen: HashSet<Eq> = HashSet::with_capacity(g.out.len());
    let mut counts = BTreeMap::new();
    for (l, e) in g.out {
        if seen.contains(&e) {
            continue;
        }
        *counts.entry(l).or_insert(0) += 1;
        let mut queue = VecDeque::from([e.clone()]);
        seen.insert(e);
        while let Some(cur) = queue.pop_front() {
            for op in 0..=n {
                let next = transform(&cur, n, op);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    counts
}

/// Oracle counts keyed by `(num_vars, L)` for every class with `L ≤ l_max`.
pub fn oracle_table(l_max: u64) -> BTreeMap<(usize, u64), u64> {
    let mut want = BTreeMap::new();
    let max_vars = (63 - l_max.leading_zeros()) as usize;
    for n in 1..=max_vars {
        for (l, c) in oracle_counts(n, l_max) {
            want.insert((n, l), c);
        }
    }
    want
}
