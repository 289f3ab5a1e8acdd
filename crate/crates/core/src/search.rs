//! Exhaustive integer solution search in the box `max |xᵢ| ≤ B`.
//!
//! All variables but one are enumerated; the remaining one is either
//! enumerated too ([`Strategy::Exhaustive`]) or recovered exactly as an
//! integer root of the resulting univariate polynomial of degree at most
//! three ([`Strategy::Solve`]). Per-variable residue sieves drop values
//! that cannot be completed to a solution modulo some small modulus.

use crate::catalog::compact::{key_powers, Compact};
use crate::catalog::equation::CubicEquation;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Largest `m^n` swept when building a sieve table for modulus `m`.
pub const SIEVE_SWEEP_LIMIT: u64 = 2_000_000;

/// Coefficient-times-bound budget: `Σ|aᵢ|·B³` must stay below this so that
/// every intermediate value fits a machine word.
const MAGNITUDE_LIMIT: u128 = 1 << 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate every coordinate.
    Exhaustive,
    /// Solve for the given variable, or pick one automatically.
    Solve(Option<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub bound: i64,
    pub sieve_moduli: Vec<u64>,
    pub strategy: Strategy,
    /// Stop after this many solutions.
    pub limit: Option<usize>,
    /// Stop after this many univariate solves (or evaluations).
    pub effort: Option<u64>,
    pub exec: Exec,
}

impl SearchOptions {
    pub fn new(bound: i64) -> Self {
        SearchOptions {
            bound,
            sieve_moduli: Vec::new(),
            strategy: Strategy::Solve(None),
            limit: None,
            effort: None,
            exec: Exec::default(),
        }
    }

    pub fn sieve(mut self, moduli: &[u64]) -> Self {
        self.sieve_moduli = moduli.to_vec();
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn effort(mut self, effort: u64) -> Self {
        self.effort = Some(effort);
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// Solutions in variable order, sorted.
    pub solutions: Vec<Vec<i64>>,
    /// False when a limit or the effort budget cut the search short.
    pub complete: bool,
    /// Univariate solves or point evaluations performed.
    pub work: u64,
    /// The variable recovered by root finding, if any.
    pub solved_var: Option<usize>,
}

/// For each variable, which residues mod `m` occur in some solution mod
/// `m`; `None` if the sweep would exceed [`SIEVE_SWEEP_LIMIT`].
pub fn allowed_residues(eq: &Compact, m: u64) -> Option<Vec<Vec<bool>>> {
    let n = eq.num_vars as usize;
    let total = (m as u128).checked_pow(n as u32)?;
    if m < 2 || total > SIEVE_SWEEP_LIMIT as u128 {
        return None;
    }
    let mut allowed = vec![vec![false; m as usize]; n];
    let mut point = vec![0u64; n];
    loop {
        if eq.eval_mod(&point, m) == 0 {
            for (v, &r) in point.iter().enumerate() {
                allowed[v][r as usize] = true;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(allowed);
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

/// `0, 1, -1, 2, -2, ..., B, -B`, keeping values allowed by every table.
fn value_list(bound: i64, var: usize, tables: &[(u64, Vec<Vec<bool>>)]) -> Vec<i64> {
    let keep = |x: i64| {
        tables
            .iter()
            .all(|(m, t)| t[var][x.rem_euclid(*m as i64) as usize])
    };
    let mut out = Vec::new();
    if keep(0) {
        out.push(0);
    }
    for k in 1..=bound {
        for x in [k, -k] {
            if keep(x) {
                out.push(x);
            }
        }
    }
    out
}

pub(crate) fn isqrt_u128(d: u128) -> u128 {
    let mut r = (d as f64).sqrt() as u128;
    while r * r > d {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= d {
        r += 1;
    }
    r
}

const SQ_MOD: u32 = 64 * 63 * 65 * 11;

struct SquareFilter {
    m64: u64,
    m63: Vec<bool>,
    m65: Vec<bool>,
    m11: Vec<bool>,
}

impl SquareFilter {
    fn new() -> Self {
        let table = |m: u32| {
            let mut t = vec![false; m as usize];
            for x in 0..m {
                t[(x * x % m) as usize] = true;
            }
            t
        };
        let mut m64 = 0u64;
        for x in 0u64..64 {
            m64 |= 1 << (x * x % 64);
        }
        SquareFilter {
            m64,
            m63: table(63),
            m65: table(65),
            m11: table(11),
        }
    }

    /// `Some(√d)` when `d` is a perfect square.
    fn sqrt(&self, d: u128) -> Option<u128> {
        let r = (d % SQ_MOD as u128) as u32;
        if self.m64 >> (r & 63) & 1 == 0
            || !self.m63[(r % 63) as usize]
            || !self.m65[(r % 65) as usize]
            || !self.m11[(r % 11) as usize]
        {
            return None;
        }
        let s = isqrt_u128(d);
        (s * s == d).then_some(s)
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn eval_cubic(c: &[i64; 4], z: i64) -> i128 {
    let z = z as i128;
    ((c[3] as i128 * z + c[2] as i128) * z + c[1] as i128) * z + c[0] as i128
}

/// Integer roots in `[-bound, bound]` of `c₃z³ + c₂z² + c₁z + c₀`, which
/// must not be identically zero.
fn univariate_roots(c: &[i64; 4], bound: i64, sq: &SquareFilter, out: &mut Vec<i64>) {
    if c[3] != 0 {
        cubic_roots(c, bound, out);
    } else if c[2] != 0 {
        let (a, b, k) = (c[2] as i128, c[1] as i128, c[0] as i128);
        let d = b * b - 4 * a * k;
        if d < 0 {
            return;
        }
        let Some(r) = sq.sqrt(d as u128) else { return };
        let r = r as i128;
        for num in [-b + r, -b - r] {
            if num % (2 * a) == 0 {
                let z = num / (2 * a);
                if z.abs() <= bound as i128 {
                    out.push(z as i64);
                }
            }
            if r == 0 {
                break;
            }
        }
    } else if c[1] != 0 && c[0] % c[1] == 0 {
        let z = -(c[0] / c[1]);
        if z.abs() <= bound {
            out.push(z);
        }
    }
}

fn cubic_roots(c: &[i64; 4], bound: i64, out: &mut Vec<i64>) {
    let (c3, c2, c1) = (c[3] as i128, c[2] as i128, c[1] as i128);
    let disc = 4 * c2 * c2 - 12 * c3 * c1;
    let mut windows: Vec<i64> = Vec::new();
    if disc >= 0 {
        let s = isqrt_u128(disc as u128) as i128;
        for num in [-2 * c2 - s, -2 * c2 + s] {
            let p = floor_div(num, 6 * c3).clamp(-(bound as i128) - 8, bound as i128 + 8);
            windows.push(p as i64);
        }
        windows.sort_unstable();
    }
    let start = out.len();
    let mut lo = -bound;
    for &p in &windows {
        let hi = (p - 3).min(bound);
        if lo <= hi {
            monotone_root(c, lo, hi, out);
        }
        for z in (p - 2).max(-bound)..=(p + 2).min(bound) {
            if eval_cubic(c, z) == 0 {
                out.push(z);
            }
        }
        lo = lo.max(p + 3);
    }
    if lo <= bound {
        monotone_root(c, lo, bound, out);
    }
    out[start..].sort_unstable();
    let mut seen = start;
    for i in start..out.len() {
        if i == start || out[i] != out[seen - 1] {
            out[seen] = out[i];
            seen += 1;
        }
    }
    out.truncate(seen);
}

fn monotone_root(c: &[i64; 4], mut lo: i64, mut hi: i64, out: &mut Vec<i64>) {
    let fl = eval_cubic(c, lo);
    let fh = eval_cubic(c, hi);
    if fl == 0 {
        out.push(lo);
        return;
    }
    if fh == 0 {
        out.push(hi);
        return;
    }
    if (fl > 0) == (fh > 0) {
        return;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let fm = eval_cubic(c, mid);
        if fm == 0 {
            out.push(mid);
            return;
        }
        if (fm > 0) == (fl > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Terms over the outer variables still to be fixed: their exponents, the
/// exponent of the solved variable, and the coefficient.
type Terms = Vec<(Vec<u8>, u8, i64)>;

fn substitute(terms: &Terms, x: i64) -> Terms {
    let mut out: Terms = terms
        .iter()
        .map(|(exps, e, c)| {
            let mut v = *c;
            for _ in 0..exps[0] {
                v *= x;
            }
            (exps[1..].to_vec(), *e, v)
        })
        .collect();
    out.sort_unstable_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    let mut merged: Terms = Vec::with_capacity(out.len());
    for t in out {
        match merged.last_mut() {
            Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 += t.2,
            _ => merged.push(t),
        }
    }
    merged.retain(|t| t.2 != 0);
    merged
}

struct Plan<'a> {
    n: usize,
    bound: i64,
    solved: usize,
    outer: Vec<usize>,
    lists: Vec<Vec<i64>>,
    exhaustive: bool,
    limit: Option<usize>,
    effort: Option<u64>,
    sq: &'a SquareFilter,
}

struct Sink {
    found: Vec<Vec<i64>>,
    work: u64,
    stopped: bool,
}

impl Plan<'_> {
    fn budget_hit(&self, sink: &mut Sink) -> bool {
        if self.effort.is_some_and(|e| sink.work >= e)
            || self.limit.is_some_and(|l| sink.found.len() >= l)
        {
            sink.stopped = true;
        }
        sink.stopped
    }

    fn record(&self, prefix: &[i64], z: i64, sink: &mut Sink) {
        let mut p = vec![0i64; self.n];
        for (i, &v) in self.outer.iter().enumerate() {
            p[v] = prefix[i];
        }
        p[self.solved] = z;
        sink.found.push(p);
    }

    /// Solves or scans the last coordinate for fixed outer values.
    fn finish(&self, c: &[i64; 4], prefix: &[i64], sink: &mut Sink, roots: &mut Vec<i64>) {
        let zs = &self.lists[self.solved];
        if self.exhaustive {
            for &z in zs {
                sink.work += 1;
                if eval_cubic(c, z) == 0 {
                    self.record(prefix, z, sink);
                }
            }
            return;
        }
        sink.work += 1;
        if c.iter().all(|&x| x == 0) {
            for &z in zs {
                self.record(prefix, z, sink);
                if self.budget_hit(sink) {
                    return;
                }
            }
            return;
        }
        roots.clear();
        univariate_roots(c, self.bound, self.sq, roots);
        for &z in roots.iter() {
            self.record(prefix, z, sink);
        }
    }

    fn run(&self, terms: &Terms, prefix: &mut Vec<i64>, values: &[i64], sink: &mut Sink) {
        let depth = prefix.len();
        let mut roots = Vec::new();
        if depth + 1 == self.outer.len() {
            // last outer variable: coefficient table a[j][e] of y^j z^e
            let mut a = [[0i64; 4]; 4];
            for (exps, e, c) in terms {
                a[exps[0] as usize][*e as usize] += c;
            }
            let used: Vec<usize> = (0..4).filter(|&j| a[j].iter().any(|&x| x != 0)).collect();
            for &y in values {
                let pows = [1, y, y * y, y * y * y];
                let mut c = [0i64; 4];
                for &j in &used {
                    for e in 0..4 {
                        c[e] += a[j][e] * pows[j];
                    }
                }
                prefix.push(y);
                self.finish(&c, prefix, sink, &mut roots);
                prefix.pop();
                if self.budget_hit(sink) {
                    return;
                }
            }
            return;
        }
        for &x in values {
            let next = substitute(terms, x);
            prefix.push(x);
            let child = &self.lists[self.outer[depth + 1]];
            self.run(&next, prefix, child, sink);
            prefix.pop();
            if self.budget_hit(sink) {
                return;
            }
        }
    }
}

fn pick_solved(eq: &Compact, lists: &[Vec<i64>]) -> usize {
    let n = eq.num_vars as usize;
    let mut degree = vec![0u32; n];
    for &(k, _) in &eq.terms {
        for (v, e) in key_powers(k) {
            degree[v as usize] = degree[v as usize].max(e);
        }
    }
    (0..n)
        .min_by_key(|&v| {
            (
                degree[v],
                std::cmp::Reverse(lists[v].len()),
                std::cmp::Reverse(v),
            )
        })
        .expect("at least one variable")
}

/// Searches `eq = 0` on the box `max |xᵢ| ≤ bound`.
pub fn search_compact(eq: &Compact, opts: &SearchOptions) -> Result<SearchReport> {
    let n = eq.num_vars as usize;
    let bound = opts.bound;
    if bound < 0 {
        return Err(Error::PreconditionViolated("negative bound".into()));
    }
    let b = bound as u128;
    if eq.weight().saturating_mul(b * b * b) >= MAGNITUDE_LIMIT {
        return Err(Error::SearchOverflow(format!(
            "coefficient weight {} with bound {bound}",
            eq.weight()
        )));
    }
    let tables: Vec<(u64, Vec<Vec<bool>>)> = opts
        .sieve_moduli
        .iter()
        .filter_map(|&m| allowed_residues(eq, m).map(|t| (m, t)))
        .collect();
    let lists: Vec<Vec<i64>> = (0..n).map(|v| value_list(bound, v, &tables)).collect();
    let (solved, exhaustive) = match opts.strategy {
        Strategy::Exhaustive => (n - 1, true),
        Strategy::Solve(Some(v)) if v < n => (v, false),
        Strategy::Solve(Some(v)) => {
            return Err(Error::PreconditionViolated(format!(
                "variable {v} out of range for {n} variables"
            )))
        }
        Strategy::Solve(None) => (pick_solved(eq, &lists), false),
    };
    let outer: Vec<usize> = (0..n).filter(|&v| v != solved).collect();
    let sq = SquareFilter::new();
    let plan = Plan {
        n,
        bound,
        solved,
        outer: outer.clone(),
        lists,
        exhaustive,
        limit: opts.limit,
        effort: opts.effort,
        sq: &sq,
    };
    let terms: Terms = eq
        .terms
        .iter()
        .map(|&(k, c)| {
            let mut exps = vec![0u8; outer.len()];
            let mut e_s = 0u8;
            for (v, e) in key_powers(k) {
                if v as usize == solved {
                    e_s = e as u8;
                } else {
                    let i = outer.iter().position(|&o| o == v as usize).expect("outer");
                    exps[i] = e as u8;
                }
            }
            (exps, e_s, c)
        })
        .collect();

    let mut sink = Sink {
        found: Vec::new(),
        work: 0,
        stopped: false,
    };
    if outer.is_empty() {
        let mut c = [0i64; 4];
        for (_, e, coef) in &terms {
            c[*e as usize] += coef;
        }
        let mut roots = Vec::new();
        plan.finish(&c, &[], &mut sink, &mut roots);
        plan.budget_hit(&mut sink);
    } else if opts.exec == Exec::Parallel && opts.limit.is_none() && opts.effort.is_none() {
        let first = &plan.lists[outer[0]];
        let ranges = par::chunks(first.len(), 4 * par::workers().max(1) * 8);
        let parts = par::map(opts.exec, &ranges, |r| {
            let mut s = Sink {
                found: Vec::new(),
                work: 0,
                stopped: false,
            };
            plan.run(&terms, &mut Vec::new(), &first[r.clone()], &mut s);
            s
        });
        for p in parts {
            sink.work += p.work;
            sink.found.extend(p.found);
        }
    } else {
        plan.run(&terms, &mut Vec::new(), &plan.lists[outer[0]], &mut sink);
    }
    let complete = !sink.stopped;
    let mut solutions = sink.found;
    solutions.sort_unstable();
    solutions.dedup();
    if let Some(l) = opts.limit {
        solutions.truncate(l);
    }
    Ok(SearchReport {
        solutions,
        complete,
        work: sink.work,
        solved_var: (!exhaustive).then_some(solved),
    })
}

/// Every solution in the box `max |xᵢ| ≤ bound`, recovering one variable
/// by root finding and pre-filtering the rest by residues modulo
/// `sieve_moduli`.
pub fn search_box(eq: &CubicEquation, bound: u64, sieve_moduli: &[u64]) -> Result<Vec<Vec<i64>>> {
    let c = Compact::from_equation(eq)?;
    let bound =
        i64::try_from(bound).map_err(|_| Error::SearchOverflow(format!("bound {bound}")))?;
    let r = search_compact(&c, &SearchOptions::new(bound).sieve(sieve_moduli))?;
    Ok(r.solutions)
}
