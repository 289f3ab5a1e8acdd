//! Screening of enumerated equations: small solutions, congruence
//! obstructions, and a bounded search.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::catalog::compact::{Compact, CONSTANT_KEY};
use crate::catalog::enumerate::{map_buckets, EnumerateOptions};
use crate::catalog::local::{has_root_mod, DEFAULT_MODULI, DEFAULT_SWEEP_BUDGET};
use crate::par::Exec;
use crate::search::{search_compact, SearchOptions};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterOutcome {
    Solved(Vec<i64>),
    LocallyObstructed(u64),
    TriviallyObstructed(String),
    Open,
}

impl FilterOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            FilterOutcome::Solved(_) => "solved",
            FilterOutcome::LocallyObstructed(_) => "locally_obstructed",
            FilterOutcome::TriviallyObstructed(_) => "trivially_obstructed",
            FilterOutcome::Open => "open",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FilterOutcome::Solved(p) => json!({"tag": self.tag(), "point": p}),
            FilterOutcome::LocallyObstructed(m) => json!({"tag": self.tag(), "modulus": m}),
            FilterOutcome::TriviallyObstructed(r) => json!({"tag": self.tag(), "reason": r}),
            FilterOutcome::Open => json!({"tag": self.tag()}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub l_max: u64,
    pub min_vars: usize,
    /// Classify only equations of length exactly `l_max`.
    pub exact: bool,
    pub moduli: Vec<u64>,
    pub search_bound: i64,
    /// Residue tuples allowed per congruence sweep; larger sweeps are skipped.
    pub sweep_budget: u128,
    /// Univariate solves spent on the quick search at bound 1.
    pub quick_effort: u64,
    /// Univariate solves spent on the final search.
    pub search_effort: u64,
    pub exec: Exec,
}

impl PipelineOptions {
    pub fn new(l_max: u64, min_vars: usize, search_bound: i64) -> Self {
        PipelineOptions {
            l_max,
            min_vars,
            exact: false,
            moduli: DEFAULT_MODULI.to_vec(),
            search_bound,
            sweep_budget: DEFAULT_SWEEP_BUDGET,
            quick_effort: 1 << 12,
            search_effort: 1 << 20,
            exec: Exec::default(),
        }
    }

    pub fn exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn moduli(mut self, moduli: &[u64]) -> Self {
        self.moduli = moduli.to_vec();
        self
    }

    pub fn search_effort(mut self, effort: u64) -> Self {
        self.search_effort = effort;
        self
    }
}

/// Scans `{-1, 0, 1}ⁿ` directly, visiting at most `effort` points.
fn unit_point(eq: &Compact, effort: u64) -> Option<Vec<i64>> {
    let n = eq.num_vars as usize;
    let mut p = vec![0i64; n];
    for _ in 0..effort {
        if eq.eval_i128(&p) == Some(0) {
            return Some(p);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            p[i] = match p[i] {
                0 => 1,
                1 => -1,
                _ => 0,
            };
            if p[i] != 0 {
                break;
            }
            i += 1;
        }
    }
    None
}

/// The gcd of the non-constant coefficients must divide the constant.
fn gcd_obstruction(eq: &Compact) -> Option<String> {
    let constant = eq.terms.iter().find(|t| t.0 == CONSTANT_KEY)?.1;
    let g = eq
        .terms
        .iter()
        .filter(|t| t.0 != CONSTANT_KEY)
        .fold(0u64, |g, t| g.gcd(&t.1.unsigned_abs()));
    (g > 1 && constant.unsigned_abs() % g != 0)
        .then(|| format!("coefficient gcd {g} does not divide the constant term {constant}"))
}

fn obstruction(eq: &Compact, opts: &PipelineOptions) -> Option<FilterOutcome> {
    for &m in &opts.moduli {
        if has_root_mod(eq, m, opts.sweep_budget) == Some(false) {
            return Some(FilterOutcome::LocallyObstructed(m));
        }
    }
    gcd_obstruction(eq).map(FilterOutcome::TriviallyObstructed)
}

enum Round {
    Found(Vec<i64>),
    Continue,
    Stop,
}

/// Searches the box of radius `bound` within the remaining effort.
fn round(eq: &Compact, bound: i64, opts: &PipelineOptions, spent: &mut u64) -> Round {
    let search = SearchOptions::new(bound)
        .limit(1)
        .effort(opts.search_effort.saturating_sub(*spent))
        .exec(Exec::Sequential);
    let Ok(r) = search_compact(eq, &search) else {
        return Round::Stop;
    };
    if let Some(p) = r.solutions.into_iter().next() {
        return Round::Found(p);
    }
    *spent += r.work;
    if !r.complete || *spent >= opts.search_effort || bound >= opts.search_bound {
        Round::Stop
    } else {
        Round::Continue
    }
}

/// Runs the screening steps on one equation: points in `{-1,0,1}ⁿ`, small
/// boxes, congruence obstructions, then boxes doubling up to the search
/// bound.
pub fn classify_equation(eq: &Compact, opts: &PipelineOptions) -> FilterOutcome {
    if let Some(p) = unit_point(eq, opts.quick_effort) {
        return FilterOutcome::Solved(p);
    }
    let mut spent = 0u64;
    let mut bound = 2i64;
    let mut stopped = opts.search_bound < 2;
    while !stopped && bound <= 4 {
        match round(eq, bound.min(opts.search_bound), opts, &mut spent) {
            Round::Found(p) => return FilterOutcome::Solved(p),
            Round::Stop => stopped = true,
            Round::Continue => bound *= 2,
        }
    }
    if let Some(o) = obstruction(eq, opts) {
        return o;
    }
    while !stopped {
        match round(eq, bound.min(opts.search_bound), opts, &mut spent) {
            Round::Found(p) => return FilterOutcome::Solved(p),
            Round::Stop => stopped = true,
            Round::Continue => bound *= 2,
        }
    }
    FilterOutcome::Open
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassifyReport {
    pub total: u64,
    pub solved: u64,
    pub trivially_obstructed: u64,
    /// Count of equations obstructed by each modulus.
    pub obstructed_by: BTreeMap<u64, u64>,
    /// Surviving equations ordered by length then canonical encoding.
    pub open: Vec<(u64, Compact)>,
}

impl ClassifyReport {
    pub fn locally_obstructed(&self) -> u64 {
        self.obstructed_by.values().sum()
    }

    pub fn summary_json(&self) -> Value {
        let by: serde_json::Map<String, Value> = self
            .obstructed_by
            .iter()
            .map(|(m, c)| (m.to_string(), json!(c)))
            .collect();
        json!({
            "total": self.total,
            "solved": self.solved,
            "locally_obstructed": self.locally_obstructed(),
            "obstructed_by_modulus": by,
            "trivially_obstructed": self.trivially_obstructed,
            "open": self.open.len(),
        })
    }
}

/// Classifies every enumerated equation and keeps the survivors.
pub fn classify(opts: &PipelineOptions) -> ClassifyReport {
    let enum_opts = EnumerateOptions::new(opts.l_max, opts.min_vars)
        .exact(opts.exact)
        .exec(opts.exec);
    let parts = map_buckets(&enum_opts, |b, classes| {
        let mut r = ClassifyReport::default();
        for c in classes {
            r.total += 1;
            match classify_equation(&c, opts) {
                FilterOutcome::Solved(_) => r.solved += 1,
                FilterOutcome::LocallyObstructed(m) => *r.obstructed_by.entry(m).or_default() += 1,
                FilterOutcome::TriviallyObstructed(_) => r.trivially_obstructed += 1,
                FilterOutcome::Open => r.open.push((b.length, c)),
            }
        }
        r
    });
    let mut report = ClassifyReport::default();
    for p in parts {
        report.total += p.total;
        report.solved += p.solved;
        report.trivially_obstructed += p.trivially_obstructed;
        for (m, c) in p.obstructed_by {
            *report.obstructed_by.entry(m).or_default() += c;
        }
        report.open.extend(p.open);
    }
    report.open.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Compact {
        Compact::from_equation(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn named_cases() {
        let opts = PipelineOptions::new(128, 3, 100);
        let solved = classify_equation(&c("x*y*z+1"), &opts);
        let FilterOutcome::Solved(p) = solved else {
            panic!("{solved:?}")
        };
        assert_eq!(c("x*y*z+1").eval_i128(&p), Some(0));
        assert_eq!(
            classify_equation(&c("2*x*y*z+1"), &opts),
            FilterOutcome::LocallyObstructed(2)
        );
        assert_eq!(
            classify_equation(&c("x^2*y+y^2+z^2+1"), &opts),
            FilterOutcome::Open
        );
        assert!(matches!(
            classify_equation(&c("17*x*y*z+1"), &opts),
            FilterOutcome::TriviallyObstructed(_)
        ));
    }

    #[test]
    fn report_is_consistent() {
        let opts = PipelineOptions::new(256, 3, 50);
        let r = classify(&opts);
        assert_eq!(
            r.total,
            r.solved + r.locally_obstructed() + r.trivially_obstructed + r.open.len() as u64
        );
        assert!(r
            .open
            .iter()
            .any(|(l, e)| *l == 128 && *e == c("x^2*y+y^2+z^2+1").canonical()));
        let seq = classify(&opts.clone().exec(Exec::Sequential));
        assert_eq!(seq, r);
    }
}
