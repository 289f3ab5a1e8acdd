//! Generation of every cubic equation up to a length bound, one canonical
//! representative per equivalence class.
//!
//! Equivalent equations share the multiset of `(degree, |coefficient|)`
//! pairs of their content-normalized form, so generation runs bucket by
//! bucket over those multisets. Inside a bucket, monomials are assigned
//! item by item with variables numbered in order of first use, sign
//! patterns are taken modulo variable and global sign changes, and the
//! survivors are canonicalized and deduplicated.

use std::collections::HashSet;
use std::rc::Rc;

use num_integer::Integer;

use crate::catalog::compact::{make_key, Compact, Key, CONSTANT_KEY, MAX_VARS};
use crate::par::{self, Exec};

/// One monomial slot of a bucket: degree and coefficient magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Item {
    pub degree: u8,
    pub magnitude: u64,
}

impl Item {
    pub fn cost(&self) -> u64 {
        self.magnitude << self.degree
    }
}

/// A multiset of items, sorted by degree descending then magnitude.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bucket {
    pub length: u64,
    pub items: Vec<Item>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub l_max: u64,
    pub min_vars: usize,
    /// Only lengths equal to `l_max`.
    pub exact: bool,
    pub exec: Exec,
}

impl EnumerateOptions {
    pub fn new(l_max: u64, min_vars: usize) -> Self {
        EnumerateOptions {
            l_max,
            min_vars,
            exact: false,
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
}

/// All buckets with at least one cubic item, at most one constant, coprime
/// magnitudes, and total cost within the bound, sorted by `(length, items)`.
pub fn buckets(opts: &EnumerateOptions) -> Vec<Bucket> {
    let mut out = Vec::new();
    let mut items = Vec::new();
    bucket_rec(opts, 1, 0, &mut items, &mut out);
    out.sort();
    out
}

fn bucket_rec(
    opts: &EnumerateOptions,
    cost: u64,
    gcd: u64,
    items: &mut Vec<Item>,
    out: &mut Vec<Bucket>,
) {
    let has_cubic = items.first().is_some_and(|i| i.degree == 3);
    if has_cubic
        && gcd == 1
        && (!opts.exact || cost == opts.l_max)
        && items.iter().map(|i| i.degree as usize).sum::<usize>() >= opts.min_vars
    {
        out.push(Bucket {
            length: cost,
            items: items.clone(),
        });
    }
    if items.len() >= MAX_VARS {
        return;
    }
    let last = items.last().copied();
    let degrees: &[u8] = if items.is_empty() {
        &[3]
    } else {
        &[3, 2, 1, 0]
    };
    for &d in degrees {
        if last.is_some_and(|l| l.degree < d) {
            continue;
        }
        if d == 0 && last.is_some_and(|l| l.degree == 0) {
            continue;
        }
        let mut m = match last {
            Some(l) if l.degree == d => l.magnitude,
            _ => 1,
        };
        loop {
            let item = Item {
                degree: d,
                magnitude: m,
            };
            let Some(next) = cost.checked_mul(item.cost()) else {
                break;
            };
            if next > opts.l_max {
                break;
            }
            if !opts.exact || opts.l_max.is_multiple_of(next) {
                items.push(item);
                bucket_rec(opts, next, gcd.gcd(&m), items, out);
                items.pop();
            }
            m += 1;
        }
    }
}

/// Monomials of degree `d` over labels `0..nv` plus `t` fresh labels
/// `nv..nv+t`, every fresh label used; returned with `t`.
fn monomial_choices(nv: u8, d: u8) -> Vec<(Key, u8)> {
    let mut out = Vec::new();
    let top = nv as usize + d as usize;
    let mut slots = [0u8; 3];
    fn rec(
        slots: &mut [u8; 3],
        pos: usize,
        d: usize,
        start: usize,
        top: usize,
        nv: u8,
        out: &mut Vec<(Key, u8)>,
    ) {
        if pos == d {
            let vars = &slots[..d];
            let fresh: Vec<u8> = {
                let mut f: Vec<u8> = vars.iter().copied().filter(|&v| v >= nv).collect();
                f.dedup();
                f
            };
            let t = fresh.len() as u8;
            if fresh.iter().enumerate().all(|(i, &v)| v == nv + i as u8) {
                out.push((make_key(vars), t));
            }
            return;
        }
        for v in start..top.min(MAX_VARS) {
            slots[pos] = v as u8;
            rec(slots, pos + 1, d, v, top, nv, out);
        }
    }
    if d == 0 {
        return vec![(CONSTANT_KEY, 0)];
    }
    rec(&mut slots, 0, d as usize, 0, top, nv, &mut out);
    out
}

type Choices = Rc<Vec<(Key, u8)>>;

struct Assign<'a> {
    items: &'a [Item],
    choices: Vec<[Option<Choices>; 4]>,
    min_vars: usize,
    keys: Vec<Key>,
    remaining_degree: Vec<usize>,
    seen: HashSet<Compact>,
}

impl Assign<'_> {
    fn rec(&mut self, i: usize, nv: u8) {
        if i == self.items.len() {
            if nv as usize >= self.min_vars {
                self.emit(nv);
            }
            return;
        }
        if (nv as usize) + self.remaining_degree[i] < self.min_vars {
            return;
        }
        let item = self.items[i];
        let same_as_prev = i > 0 && self.items[i - 1] == item;
        let slot = &mut self.choices[nv as usize][item.degree as usize];
        let choices = slot
            .get_or_insert_with(|| Rc::new(monomial_choices(nv, item.degree)))
            .clone();
        for &(k, t) in choices.iter() {
            if same_as_prev && k <= self.keys[i - 1] {
                continue;
            }
            if self.keys.contains(&k) {
                continue;
            }
            self.keys.push(k);
            self.rec(i + 1, nv + t);
            self.keys.pop();
        }
    }

    fn emit(&mut self, nv: u8) {
        let len = self.keys.len();
        // sign changes reachable by xᵢ → -xᵢ and global negation
        let mut pivots: Vec<u64> = Vec::new();
        let mut basis: Vec<u64> = Vec::new();
        let add = |mut v: u64, basis: &mut Vec<u64>, pivots: &mut Vec<u64>| {
            for (b, p) in basis.iter().zip(pivots.iter()) {
                if v & p != 0 {
                    v ^= b;
                }
            }
            if v != 0 {
                let p = 1u64 << (63 - v.leading_zeros());
                for (b, _) in basis.iter_mut().zip(pivots.iter()) {
                    if *b & p != 0 {
                        *b ^= v;
                    }
                }
                basis.push(v);
                pivots.push(p);
            }
        };
        add(u64::MAX >> (64 - len), &mut basis, &mut pivots);
        for v in 0..nv {
            let mut mask = 0;
            for (i, &k) in self.keys.iter().enumerate() {
                if crate::catalog::compact::key_exponent(k, v) % 2 == 1 {
                    mask |= 1 << i;
                }
            }
            add(mask, &mut basis, &mut pivots);
        }
        let pivot_mask: u64 = pivots.iter().fold(0, |a, p| a | p);
        let free: Vec<usize> = (0..len).filter(|&i| pivot_mask >> i & 1 == 0).collect();
        for pattern in 0u64..(1 << free.len()) {
            let terms: Vec<(Key, i64)> = self
                .keys
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    let neg = free
                        .iter()
                        .position(|&f| f == i)
                        .is_some_and(|j| pattern >> j & 1 == 1);
                    let m = self.items[i].magnitude as i64;
                    (k, if neg { -m } else { m })
                })
                .collect();
            self.seen.insert(Compact::new(nv, terms).canonical());
        }
    }
}

/// Canonical representatives of every class in `bucket` with at least
/// `min_vars` variables, sorted.
pub fn bucket_classes(bucket: &Bucket, min_vars: usize) -> Vec<Compact> {
    let items = &bucket.items;
    let mut remaining_degree = vec![0usize; items.len() + 1];
    for i in (0..items.len()).rev() {
        remaining_degree[i] = remaining_degree[i + 1] + items[i].degree as usize;
    }
    let mut a = Assign {
        items,
        choices: vec![Default::default(); MAX_VARS + 1],
        min_vars,
        keys: Vec::with_capacity(items.len()),
        remaining_degree,
        seen: HashSet::new(),
    };
    a.rec(0, 0);
    let mut out: Vec<Compact> = a.seen.into_iter().collect();
    out.sort();
    out
}

/// Runs `f` on the classes of every bucket and collects the results in
/// bucket order.
pub fn map_buckets<R, F>(opts: &EnumerateOptions, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&Bucket, Vec<Compact>) -> R + Sync + Send,
{
    let bs = buckets(opts);
    par::map(opts.exec, &bs, |b| f(b, bucket_classes(b, opts.min_vars)))
}

/// Every class with `L ≤ l_max` (or `L = l_max` when exact) and at least
/// `min_vars` variables, ordered by length and then canonical encoding.
pub fn enumerate(opts: &EnumerateOptions) -> Vec<Compact> {
    let mut all: Vec<(u64, Compact)> = map_buckets(opts, |b, cs| {
        cs.into_iter().map(|c| (b.length, c)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    all.sort();
    all.into_iter().map(|(_, c)| c).collect()
}

pub fn enumerate_equations(l_max: u64, min_vars: usize) -> Vec<Compact> {
    enumerate(&EnumerateOptions::new(l_max, min_vars))
}
