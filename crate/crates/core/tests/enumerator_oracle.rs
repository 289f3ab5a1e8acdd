mod common;

use std::collections::BTreeMap;

use eisenlab::catalog::{enumerate, EnumerateOptions};

fn table(l_max: u64, min_vars: usize) -> BTreeMap<(usize, u64), u64> {
    let mut got = BTreeMap::new();
    for c in enumerate(&EnumerateOptions::new(l_max, min_vars)) {
        *got.entry((c.num_vars as usize, c.length() as u64))
            .or_insert(0) += 1;
    }
    got
}

#[test]
fn counts_match_oracle_at_256() {
    assert_eq!(table(256, 0), common::oracle_table(256));
}

#[test]
fn min_vars_filters_by_variable_count() {
    let all = common::oracle_table(128);
    let want: BTreeMap<(usize, u64), u64> = all.into_iter().filter(|((n, _), _)| *n >= 3).collect();
    assert_eq!(table(128, 3), want);
}

#[test]
fn single_variable_classes() {
    let want: u64 = common::oracle_counts(1, 64).values().sum();
    let got = table(64, 0)
        .iter()
        .filter(|((n, _), _)| *n == 1)
        .map(|(_, c)| *c)
        .sum::<u64>();
    assert_eq!(got, want);
}
