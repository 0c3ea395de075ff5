//! Strategy comparisons over one dataset: run the join under a grid of
//! selector/verifier choices and attach closed-form probe totals so the
//! selection strategies can be ranked without instrumenting the join.

use std::collections::BTreeSet;

use segjoin::{
    closed_form_count, rs_join, self_join, sort_dataset, JoinConfig, Record, SelectionStrategy,
    Threshold, VerifierKind,
};

use crate::report::ReportRecord;

/// Closed-form probe totals, ladder order (length, shift, position,
/// multimatch), for a self join: every (probing string, live indexed
/// length) combination the sorted stream would enumerate.
pub fn selection_totals_self(records: &[Record], tau: Threshold) -> [u64; 4] {
    let t = tau.get();
    let mut sorted: Vec<usize> = records
        .iter()
        .map(Record::len)
        .filter(|&len| len >= tau.segments())
        .collect();
    sorted.sort_unstable();
    let mut live = BTreeSet::new();
    let mut totals = [0u64; 4];
    for len in sorted {
        for &l in live.range(len.saturating_sub(t)..=len) {
            add_counts(&mut totals, len, l, tau);
        }
        live.insert(len);
    }
    totals
}

/// Closed-form probe totals for a cross join: the probing side sweeps the
/// indexed side's distinct lengths within `tau` of its own.
pub fn selection_totals_rs(probing: &[Record], indexed: &[Record], tau: Threshold) -> [u64; 4] {
    let t = tau.get();
    let lengths: BTreeSet<usize> = indexed
        .iter()
        .map(Record::len)
        .filter(|&len| len >= tau.segments())
        .collect();
    let mut totals = [0u64; 4];
    for r in probing {
        let len = r.len();
        if len < tau.segments() {
            continue;
        }
        for &l in lengths.range(len.saturating_sub(t)..=len + t) {
            add_counts(&mut totals, len, l, tau);
        }
    }
    totals
}

fn add_counts(totals: &mut [u64; 4], s_len: usize, l: usize, tau: Threshold) {
    for (slot, strategy) in totals.iter_mut().zip(SelectionStrategy::ALL) {
        *slot += closed_form_count(strategy, s_len, l, tau) as u64;
    }
}

/// Self-join the dataset under every selector/verifier combination and
/// report one record per run. All runs share the dataset's closed-form
/// selection totals; pairs are asserted identical across the grid.
pub fn run_experiment(records: &[Record], tau: Threshold) -> Vec<ReportRecord> {
    let mut sorted = records.to_vec();
    sort_dataset(&mut sorted);
    let totals = selection_totals_self(&sorted, tau);

    let mut reports = Vec::new();
    let mut baseline = None;
    for strategy in SelectionStrategy::ALL {
        for verifier in VerifierKind::ALL {
            let config = JoinConfig {
                strategy,
                verifier,
                ..JoinConfig::new(tau.get())
            };
            let result = self_join(records, &config);
            match &baseline {
                None => baseline = Some(result.pairs.clone()),
                Some(expected) => assert_eq!(
                    &result.pairs, expected,
                    "{} + {} disagrees with the first run",
                    strategy.name(),
                    verifier.name()
                ),
            }
            reports.push(ReportRecord::new("self", config, &result.stats, totals));
        }
    }
    reports
}

/// Cross-join variant of [`run_experiment`].
pub fn run_rs_experiment(left: &[Record], right: &[Record], tau: Threshold) -> Vec<ReportRecord> {
    // Auto indexes the larger side, ties to the right; mirror that here so
    // the reported totals describe the side that actually probes.
    let (probing, indexed) = if left.len() > right.len() {
        (right, left)
    } else {
        (left, right)
    };
    let totals = selection_totals_rs(probing, indexed, tau);

    let mut reports = Vec::new();
    let mut baseline = None;
    for strategy in SelectionStrategy::ALL {
        for verifier in VerifierKind::ALL {
            let config = JoinConfig {
                strategy,
                verifier,
                ..JoinConfig::new(tau.get())
            };
            let result = rs_join(left, right, &config);
            match &baseline {
                None => baseline = Some(result.pairs.clone()),
                Some(expected) => assert_eq!(
                    &result.pairs, expected,
                    "{} + {} disagrees with the first run",
                    strategy.name(),
                    verifier.name()
                ),
            }
            reports.push(ReportRecord::new("rs", config, &result.stats, totals));
        }
    }
    reports
}
