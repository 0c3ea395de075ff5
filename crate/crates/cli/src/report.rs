//! Flat JSON stats report emitted by `--stats`. Keys are stable so
//! downstream tooling can rely on them.

use serde::Serialize;

use segjoin::{JoinConfig, JoinStats};

/// One join run, flattened for machine consumption. Counter semantics
/// mirror [`JoinStats`]; the `selection_total_*` fields are the closed-form
/// probe totals of each strategy summed over every (string, probe length)
/// pair the run enumerated, so strategies can be compared without rerunning.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub mode: String,
    pub tau: usize,
    pub selector: String,
    pub verifier: String,
    pub threads: usize,

    pub probes_generated: u64,
    pub candidates_seen: u64,
    pub pairs_verified: u64,
    pub pairs_matched: u64,
    pub segments_indexed: u64,
    pub dp_cells_computed: u64,
    pub max_live_lengths: u64,

    pub selection_total_length: u64,
    pub selection_total_shift: u64,
    pub selection_total_position: u64,
    pub selection_total_multimatch: u64,

    pub sort_ms: f64,
    pub probe_ms: f64,
    pub verify_ms: f64,
    pub index_ms: f64,
    pub total_ms: f64,
}

impl ReportRecord {
    /// `selection_totals` must be in strategy ladder order:
    /// length, shift, position, multimatch.
    pub fn new(
        mode: &str,
        config: JoinConfig,
        stats: &JoinStats,
        selection_totals: [u64; 4],
    ) -> Self {
        ReportRecord {
            mode: mode.to_string(),
            tau: config.tau.get(),
            selector: config.strategy.name().to_string(),
            verifier: config.verifier.name().to_string(),
            threads: config.threads,
            probes_generated: stats.probes_generated,
            candidates_seen: stats.candidates_seen,
            pairs_verified: stats.pairs_verified,
            pairs_matched: stats.pairs_matched,
            segments_indexed: stats.segments_indexed,
            dp_cells_computed: stats.dp_cells_computed,
            max_live_lengths: stats.max_live_lengths,
            selection_total_length: selection_totals[0],
            selection_total_shift: selection_totals[1],
            selection_total_position: selection_totals[2],
            selection_total_multimatch: selection_totals[3],
            sort_ms: ms(stats.sort_time),
            probe_ms: ms(stats.probe_time),
            verify_ms: ms(stats.verify_time),
            index_ms: ms(stats.index_time),
            total_ms: ms(stats.total_time),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}
