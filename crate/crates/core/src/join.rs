//! Join drivers: sorted streaming, index maintenance, candidate
//! verification, statistics.
//!
//! Both joins run the same loop. Records are sorted by (length, bytes); each
//! probing string asks the segment index for partners whose partition could
//! survive `tau` edits against it, since any such partner must share one
//! whole segment with some probe substring. Posting-list hits are
//! deduplicated per probing string, verified, and emitted with their exact
//! distance.
//!
//! Strings shorter than `tau + 1` cannot be partitioned. They never enter
//! the index; a final sweep checks them directly against every
//! length-compatible partner.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::distance::edit_distance;
use crate::index::{SegmentIndex, SegmentKey};
use crate::model::{Record, Threshold, Verdict};
use crate::selection::{enumerate_probes, SelectionStrategy};
use crate::verify::{banded_verify_counted, Anchor, DpCounter, PostingVerifier};

/// How candidate pairs are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifierKind {
    /// Unbounded full-matrix edit distance; the reference the rest of the
    /// ladder must agree with.
    FullDp,
    /// Banded whole-pair check with expected-cost early termination.
    Banded,
    /// Banded checks of the parts left and right of the matched segment.
    Extension,
    /// Extension, reusing DP rows across posting-list candidates whose
    /// parts share prefixes.
    ExtensionSharePrefix,
}

impl VerifierKind {
    pub const ALL: [VerifierKind; 4] = [
        VerifierKind::FullDp,
        VerifierKind::Banded,
        VerifierKind::Extension,
        VerifierKind::ExtensionSharePrefix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifierKind::FullDp => "dp",
            VerifierKind::Banded => "banded",
            VerifierKind::Extension => "extension",
            VerifierKind::ExtensionSharePrefix => "extension-share",
        }
    }

    /// Whether verdicts carry an anchored alignment cost rather than the
    /// true distance.
    fn anchored(self) -> bool {
        matches!(
            self,
            VerifierKind::Extension | VerifierKind::ExtensionSharePrefix
        )
    }
}

/// Which side of a cross join is indexed; the other side probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexSide {
    /// Index the larger collection, so the cheaper side probes.
    #[default]
    Auto,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
pub struct JoinConfig {
    pub tau: Threshold,
    pub strategy: SelectionStrategy,
    pub verifier: VerifierKind,
    /// Probe workers for cross joins. Self joins ignore this: their index
    /// grows as probing proceeds, so they are sequential by construction.
    pub threads: usize,
    pub index_side: IndexSide,
}

impl JoinConfig {
    pub fn new(tau: usize) -> Self {
        JoinConfig {
            tau: Threshold(tau),
            strategy: SelectionStrategy::MultiMatch,
            verifier: VerifierKind::ExtensionSharePrefix,
            threads: 1,
            index_side: IndexSide::Auto,
        }
    }
}

/// One result pair. Self joins normalize `a < b` by id; cross joins keep
/// `a` from the left collection and `b` from the right no matter which side
/// was indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchPair {
    pub a: u32,
    pub b: u32,
    pub distance: usize,
}

/// Work and outcome counters for one join run. Times are cumulative per
/// phase; under parallel probing, probe and verify time sum across workers
/// and may exceed `total_time`.
#[derive(Debug, Clone, Default)]
pub struct JoinStats {
    /// Probe substrings enumerated against live index lengths.
    pub probes_generated: u64,
    /// Posting-list entries seen by lookups, before dedup.
    pub candidates_seen: u64,
    /// Verifier invocations: deduplicated candidates plus fallback checks.
    pub pairs_verified: u64,
    /// Result pairs emitted.
    pub pairs_matched: u64,
    /// Segments ever inserted: `tau + 1` per indexed string.
    pub segments_indexed: u64,
    /// DP cells touched by verification, distance refinement, fallback.
    pub dp_cells_computed: u64,
    /// Peak number of simultaneously live index lengths.
    pub max_live_lengths: u64,
    pub sort_time: Duration,
    pub probe_time: Duration,
    pub verify_time: Duration,
    pub index_time: Duration,
    pub total_time: Duration,
}

#[derive(Debug, Clone)]
pub struct JoinResult {
    pub pairs: Vec<MatchPair>,
    pub stats: JoinStats,
}

/// Sort by length, then bytewise; stable, so equal strings keep their
/// input order.
pub fn sort_dataset(records: &mut [Record]) {
    records.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.content.cmp(&b.content)));
}

fn unordered(a: u32, b: u32, distance: usize) -> MatchPair {
    MatchPair {
        a: a.min(b),
        b: a.max(b),
        distance,
    }
}

fn finish_pairs(pairs: &mut [MatchPair]) {
    pairs.sort_unstable_by_key(|p| (p.a, p.b));
    debug_assert!(
        pairs.windows(2).all(|w| (w[0].a, w[0].b) != (w[1].a, w[1].b)),
        "pair emitted twice"
    );
}

/// Anchored verification reports the cheapest alignment through the matched
/// segment, an upper bound on the true distance. Refine it unless it cannot
/// move: at 0 or at the length gap the bound is already tight.
fn exact_distance(a: &[u8], b: &[u8], anchored: usize, counter: &mut DpCounter) -> usize {
    if anchored == 0 || anchored == a.len().abs_diff(b.len()) {
        return anchored;
    }
    match banded_verify_counted(a, b, anchored, counter) {
        Verdict::Within(d) => d,
        Verdict::Exceeds(_) => unreachable!("anchored cost bounds the true distance"),
    }
}

/// Per-worker probing state: scratch matrices, the per-string dedup set,
/// and the counters this worker accumulates.
struct Prober<'a> {
    tau: Threshold,
    strategy: SelectionStrategy,
    verifier: VerifierKind,
    records: &'a [Record],
    scratch: PostingVerifier,
    dedup: HashSet<u32>,
    filtered: Vec<u32>,
    counter: DpCounter,
    stats: JoinStats,
}

impl<'a> Prober<'a> {
    fn new(config: &JoinConfig, records: &'a [Record]) -> Self {
        Prober {
            tau: config.tau,
            strategy: config.strategy,
            verifier: config.verifier,
            records,
            scratch: PostingVerifier::new(),
            dedup: HashSet::new(),
            filtered: Vec::new(),
            counter: DpCounter::new(),
            stats: JoinStats::default(),
        }
    }

    /// Run all probes of `s` against the index, pushing accepted partners
    /// as `(handle, exact distance)`.
    fn probe_string(&mut self, index: &SegmentIndex, s: &Record, out: &mut Vec<(u32, usize)>) {
        let started = Instant::now();
        let mut in_verify = Duration::ZERO;
        let t = self.tau.get();
        self.dedup.clear();

        for l in index.live_lengths_in(s.len().saturating_sub(t)..=s.len() + t) {
            let layout = index.layout(l).expect("live length has a layout");
            let probes = enumerate_probes(&s.content, l, self.tau, self.strategy);
            self.stats.probes_generated += probes.len() as u64;
            for probe in probes {
                let list = index.lookup(SegmentKey {
                    len: l,
                    ordinal: probe.ordinal,
                    content: probe.content,
                });
                self.stats.candidates_seen += list.len() as u64;
                if list.is_empty() {
                    continue;
                }
                let seg = layout.segment(probe.ordinal);
                let anchor = Anchor {
                    ordinal: probe.ordinal,
                    probe_pos: probe.position,
                    seg_start: seg.start,
                    seg_len: seg.len,
                };

                let verify_started = Instant::now();
                if self.verifier == VerifierKind::ExtensionSharePrefix {
                    self.filtered.clear();
                    self.filtered
                        .extend(list.iter().copied().filter(|h| !self.dedup.contains(h)));
                    self.stats.pairs_verified += self.filtered.len() as u64;
                    let accepted = self.scratch.verify_list(
                        &s.content,
                        anchor,
                        self.tau,
                        &self.filtered,
                        self.records,
                        &mut self.counter,
                    );
                    for (h, d) in accepted {
                        self.dedup.insert(h);
                        let partner = &self.records[h as usize].content;
                        let d = exact_distance(&s.content, partner, d, &mut self.counter);
                        out.push((h, d));
                    }
                } else {
                    for &h in list {
                        if self.dedup.contains(&h) {
                            continue;
                        }
                        self.stats.pairs_verified += 1;
                        let partner = &self.records[h as usize].content;
                        let verdict = match self.verifier {
                            VerifierKind::FullDp => {
                                self.counter.cells +=
                                    ((s.len() + 1) * (partner.len() + 1)) as u64;
                                let d = edit_distance(&s.content, partner);
                                if d <= t {
                                    Verdict::Within(d)
                                } else {
                                    Verdict::Exceeds(t)
                                }
                            }
                            VerifierKind::Banded => {
                                banded_verify_counted(&s.content, partner, t, &mut self.counter)
                            }
                            VerifierKind::Extension => self.scratch.verify_one(
                                &s.content,
                                partner,
                                anchor,
                                self.tau,
                                &mut self.counter,
                            ),
                            VerifierKind::ExtensionSharePrefix => unreachable!(),
                        };
                        match verdict {
                            Verdict::Within(d) => {
                                self.dedup.insert(h);
                                let d = if self.verifier.anchored() {
                                    exact_distance(&s.content, partner, d, &mut self.counter)
                                } else {
                                    d
                                };
                                out.push((h, d));
                            }
                            Verdict::Exceeds(_) => {
                                // A whole-pair rejection is final. An
                                // anchored rejection only rules out this
                                // anchor; the pair stays eligible for later
                                // segments, or matches could be lost.
                                if !self.verifier.anchored() {
                                    self.dedup.insert(h);
                                }
                            }
                        }
                    }
                }
                in_verify += verify_started.elapsed();
            }
        }
        self.stats.verify_time += in_verify;
        self.stats.probe_time += started.elapsed().saturating_sub(in_verify);
    }

    fn merge_into(self, total: &mut JoinStats) {
        total.probes_generated += self.stats.probes_generated;
        total.candidates_seen += self.stats.candidates_seen;
        total.pairs_verified += self.stats.pairs_verified;
        total.probe_time += self.stats.probe_time;
        total.verify_time += self.stats.verify_time;
        total.dp_cells_computed += self.counter.cells;
    }
}

/// All pairs of `records` within edit distance `config.tau`, each unordered
/// pair reported once with its exact distance. Ids should be distinct.
pub fn self_join(records: &[Record], config: &JoinConfig) -> JoinResult {
    let total_started = Instant::now();
    let t = config.tau.get();
    let mut stats = JoinStats::default();

    let sort_started = Instant::now();
    let mut sorted = records.to_vec();
    sort_dataset(&mut sorted);
    stats.sort_time = sort_started.elapsed();

    let first_long = sorted.partition_point(|r| r.len() < t + 1);
    let mut index = SegmentIndex::new(config.tau);
    let mut prober = Prober::new(config, &sorted);
    let mut pairs: Vec<MatchPair> = Vec::new();
    let mut hits: Vec<(u32, usize)> = Vec::new();

    // Only already-visited strings are indexed, so each pair is seen once,
    // from its longer (or later) member.
    let mut horizon = 0;
    for h in first_long..sorted.len() {
        let s = &sorted[h];
        if s.len() > horizon {
            let evict_started = Instant::now();
            index.evict_below(s.len().saturating_sub(t));
            stats.index_time += evict_started.elapsed();
            horizon = s.len();
        }

        hits.clear();
        prober.probe_string(&index, s, &mut hits);
        for &(g, d) in &hits {
            pairs.push(unordered(sorted[g as usize].id, s.id, d));
        }

        let index_started = Instant::now();
        index.insert(h as u32, &s.content);
        stats.index_time += index_started.elapsed();
        stats.segments_indexed += config.tau.segments() as u64;
        stats.max_live_lengths = stats.max_live_lengths.max(index.live_lengths() as u64);
    }
    prober.merge_into(&mut stats);

    // Unpartitionable strings: check directly against every later record
    // within the length filter (the dataset is sorted, so compatible
    // partners are contiguous).
    let fallback_started = Instant::now();
    let mut counter = DpCounter::new();
    for i in 0..first_long {
        let a = &sorted[i];
        for b in &sorted[i + 1..] {
            if b.len() - a.len() > t {
                break;
            }
            stats.candidates_seen += 1;
            stats.pairs_verified += 1;
            if let Verdict::Within(d) =
                banded_verify_counted(&a.content, &b.content, t, &mut counter)
            {
                pairs.push(unordered(a.id, b.id, d));
            }
        }
    }
    stats.verify_time += fallback_started.elapsed();
    stats.dp_cells_computed += counter.cells;

    finish_pairs(&mut pairs);
    stats.pairs_matched = pairs.len() as u64;
    stats.total_time = total_started.elapsed();
    JoinResult { pairs, stats }
}

/// All pairs `(r, s)` with `r` from `left`, `s` from `right`, within edit
/// distance `config.tau`. Pairs are `(left id, right id)` regardless of
/// which side was indexed.
pub fn rs_join(left: &[Record], right: &[Record], config: &JoinConfig) -> JoinResult {
    let total_started = Instant::now();
    let t = config.tau.get();
    let mut stats = JoinStats::default();

    let index_left = match config.index_side {
        IndexSide::Left => true,
        IndexSide::Right => false,
        IndexSide::Auto => left.len() > right.len(),
    };
    let emit = |probe_id: u32, partner_id: u32, distance: usize| {
        if index_left {
            MatchPair {
                a: partner_id,
                b: probe_id,
                distance,
            }
        } else {
            MatchPair {
                a: probe_id,
                b: partner_id,
                distance,
            }
        }
    };

    let sort_started = Instant::now();
    let (mut indexed, mut probing) = if index_left {
        (left.to_vec(), right.to_vec())
    } else {
        (right.to_vec(), left.to_vec())
    };
    sort_dataset(&mut indexed);
    sort_dataset(&mut probing);
    stats.sort_time = sort_started.elapsed();

    let indexed_longs = indexed.partition_point(|r| r.len() < t + 1);
    let probing_longs = probing.partition_point(|r| r.len() < t + 1);

    let index_started = Instant::now();
    let mut index = SegmentIndex::new(config.tau);
    for (h, r) in indexed.iter().enumerate().skip(indexed_longs) {
        index.insert(h as u32, &r.content);
        stats.segments_indexed += config.tau.segments() as u64;
    }
    stats.index_time += index_started.elapsed();
    stats.max_live_lengths = index.live_lengths() as u64;

    let mut pairs: Vec<MatchPair> = Vec::new();
    let workers = config.threads.max(1);
    if workers == 1 {
        let mut prober = Prober::new(config, &indexed);
        let mut hits = Vec::new();
        let mut horizon = 0;
        for s in &probing[probing_longs..] {
            if s.len() > horizon {
                let evict_started = Instant::now();
                index.evict_below(s.len().saturating_sub(t));
                stats.index_time += evict_started.elapsed();
                horizon = s.len();
            }
            hits.clear();
            prober.probe_string(&index, s, &mut hits);
            for &(g, d) in &hits {
                pairs.push(emit(s.id, indexed[g as usize].id, d));
            }
        }
        prober.merge_into(&mut stats);
    } else {
        // Frozen index, striped probing. Striding by worker count spreads
        // the long strings evenly; the final sort keeps scheduling out of
        // the result.
        let indexed_ref = &indexed;
        let probing_ref = &probing;
        let index_ref = &index;
        let config_copy = *config;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        let mut prober = Prober::new(&config_copy, indexed_ref);
                        let mut hits = Vec::new();
                        let mut out = Vec::new();
                        let mut h = probing_longs + w;
                        while h < probing_ref.len() {
                            let s = &probing_ref[h];
                            hits.clear();
                            prober.probe_string(index_ref, s, &mut hits);
                            for &(g, d) in &hits {
                                out.push(emit(s.id, indexed_ref[g as usize].id, d));
                            }
                            h += workers;
                        }
                        (out, prober)
                    })
                })
                .collect();
            for handle in handles {
                let (out, prober) = handle.join().expect("probe worker panicked");
                pairs.extend(out);
                prober.merge_into(&mut stats);
            }
        });
    }

    // Shorts on the probing side meet every length-compatible indexed
    // record; indexed-side shorts then meet probing longs (short x short
    // was covered by the first sweep).
    let fallback_started = Instant::now();
    let mut counter = DpCounter::new();
    for a in &probing[..probing_longs] {
        let from = indexed.partition_point(|r| r.len() + t < a.len());
        for b in &indexed[from..] {
            if b.len() > a.len() + t {
                break;
            }
            stats.candidates_seen += 1;
            stats.pairs_verified += 1;
            if let Verdict::Within(d) =
                banded_verify_counted(&a.content, &b.content, t, &mut counter)
            {
                pairs.push(emit(a.id, b.id, d));
            }
        }
    }
    for b in &indexed[..indexed_longs] {
        let longs = &probing[probing_longs..];
        let from = longs.partition_point(|r| r.len() + t < b.len());
        for a in &longs[from..] {
            if a.len() > b.len() + t {
                break;
            }
            stats.candidates_seen += 1;
            stats.pairs_verified += 1;
            if let Verdict::Within(d) =
                banded_verify_counted(&a.content, &b.content, t, &mut counter)
            {
                pairs.push(emit(a.id, b.id, d));
            }
        }
    }
    stats.verify_time += fallback_started.elapsed();
    stats.dp_cells_computed += counter.cells;

    finish_pairs(&mut pairs);
    stats.pairs_matched = pairs.len() as u64;
    stats.total_time = total_started.elapsed();
    JoinResult { pairs, stats }
}
