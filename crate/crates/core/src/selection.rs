//! Substring selection: which substrings of a probe string are looked up in
//! the segment index.
//!
//! For a probe `s` and an indexed length `l`, segment ordinal `i` has some
//! window of start positions; every substring `s[p .. p + l_i - 1]` with `p`
//! in the window is probed. The four strategies trade window width against
//! completeness argument strength; all four find every true match. With
//! `Delta = |s| - l` and `(p_i, l_i)` the segment layout of length `l`:
//!
//! * `Length`:     all of `[1, |s| - l_i + 1]`
//! * `Shift`:      `[p_i - tau, p_i + tau]`
//! * `Position`:   `[p_i - floor((tau - Delta)/2), p_i + floor((tau + Delta)/2)]`
//! * `MultiMatch`: `[max(p_i - (i-1), p_i + Delta - (tau+1-i)),
//!                   min(p_i + (i-1), p_i + Delta + (tau+1-i))]`
//!
//! Every window is clamped to the valid start range `[1, |s| - l_i + 1]`.
//! The windows nest: `MultiMatch ⊆ Position ⊆ Shift ⊆ Length`.
//!
//! `Delta` may be negative (cross joins probe index buckets longer than the
//! probe string); the window bounds above remain complete for
//! `|Delta| <= tau`, with floors taken toward negative infinity.

use crate::model::Threshold;
use crate::partition::partition;

/// Substring selection strategy, cheapest filter last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionStrategy {
    Length,
    Shift,
    Position,
    MultiMatch,
}

impl SelectionStrategy {
    pub const ALL: [SelectionStrategy; 4] = [
        SelectionStrategy::Length,
        SelectionStrategy::Shift,
        SelectionStrategy::Position,
        SelectionStrategy::MultiMatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SelectionStrategy::Length => "length",
            SelectionStrategy::Shift => "shift",
            SelectionStrategy::Position => "position",
            SelectionStrategy::MultiMatch => "multimatch",
        }
    }
}

/// Inclusive range of 1-based start positions; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositionRange {
    pub lo: usize,
    pub hi: usize,
}

impl PositionRange {
    pub const EMPTY: PositionRange = PositionRange { lo: 1, hi: 0 };

    pub fn is_empty(self) -> bool {
        self.lo > self.hi
    }

    pub fn len(self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    /// True if `self` is contained in `other` (empty ranges are contained in
    /// everything).
    pub fn within(self, other: PositionRange) -> bool {
        self.is_empty() || (!other.is_empty() && self.lo >= other.lo && self.hi <= other.hi)
    }
}

/// One candidate-generating substring of the probe string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe<'a> {
    /// Segment ordinal, 1-based.
    pub ordinal: usize,
    /// Start position in the probe string, 1-based.
    pub position: usize,
    pub content: &'a [u8],
}

fn floor_div2(x: i64) -> i64 {
    x.div_euclid(2)
}

/// Start-position window for segment ordinal `i` (1-based) of indexed length
/// `l`, probed from a string of length `s_len`. Requires `l >= tau + 1` and
/// `|s_len - l| <= tau`; the join engine never asks otherwise.
pub fn window(
    strategy: SelectionStrategy,
    s_len: usize,
    l: usize,
    i: usize,
    tau: Threshold,
) -> PositionRange {
    let t = tau.get();
    assert!(
        l >= tau.segments(),
        "indexed length {l} below segment count {}",
        tau.segments()
    );
    assert!(s_len.abs_diff(l) <= t, "length filter violated: {s_len} vs {l}");
    let seg = partition(l, tau).expect("length checked above").segment(i);
    let valid_hi = s_len as i64 - seg.len as i64 + 1;
    let p_i = seg.start as i64;
    let delta = s_len as i64 - l as i64;
    let t = t as i64;
    let i = i as i64;

    let (lo, hi) = match strategy {
        SelectionStrategy::Length => (1, valid_hi),
        SelectionStrategy::Shift => (p_i - t, p_i + t),
        SelectionStrategy::Position => (
            p_i - floor_div2(t - delta),
            p_i + floor_div2(t + delta),
        ),
        SelectionStrategy::MultiMatch => (
            (p_i - (i - 1)).max(p_i + delta - (t + 1 - i)),
            (p_i + (i - 1)).min(p_i + delta + (t + 1 - i)),
        ),
    };
    let lo = lo.max(1);
    let hi = hi.min(valid_hi);
    if lo > hi {
        PositionRange::EMPTY
    } else {
        PositionRange {
            lo: lo as usize,
            hi: hi as usize,
        }
    }
}

/// All probes of `s` against indexed length `l`, in (ordinal, position)
/// order. Preconditions as for [`window`].
pub fn enumerate_probes<'a>(
    s: &'a [u8],
    l: usize,
    tau: Threshold,
    strategy: SelectionStrategy,
) -> Vec<Probe<'a>> {
    let layout = partition(l, tau).expect("indexed length must fit tau + 1 segments");
    let mut probes = Vec::new();
    for i in 1..=tau.segments() {
        let seg_len = layout.segment(i).len;
        for position in window(strategy, s.len(), l, i, tau).iter() {
            probes.push(Probe {
                ordinal: i,
                position,
                content: &s[position - 1..position - 1 + seg_len],
            });
        }
    }
    probes
}

/// Total window size actually probed: the sum of clamped window lengths over
/// all ordinals. Bounded above by [`closed_form_count`] for every strategy.
pub fn selection_count(
    strategy: SelectionStrategy,
    s_len: usize,
    l: usize,
    tau: Threshold,
) -> usize {
    (1..=tau.segments())
        .map(|i| window(strategy, s_len, l, i, tau).len())
        .sum()
}

/// Nominal per-string probe count of a strategy, ignoring clamping:
///
/// * `Length`:     `(tau+1)(s_len+1) - l`
/// * `Shift`:      `(tau+1)(2 tau+1)`
/// * `Position`:   `(tau+1)^2`
/// * `MultiMatch`: `floor((tau^2 - Delta^2)/2) + tau + 1`
///
/// For `MultiMatch` the clamp never bites, so [`selection_count`] equals this
/// value exactly whenever `0 <= Delta <= tau`.
pub fn closed_form_count(
    strategy: SelectionStrategy,
    s_len: usize,
    l: usize,
    tau: Threshold,
) -> usize {
    let t = tau.get();
    let n = t + 1;
    match strategy {
        SelectionStrategy::Length => n * (s_len + 1) - l,
        SelectionStrategy::Shift => n * (2 * t + 1),
        SelectionStrategy::Position => n * n,
        SelectionStrategy::MultiMatch => {
            let delta = s_len.abs_diff(l);
            (t * t - delta * delta) / 2 + t + 1
        }
    }
}
