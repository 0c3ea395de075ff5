//! Exact edit-distance similarity join built on a segment inverted index.
//!
//! The engine answers two queries over byte-string collections:
//!
//! * self join: all pairs within edit distance `tau` of each other,
//! * cross join: all pairs (r, s) with r from one collection, s from the
//!   other, within edit distance `tau`.
//!
//! Strings are partitioned into `tau + 1` disjoint segments. Two strings
//! within distance `tau` must share at least one segment verbatim (an edit
//! touches at most one segment), so candidate pairs can be generated by
//! probing an inverted index of segments and then verified with bounded
//! dynamic programming. Candidate generation cost is controlled by the
//! substring selection strategy ([`SelectionStrategy`]); verification cost by
//! the verifier ladder ([`VerifierKind`]).

mod distance;
mod index;
mod join;
mod model;
mod partition;
mod selection;
mod verify;

pub use distance::edit_distance;
pub use index::{SegmentIndex, SegmentKey};
pub use join::{
    rs_join, self_join, sort_dataset, IndexSide, JoinConfig, JoinResult, JoinStats, MatchPair,
    VerifierKind,
};
pub use model::{Record, Threshold, Verdict};
pub use partition::{partition, Partition, Segment, ShortStringError};
pub use selection::{
    closed_form_count, enumerate_probes, selection_count, window, PositionRange, Probe,
    SelectionStrategy,
};
pub use verify::{
    banded_verify, banded_verify_counted, extension_verify, verify_posting_list, Anchor,
    DpCounter, PostingVerifier,
};
