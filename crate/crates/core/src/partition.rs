//! Even partition of a string into `tau + 1` disjoint segments.
//!
//! Any single edit touches at most one segment, so a string within edit
//! distance `tau` of another must contain at least one of the other's
//! `tau + 1` segments verbatim. That pigeonhole fact is what makes segment
//! probing a complete candidate filter.

use crate::model::Threshold;
use thiserror::Error;

/// Raised when a string is too short to yield `tau + 1` non-empty segments.
/// Callers must route such strings through the short-string fallback of the
/// join instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("string of length {len} cannot be split into {segments} non-empty segments")]
pub struct ShortStringError {
    pub len: usize,
    pub segments: usize,
}

/// One segment: 1-based start position and length. Positions are 1-based to
/// match the window arithmetic in [`crate::selection`]; use
/// [`Segment::byte_range`] for slicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
}

impl Segment {
    /// 0-based byte range of this segment within its string.
    pub fn byte_range(self) -> std::ops::Range<usize> {
        self.start - 1..self.start - 1 + self.len
    }
}

/// Segment layout for every string of one length. The layout depends only on
/// (length, tau), so identical-length strings share one `Partition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    segments: Vec<Segment>,
}

impl Partition {
    /// Number of segments, always `tau + 1`.
    pub fn count(&self) -> usize {
        self.segments.len()
    }

    /// Segment with 1-based ordinal `i`.
    pub fn segment(&self, i: usize) -> Segment {
        self.segments[i - 1]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Slice of `content` covered by segment `i` (1-based).
    pub fn slice<'a>(&self, content: &'a [u8], i: usize) -> &'a [u8] {
        &content[self.segment(i).byte_range()]
    }
}

/// Split a string of length `len` into `tau + 1` segments whose lengths
/// differ by at most one, shorter segments first. With
/// `k = len - floor(len / (tau+1)) * (tau+1)`, the first `tau + 1 - k`
/// segments get the floor length and the last `k` the ceiling.
pub fn partition(len: usize, tau: Threshold) -> Result<Partition, ShortStringError> {
    let n = tau.segments();
    if len < n {
        return Err(ShortStringError { len, segments: n });
    }
    let base = len / n;
    let k = len - base * n;
    let mut segments = Vec::with_capacity(n);
    let mut start = 1;
    for i in 0..n {
        let seg_len = if i < n - k { base } else { base + 1 };
        segments.push(Segment {
            start,
            len: seg_len,
        });
        start += seg_len;
    }
    Ok(Partition { segments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn layout(len: usize, tau: usize) -> (Vec<usize>, Vec<usize>) {
        let p = partition(len, Threshold(tau)).unwrap();
        (
            p.segments().iter().map(|s| s.len).collect(),
            p.segments().iter().map(|s| s.start).collect(),
        )
    }

    #[test]
    fn nine_chars_tau_three() {
        let (lens, starts) = layout(9, 3);
        assert_eq!(lens, [2, 2, 2, 3]);
        assert_eq!(starts, [1, 3, 5, 7]);
        let p = partition(9, Threshold(3)).unwrap();
        let segs: Vec<&[u8]> = (1..=4).map(|i| p.slice(b"vankatesh", i)).collect();
        assert_eq!(segs, [&b"va"[..], b"nk", b"at", b"esh"]);
    }

    #[test]
    fn ten_chars_tau_three() {
        let (lens, starts) = layout(10, 3);
        assert_eq!(lens, [2, 2, 3, 3]);
        assert_eq!(starts, [1, 3, 5, 8]);
        let p = partition(10, Threshold(3)).unwrap();
        let segs: Vec<&[u8]> = (1..=4).map(|i| p.slice(b"avataresha", i)).collect();
        assert_eq!(segs, [&b"av"[..], b"at", b"are", b"sha"]);
    }

    #[test]
    fn fifteen_chars_tau_three() {
        let (lens, starts) = layout(15, 3);
        assert_eq!(lens, [3, 4, 4, 4]);
        assert_eq!(starts, [1, 4, 8, 12]);
        let p = partition(15, Threshold(3)).unwrap();
        assert_eq!(p.slice(b"kaushuk chadhui", 3), b" cha");
    }

    #[test]
    fn tau_zero_single_segment() {
        let (lens, starts) = layout(5, 0);
        assert_eq!(lens, [5]);
        assert_eq!(starts, [1]);
    }

    #[test]
    fn too_short_is_an_error() {
        assert_eq!(
            partition(3, Threshold(3)),
            Err(ShortStringError { len: 3, segments: 4 })
        );
        assert!(partition(4, Threshold(3)).is_ok());
        assert_eq!(
            partition(0, Threshold(0)),
            Err(ShortStringError { len: 0, segments: 1 })
        );
    }

    proptest! {
        #[test]
        fn segments_tile_the_string(len in 1usize..200, tau in 0usize..9) {
            prop_assume!(len > tau);
            let p = partition(len, Threshold(tau)).unwrap();
            prop_assert_eq!(p.count(), tau + 1);
            // Segments are contiguous from position 1 and cover the string.
            let mut expected_start = 1;
            let mut min_len = usize::MAX;
            let mut max_len = 0;
            for s in p.segments() {
                prop_assert_eq!(s.start, expected_start);
                prop_assert!(s.len >= 1);
                expected_start += s.len;
                min_len = min_len.min(s.len);
                max_len = max_len.max(s.len);
            }
            prop_assert_eq!(expected_start, len + 1);
            // Lengths differ by at most one, shorter segments first.
            prop_assert!(max_len - min_len <= 1);
            let lens: Vec<usize> = p.segments().iter().map(|s| s.len).collect();
            let mut sorted = lens.clone();
            sorted.sort_unstable();
            prop_assert_eq!(lens, sorted);
        }
    }
}
