//! Inverted index over segments, bucketed by (string length, segment
//! ordinal, segment content).
//!
//! The self join visits strings in ascending length order, so buckets for
//! lengths below `probe_len - tau` can never be probed again and are evicted
//! wholesale. At most `tau + 1` length buckets are live at any point during
//! a self join.

use crate::model::Threshold;
use crate::partition::{partition, Partition};
use std::collections::{BTreeMap, HashMap};

/// Borrowed lookup key: which segment list to consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentKey<'a> {
    /// Length of the indexed strings.
    pub len: usize,
    /// Segment ordinal, 1-based.
    pub ordinal: usize,
    pub content: &'a [u8],
}

struct LengthBucket {
    layout: Partition,
    /// One posting map per segment ordinal, `maps[i - 1]` for ordinal `i`.
    /// Posting lists hold caller handles in insertion order.
    maps: Vec<HashMap<Vec<u8>, Vec<u32>>>,
    strings: u64,
}

/// Segment inverted index for one join pass.
pub struct SegmentIndex {
    tau: Threshold,
    buckets: BTreeMap<usize, LengthBucket>,
    segment_count: u64,
}

impl SegmentIndex {
    pub fn new(tau: Threshold) -> Self {
        SegmentIndex {
            tau,
            buckets: BTreeMap::new(),
            segment_count: 0,
        }
    }

    /// Index every segment of `content` under `handle`. The caller must have
    /// filtered out strings shorter than `tau + 1`.
    pub fn insert(&mut self, handle: u32, content: &[u8]) {
        let tau = self.tau;
        let bucket = self.buckets.entry(content.len()).or_insert_with(|| {
            let layout = partition(content.len(), tau)
                .expect("strings shorter than tau + 1 never reach the index");
            let maps = (0..tau.segments()).map(|_| HashMap::new()).collect();
            LengthBucket {
                layout,
                maps,
                strings: 0,
            }
        });
        for i in 1..=tau.segments() {
            let seg = bucket.layout.slice(content, i);
            bucket.maps[i - 1]
                .entry(seg.to_vec())
                .or_default()
                .push(handle);
        }
        bucket.strings += 1;
        self.segment_count += tau.segments() as u64;
    }

    /// Posting list for a key; empty if the bucket or entry is absent.
    pub fn lookup(&self, key: SegmentKey<'_>) -> &[u32] {
        self.buckets
            .get(&key.len)
            .and_then(|b| b.maps.get(key.ordinal - 1))
            .and_then(|m| m.get(key.content))
            .map_or(&[], Vec::as_slice)
    }

    /// Drop every bucket for lengths below `min_len`. Cost is proportional
    /// to the number of buckets dropped.
    pub fn evict_below(&mut self, min_len: usize) {
        while let Some(entry) = self.buckets.first_entry() {
            if *entry.key() >= min_len {
                break;
            }
            let bucket = entry.remove();
            self.segment_count -= bucket.strings * self.tau.segments() as u64;
        }
    }

    /// Live lengths within `range`, ascending.
    pub fn live_lengths_in(
        &self,
        range: std::ops::RangeInclusive<usize>,
    ) -> impl Iterator<Item = usize> + '_ {
        self.buckets.range(range).map(|(&l, _)| l)
    }

    /// Segment layout of a live length bucket.
    pub fn layout(&self, len: usize) -> Option<&Partition> {
        self.buckets.get(&len).map(|b| &b.layout)
    }

    /// Number of live length buckets.
    pub fn live_lengths(&self) -> usize {
        self.buckets.len()
    }

    /// Segments currently retained: `(tau + 1) x` retained strings.
    pub fn segment_count(&self) -> u64 {
        self.segment_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key(len: usize, ordinal: usize, content: &[u8]) -> SegmentKey<'_> {
        SegmentKey {
            len,
            ordinal,
            content,
        }
    }

    #[test]
    fn indexes_every_segment_of_a_string() {
        let mut idx = SegmentIndex::new(Threshold(3));
        idx.insert(0, b"vankatesh");
        assert_eq!(idx.lookup(key(9, 1, b"va")), &[0]);
        assert_eq!(idx.lookup(key(9, 2, b"nk")), &[0]);
        assert_eq!(idx.lookup(key(9, 3, b"at")), &[0]);
        assert_eq!(idx.lookup(key(9, 4, b"esh")), &[0]);
        // Same content under the wrong ordinal or length finds nothing.
        assert_eq!(idx.lookup(key(9, 2, b"va")), &[] as &[u32]);
        assert_eq!(idx.lookup(key(10, 1, b"va")), &[] as &[u32]);
        assert_eq!(idx.segment_count(), 4);
        assert_eq!(idx.live_lengths(), 1);
    }

    #[test]
    fn posting_lists_keep_insertion_order() {
        let mut idx = SegmentIndex::new(Threshold(1));
        idx.insert(3, b"abcd");
        idx.insert(5, b"abzz");
        idx.insert(9, b"abcd");
        assert_eq!(idx.lookup(key(4, 1, b"ab")), &[3, 5, 9]);
        assert_eq!(idx.lookup(key(4, 2, b"cd")), &[3, 9]);
    }

    #[test]
    fn eviction_drops_whole_lengths() {
        let mut idx = SegmentIndex::new(Threshold(3));
        idx.insert(0, b"vankatesh");
        idx.insert(1, b"avataresha");
        idx.insert(2, b"kaushic chaduri");
        assert_eq!(idx.live_lengths(), 3);
        assert_eq!(idx.segment_count(), 12);

        idx.evict_below(12);
        assert_eq!(idx.live_lengths(), 1);
        assert_eq!(idx.segment_count(), 4);
        assert_eq!(idx.lookup(key(9, 1, b"va")), &[] as &[u32]);
        assert_eq!(idx.lookup(key(15, 1, b"kau")), &[2]);

        // Evicting below an already-evicted floor is a no-op.
        idx.evict_below(12);
        assert_eq!(idx.segment_count(), 4);
    }

    #[test]
    fn live_length_iteration_respects_range() {
        let mut idx = SegmentIndex::new(Threshold(3));
        idx.insert(0, b"vankatesh");
        idx.insert(1, b"avataresha");
        idx.insert(2, b"kaushic chaduri");
        let lens: Vec<usize> = idx.live_lengths_in(9..=10).collect();
        assert_eq!(lens, [9, 10]);
        let lens: Vec<usize> = idx.live_lengths_in(11..=15).collect();
        assert_eq!(lens, [15]);
    }

    proptest! {
        #[test]
        fn roundtrip_and_accounting(
            strings in proptest::collection::vec(proptest::collection::vec(97u8..=100, 4..24), 1..40),
            tau in 0usize..4,
        ) {
            let th = Threshold(tau);
            let mut idx = SegmentIndex::new(th);
            let mut inserted = 0u64;
            for (h, s) in strings.iter().enumerate() {
                if s.len() < tau + 1 {
                    continue;
                }
                idx.insert(h as u32, s);
                inserted += 1;
                // Every segment of an inserted string is findable under its key.
                let layout = partition(s.len(), th).unwrap();
                for i in 1..=tau + 1 {
                    let seg = layout.slice(s, i);
                    let list = idx.lookup(SegmentKey { len: s.len(), ordinal: i, content: seg });
                    prop_assert_eq!(list.last(), Some(&(h as u32)));
                }
                prop_assert_eq!(idx.segment_count(), inserted * (tau as u64 + 1));
            }
        }
    }
}
