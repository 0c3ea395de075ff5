//! Shared vocabulary types: records, thresholds, verification verdicts.

/// One input string. `id` is assigned by the caller (for datasets loaded
/// from disk it is the zero-based line number) and survives sorting, so
/// reported pairs always refer to input positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub id: u32,
    pub content: Vec<u8>,
}

impl Record {
    pub fn new(id: u32, content: impl Into<Vec<u8>>) -> Self {
        Record {
            id,
            content: content.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.content.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content.is_empty()
    }
}

/// Edit-distance bound for a join. A plain newtype so signatures cannot
/// confuse the threshold with segment ordinals or lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(pub usize);

impl Threshold {
    pub fn get(self) -> usize {
        self.0
    }

    /// Number of segments a string is partitioned into: `tau + 1`.
    pub fn segments(self) -> usize {
        self.0 + 1
    }
}

/// Outcome of a bounded distance check.
///
/// `Within(d)` carries the exact distance `d <= bound`. `Exceeds(bound)`
/// only certifies that the distance is larger than `bound`; no distance is
/// computed in that case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Within(usize),
    Exceeds(usize),
}

impl Verdict {
    pub fn is_within(self) -> bool {
        matches!(self, Verdict::Within(_))
    }

    /// Distance if the check passed.
    pub fn distance(self) -> Option<usize> {
        match self {
            Verdict::Within(d) => Some(d),
            Verdict::Exceeds(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_keeps_caller_id() {
        let r = Record::new(7, *b"vankatesh");
        assert_eq!(r.id, 7);
        assert_eq!(r.len(), 9);
        assert!(!r.is_empty());
        assert!(Record::new(0, *b"").is_empty());
    }

    #[test]
    fn threshold_segment_count() {
        assert_eq!(Threshold(0).segments(), 1);
        assert_eq!(Threshold(3).segments(), 4);
    }

    #[test]
    fn verdict_accessors() {
        assert_eq!(Verdict::Within(2).distance(), Some(2));
        assert_eq!(Verdict::Exceeds(2).distance(), None);
        assert!(Verdict::Within(0).is_within());
        assert!(!Verdict::Exceeds(0).is_within());
    }
}
