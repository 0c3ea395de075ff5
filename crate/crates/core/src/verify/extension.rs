//! Verification that extends outward from a matched segment.
//!
//! A candidate pair is known to agree on one whole segment, so the pair is
//! within `tau` iff the parts left and right of the match can be aligned
//! within the leftover budget. Both parts get far tighter bounds than `tau`:
//! if the left part of a match on segment `i` needed `i` or more edits, some
//! later segment would also be preserved and the pair would be regenerated
//! from that match instead, so the left check may stop at `i - 1` (and
//! symmetrically the right check at `tau + 1 - i`). The left budget is
//! additionally capped by `tau` minus the right parts' length gap, since the
//! right side cannot cost less than that gap.
//!
//! Posting lists are verified in stored order. All candidates in a list have
//! the same length and segment boundaries, and arrive byte-sorted, so
//! consecutive candidates often share long prefixes of their left (and
//! right) parts; matrix rows covering the shared prefix are reused verbatim.

use super::banded::{BandedMatrix, DpCounter};
use crate::model::{Record, Threshold, Verdict};

/// Where a probe substring matched an indexed segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    /// Matched segment ordinal `i`, 1-based.
    pub ordinal: usize,
    /// Match position `p` in the probe string, 1-based.
    pub probe_pos: usize,
    /// Segment start `p_i` in the indexed string, 1-based.
    pub seg_start: usize,
    /// Segment length `l_i`.
    pub seg_len: usize,
}

fn lcp(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Reusable scratch for extension checks. One instance per probing worker;
/// matrices and buffers are recycled across calls.
pub struct PostingVerifier {
    left: BandedMatrix,
    right: BandedMatrix,
    buf: Vec<(u32, usize)>,
}

impl Default for PostingVerifier {
    fn default() -> Self {
        Self::new()
    }
}

impl PostingVerifier {
    pub fn new() -> Self {
        PostingVerifier {
            left: BandedMatrix::new(),
            right: BandedMatrix::new(),
            buf: Vec::new(),
        }
    }

    /// Verify a single candidate, no row reuse.
    pub fn verify_one(
        &mut self,
        probe: &[u8],
        indexed: &[u8],
        anchor: Anchor,
        tau: Threshold,
        counter: &mut DpCounter,
    ) -> Verdict {
        let mut buf = std::mem::take(&mut self.buf);
        buf.clear();
        self.verify_candidates(
            probe,
            indexed.len(),
            anchor,
            tau,
            std::iter::once((0u32, indexed)),
            counter,
            &mut buf,
        );
        let verdict = match buf.first() {
            Some(&(_, d)) => Verdict::Within(d),
            None => Verdict::Exceeds(tau.get()),
        };
        self.buf = buf;
        verdict
    }

    /// Verify every candidate of one posting list, reusing matrix rows
    /// across candidates with common part prefixes. `candidates` index into
    /// `records` and must all have the same length; output order follows
    /// input order and is identical to verifying each candidate alone.
    pub fn verify_list(
        &mut self,
        probe: &[u8],
        anchor: Anchor,
        tau: Threshold,
        candidates: &[u32],
        records: &[Record],
        counter: &mut DpCounter,
    ) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        let Some(&first) = candidates.first() else {
            return out;
        };
        let indexed_len = records[first as usize].len();
        self.verify_candidates(
            probe,
            indexed_len,
            anchor,
            tau,
            candidates
                .iter()
                .map(|&h| (h, records[h as usize].content.as_slice())),
            counter,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn verify_candidates<'r>(
        &mut self,
        probe: &[u8],
        indexed_len: usize,
        anchor: Anchor,
        tau: Threshold,
        items: impl Iterator<Item = (u32, &'r [u8])>,
        counter: &mut DpCounter,
        out: &mut Vec<(u32, usize)>,
    ) {
        let t = tau.get();
        let Anchor {
            ordinal: i,
            probe_pos: p,
            seg_start: p_i,
            seg_len,
        } = anchor;
        debug_assert!(1 <= i && i <= t + 1);

        let s_l = &probe[..p - 1];
        let s_r = &probe[p - 1 + seg_len..];
        let r_l_len = p_i - 1;
        let r_r_len = indexed_len - r_l_len - seg_len;

        // Edits forced by the right parts' length gap are unavailable to the
        // left side.
        let gap_r = r_r_len.abs_diff(s_r.len());
        if gap_r > t {
            return;
        }
        let tau_l = (i - 1).min(t - gap_r);
        // Since d_l <= tau_l <= i - 1, the leftover budget tau - d_l is
        // never below tau + 1 - i; the ordinal cap alone binds.
        let tau_r = t + 1 - i;

        if !self.left.begin(tau_l, r_l_len, s_l.len()) {
            return;
        }
        // The left check always runs first; a hopeless right side (length
        // gap above its budget) rejects only after the left side passed.
        let right_viable = self.right.begin(tau_r, r_r_len, s_r.len());

        let mut prev_left: &[u8] = &[];
        let mut prev_right: &[u8] = &[];
        for (handle, r) in items {
            debug_assert_eq!(r.len(), indexed_len, "posting list mixes lengths");
            debug_assert_eq!(
                &r[p_i - 1..p_i - 1 + seg_len],
                &probe[p - 1..p - 1 + seg_len],
                "anchor does not match"
            );
            let r_l = &r[..r_l_len];
            let r_r = &r[r_l_len + seg_len..];

            let keep = lcp(prev_left, r_l).min(self.left.rows_done());
            self.left.truncate(keep);
            prev_left = r_l;
            let Some(d_l) = self.left.finish(r_l, s_l, keep, counter) else {
                continue;
            };
            if !right_viable {
                continue;
            }

            let keep = lcp(prev_right, r_r).min(self.right.rows_done());
            self.right.truncate(keep);
            prev_right = r_r;
            let Some(d_r) = self.right.finish(r_r, s_r, keep, counter) else {
                continue;
            };

            // d_l + d_r <= tau_l + tau_r <= tau by construction.
            out.push((handle, d_l + d_r));
        }
    }
}

/// Check one candidate pair around a matched segment. `Within(d)` carries
/// `d = d_left + d_right`, the cost of the cheapest alignment that maps the
/// matched segment onto the probe substring at the anchor; `d` never exceeds
/// `tau` but may overestimate the true distance of the pair (the join
/// re-derives exact distances for accepted pairs).
pub fn extension_verify(
    probe: &[u8],
    indexed: &[u8],
    anchor: Anchor,
    tau: Threshold,
    counter: &mut DpCounter,
) -> Verdict {
    PostingVerifier::new().verify_one(probe, indexed, anchor, tau, counter)
}

/// Verify a whole posting list with shared-prefix row reuse. Returns the
/// accepted `(candidate, distance)` pairs, identical to what per-candidate
/// [`extension_verify`] calls would accept.
pub fn verify_posting_list(
    probe: &[u8],
    anchor: Anchor,
    tau: Threshold,
    candidates: &[u32],
    records: &[Record],
    counter: &mut DpCounter,
) -> Vec<(u32, usize)> {
    PostingVerifier::new().verify_list(probe, anchor, tau, candidates, records, counter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::edit_distance;
    use crate::partition::partition;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shared_segment_pair_rejected_via_left_budget() {
        // "kaushuk chadhui" and "caushik chakrabar" share the third segment
        // " cha" of the shorter string. The right parts "dhui" / "krabar"
        // differ in length by 2, so the left budget drops to 1, and the left
        // banded check dies in row 6.
        let indexed = b"kaushuk chadhui";
        let probe = b"caushik chakrabar";
        let anchor = Anchor {
            ordinal: 3,
            probe_pos: 8,
            seg_start: 8,
            seg_len: 4,
        };
        let mut counter = DpCounter::new();
        let verdict = extension_verify(probe, indexed, anchor, Threshold(3), &mut counter);
        assert_eq!(verdict, Verdict::Exceeds(3));
        assert_eq!(counter.rows, 6);
    }

    #[test]
    fn identical_strings_accept_at_first_segment() {
        let s = b"vankatesh";
        let anchor = Anchor {
            ordinal: 1,
            probe_pos: 1,
            seg_start: 1,
            seg_len: 2,
        };
        let mut counter = DpCounter::new();
        assert_eq!(
            extension_verify(s, s, anchor, Threshold(3), &mut counter),
            Verdict::Within(0)
        );
    }

    /// All anchors of (probe, indexed): every (ordinal, position) where the
    /// probe contains that segment of the indexed string verbatim.
    fn all_anchors(probe: &[u8], indexed: &[u8], tau: Threshold) -> Vec<Anchor> {
        let layout = partition(indexed.len(), tau).unwrap();
        let mut anchors = Vec::new();
        for i in 1..=tau.segments() {
            let seg = layout.segment(i);
            let content = layout.slice(indexed, i);
            if probe.len() < seg.len {
                continue;
            }
            for p in 1..=probe.len() - seg.len + 1 {
                if &probe[p - 1..p - 1 + seg.len] == content {
                    anchors.push(Anchor {
                        ordinal: i,
                        probe_pos: p,
                        seg_start: seg.start,
                        seg_len: seg.len,
                    });
                }
            }
        }
        anchors
    }

    #[test]
    fn some_anchor_yields_the_exact_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut similar_seen = 0;
        for _ in 0..3000 {
            let tau = Threshold(rng.random_range(1..=4));
            let len = rng.random_range(tau.get() + 1..28);
            let indexed: Vec<u8> = (0..len).map(|_| rng.random_range(b'a'..b'd')).collect();
            let mut probe = indexed.clone();
            for _ in 0..rng.random_range(0..=tau.get()) {
                match rng.random_range(0..3) {
                    0 => {
                        let i = rng.random_range(0..probe.len());
                        probe[i] = rng.random_range(b'a'..b'd');
                    }
                    1 if probe.len() > 1 => {
                        let i = rng.random_range(0..probe.len());
                        probe.remove(i);
                    }
                    _ => {
                        let i = rng.random_range(0..=probe.len());
                        probe.insert(i, rng.random_range(b'a'..b'd'));
                    }
                }
            }
            if probe.len().abs_diff(indexed.len()) > tau.get() {
                continue;
            }
            let truth = edit_distance(&probe, &indexed);
            if truth > tau.get() {
                continue;
            }
            similar_seen += 1;
            let mut accepted = Vec::new();
            for anchor in all_anchors(&probe, &indexed, tau) {
                let mut counter = DpCounter::new();
                if let Verdict::Within(d) =
                    extension_verify(&probe, &indexed, anchor, tau, &mut counter)
                {
                    // Anchored cost never undercuts the true distance.
                    assert!(d >= truth, "anchored {d} < true {truth}");
                    assert!(d <= tau.get());
                    accepted.push(d);
                }
            }
            assert_eq!(
                accepted.iter().min(),
                Some(&truth),
                "probe={probe:?} indexed={indexed:?} tau={tau:?}"
            );
        }
        assert!(similar_seen > 1000, "test generated too few similar pairs");
    }

    fn rec(id: u32, content: &[u8]) -> Record {
        Record::new(id, content.to_vec())
    }

    #[test]
    fn posting_list_reuses_shared_prefix_rows() {
        // Left parts "caushik" / "caushiq" share 6 characters; the second
        // candidate recomputes exactly one left row (and no right rows).
        let records = vec![rec(0, b"caushik#SEGtail"), rec(1, b"caushiq#SEGtail")];
        let probe = b"caushik#SEGtail";
        let anchor = Anchor {
            ordinal: 3,
            probe_pos: 8,
            seg_start: 8,
            seg_len: 4,
        };
        let tau = Threshold(3);

        let mut first_only = DpCounter::new();
        let got = verify_posting_list(probe, anchor, tau, &[0], &records, &mut first_only);
        assert_eq!(got, [(0, 0)]);
        assert_eq!(first_only.rows, 7 + 4);

        let mut shared = DpCounter::new();
        let got = verify_posting_list(probe, anchor, tau, &[0, 1], &records, &mut shared);
        assert_eq!(got, [(0, 0), (1, 1)]);
        assert_eq!(shared.rows - first_only.rows, 1);

        // Independent verification pays the full row count again.
        let mut independent = DpCounter::new();
        for h in [0u32, 1] {
            let v = extension_verify(
                probe,
                &records[h as usize].content,
                anchor,
                tau,
                &mut independent,
            );
            assert_eq!(v, Verdict::Within(h as usize));
        }
        assert_eq!(independent.rows, 2 * (7 + 4));
    }

    #[test]
    fn posting_list_matches_per_candidate_verification() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..300 {
            let tau = Threshold(rng.random_range(0..=4));
            let l = rng.random_range(tau.get() + 1..24);
            let layout = partition(l, tau).unwrap();
            let i = rng.random_range(1..=tau.segments());
            let seg = layout.segment(i);

            // Candidates share segment i verbatim, differ elsewhere.
            let base: Vec<u8> = (0..l).map(|_| rng.random_range(b'a'..b'd')).collect();
            let mut records: Vec<Record> = Vec::new();
            for id in 0..rng.random_range(1..12) {
                let mut c = base.clone();
                for _ in 0..rng.random_range(0..4) {
                    let pos = rng.random_range(0..l);
                    if !seg.byte_range().contains(&pos) {
                        c[pos] = rng.random_range(b'a'..b'd');
                    }
                }
                records.push(rec(id, &c));
            }
            records.sort_by(|a, b| a.content.cmp(&b.content));
            for (id, r) in records.iter_mut().enumerate() {
                r.id = id as u32;
            }
            let handles: Vec<u32> = (0..records.len() as u32).collect();

            // A probe containing the segment at a random valid position.
            let delta = rng.random_range(0..=tau.get());
            let s_len = l + delta;
            let extra = s_len - l;
            let left_pad = rng.random_range(0..=extra);
            let mut probe: Vec<u8> = Vec::with_capacity(s_len);
            for _ in 0..seg.start - 1 + left_pad {
                probe.push(rng.random_range(b'a'..b'd'));
            }
            probe.extend_from_slice(&base[seg.byte_range()]);
            while probe.len() < s_len {
                probe.push(rng.random_range(b'a'..b'd'));
            }
            let anchor = Anchor {
                ordinal: i,
                probe_pos: seg.start + left_pad,
                seg_start: seg.start,
                seg_len: seg.len,
            };

            let mut c1 = DpCounter::new();
            let listed = verify_posting_list(&probe, anchor, tau, &handles, &records, &mut c1);
            let mut single = Vec::new();
            for &h in &handles {
                let mut c2 = DpCounter::new();
                if let Verdict::Within(d) = extension_verify(
                    &probe,
                    &records[h as usize].content,
                    anchor,
                    tau,
                    &mut c2,
                ) {
                    single.push((h, d));
                }
            }
            assert_eq!(listed, single);
        }
    }
}
