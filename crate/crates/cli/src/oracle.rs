//! Quadratic reference joins: every pair, full dynamic programming, no
//! candidate generation. Slow, simple, trusted.

use segjoin::{edit_distance, MatchPair, Record};

/// All-pairs self join under the length pre-filter; the ground truth the
/// engine is checked against. Pairs come back as (id_a < id_b, distance),
/// sorted ascending.
pub fn brute_force_join(records: &[Record], tau: usize) -> Vec<MatchPair> {
    let mut pairs = Vec::new();
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            let (a, b) = (&records[i], &records[j]);
            if a.len().abs_diff(b.len()) > tau {
                continue;
            }
            let d = edit_distance(&a.content, &b.content);
            if d <= tau {
                pairs.push(MatchPair {
                    a: a.id.min(b.id),
                    b: a.id.max(b.id),
                    distance: d,
                });
            }
        }
    }
    pairs.sort_unstable_by_key(|p| (p.a, p.b));
    pairs
}

/// All-pairs cross join, pairs as (left id, right id, distance), sorted.
pub fn brute_force_rs_join(left: &[Record], right: &[Record], tau: usize) -> Vec<MatchPair> {
    let mut pairs = Vec::new();
    for a in left {
        for b in right {
            if a.len().abs_diff(b.len()) > tau {
                continue;
            }
            let d = edit_distance(&a.content, &b.content);
            if d <= tau {
                pairs.push(MatchPair {
                    a: a.id,
                    b: b.id,
                    distance: d,
                });
            }
        }
    }
    pairs.sort_unstable_by_key(|p| (p.a, p.b));
    pairs
}
