//! Unconstrained Levenshtein distance. This is the ground truth the rest of
//! the crate is tested against; it never prunes, never terminates early.

/// Exact edit distance (insert, delete, substitute, unit cost) between two
/// byte strings. Quadratic time, linear memory.
pub fn edit_distance(a: &[u8], b: &[u8]) -> usize {
    // Keep the row over the shorter string.
    let (rows, cols) = if a.len() < b.len() { (b, a) } else { (a, b) };
    if cols.is_empty() {
        return rows.len();
    }

    let mut prev: Vec<u32> = (0..=cols.len() as u32).collect();
    let mut cur: Vec<u32> = vec![0; cols.len() + 1];
    for (i, &rc) in rows.iter().enumerate() {
        cur[0] = i as u32 + 1;
        for (j, &cc) in cols.iter().enumerate() {
            let sub = prev[j] + u32::from(rc != cc);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[cols.len()] as usize
}
