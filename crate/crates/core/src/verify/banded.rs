//! Length-aware banded edit-distance computation.
//!
//! To decide whether `ED(r, s) <= bound` with `Delta = |s| - |r|`, only the
//! cells `M(i, j)` with `i - floor((bound - Delta)/2) <= j <= i +
//! floor((bound + Delta)/2)` can lie on an alignment of cost at most the
//! bound, so each row needs at most `bound + 1` cells. A row whose every cell
//! satisfies `M(i, j) + |Delta - (j - i)| > bound` proves the distance
//! exceeds the bound (the second term is the cost still unavoidable after
//! reaching column `j`), which ends the computation early.

use crate::model::Verdict;

const INF: u32 = u32::MAX / 2;

/// Instrumentation for dynamic-programming work.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct DpCounter {
    /// Matrix cells computed.
    pub cells: u64,
    /// Matrix rows computed (base rows are free and not counted).
    pub rows: u64,
    /// Largest number of cells computed in any single row.
    pub max_row_cells: u64,
}

impl DpCounter {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Banded matrix with retained rows.
///
/// Rows are indexed by the "row" string, columns by the "column" string; the
/// two are not interchangeable once a computation has begun. Retaining rows
/// lets a later computation whose row string shares a prefix with the
/// previous one resume from the first differing row, which is what the
/// posting-list verifier relies on. Band shape depends only on the bound and
/// the two lengths, so resumption is valid whenever those are unchanged.
pub(crate) struct BandedMatrix {
    bound: u32,
    lo: usize,
    hi: usize,
    width: usize,
    rows_len: usize,
    cols_len: usize,
    /// `penalty[k]` = cost still unavoidable from band offset `k`.
    penalty: Vec<u32>,
    /// `rows[t]` is row `t`; `rows[0]` is the boundary row.
    rows: Vec<Box<[u32]>>,
    /// Per-row minimum of `M + penalty`; the row is dead when it exceeds
    /// the bound.
    row_min: Vec<u32>,
    spare: Vec<Box<[u32]>>,
}

impl BandedMatrix {
    pub(crate) fn new() -> Self {
        BandedMatrix {
            bound: 0,
            lo: 0,
            hi: 0,
            width: 0,
            rows_len: 0,
            cols_len: 0,
            penalty: Vec::new(),
            rows: Vec::new(),
            row_min: Vec::new(),
            spare: Vec::new(),
        }
    }

    /// Set up for strings of the given lengths. Returns false when the
    /// length gap alone exceeds the bound, in which case no rows may be
    /// advanced.
    pub(crate) fn begin(&mut self, bound: usize, rows_len: usize, cols_len: usize) -> bool {
        let delta = cols_len as i64 - rows_len as i64;
        if delta.unsigned_abs() as usize > bound {
            return false;
        }
        let b = bound as i64;
        self.bound = bound as u32;
        self.lo = ((b - delta) / 2) as usize;
        self.hi = ((b + delta) / 2) as usize;
        self.width = self.lo + self.hi + 1;
        self.rows_len = rows_len;
        self.cols_len = cols_len;
        self.penalty.clear();
        self.penalty
            .extend((0..self.width).map(|k| (delta - (k as i64 - self.lo as i64)).unsigned_abs() as u32));
        self.spare.append(&mut self.rows);
        self.row_min.clear();

        let mut base = self.fresh_row();
        let mut min = INF;
        for j in 0..=self.hi.min(cols_len) {
            base[j + self.lo] = j as u32;
            min = min.min(j as u32 + self.penalty[j + self.lo]);
        }
        self.rows.push(base);
        self.row_min.push(min);
        true
    }

    fn fresh_row(&mut self) -> Box<[u32]> {
        match self.spare.pop() {
            Some(mut row) if row.len() == self.width => {
                row.fill(INF);
                row
            }
            _ => vec![INF; self.width].into_boxed_slice(),
        }
    }

    /// Rows consumed so far (excluding the boundary row).
    pub(crate) fn rows_done(&self) -> usize {
        self.rows.len() - 1
    }

    /// Whether the last computed row can still lead to a within-bound result.
    pub(crate) fn last_alive(&self) -> bool {
        *self.row_min.last().expect("begin() first") <= self.bound
    }

    /// Drop computed rows beyond the first `keep`.
    pub(crate) fn truncate(&mut self, keep: usize) {
        while self.rows.len() - 1 > keep {
            self.spare.push(self.rows.pop().expect("nonempty"));
            self.row_min.pop();
        }
    }

    /// Compute the next row against row character `ch`. Returns whether the
    /// row is still alive.
    pub(crate) fn advance(&mut self, ch: u8, cols: &[u8], counter: &mut DpCounter) -> bool {
        let t = self.rows.len();
        debug_assert!(t <= self.rows_len, "more rows than declared");
        let mut cur = self.fresh_row();
        let prev = self.rows.last().expect("begin() first");

        let j_lo = t.saturating_sub(self.lo);
        let j_hi = (t + self.hi).min(self.cols_len);
        let mut min = INF;
        let mut cells = 0u64;
        for j in j_lo..=j_hi {
            let k = j + self.lo - t;
            let m = if j == 0 {
                t as u32
            } else {
                let up = if k + 1 < self.width { prev[k + 1] + 1 } else { INF };
                let left = if k > 0 { cur[k - 1] + 1 } else { INF };
                let diag = prev[k] + u32::from(ch != cols[j - 1]);
                up.min(left).min(diag)
            };
            cur[k] = m;
            min = min.min(m.saturating_add(self.penalty[k]));
            cells += 1;
        }
        counter.cells += cells;
        counter.rows += 1;
        counter.max_row_cells = counter.max_row_cells.max(cells);
        self.rows.push(cur);
        self.row_min.push(min);
        min <= self.bound
    }

    /// Final distance once all declared rows are consumed, if within bound.
    pub(crate) fn distance(&self) -> Option<usize> {
        debug_assert_eq!(self.rows_done(), self.rows_len, "rows not fully consumed");
        let k = self.cols_len + self.lo - self.rows_len;
        let d = self.rows.last().expect("begin() first")[k];
        (d <= self.bound).then_some(d as usize)
    }

    /// Advance through `rows_str[from..]`, stopping early when a row dies.
    /// Returns the exact distance when it is within the bound.
    pub(crate) fn finish(
        &mut self,
        rows_str: &[u8],
        cols_str: &[u8],
        from: usize,
        counter: &mut DpCounter,
    ) -> Option<usize> {
        debug_assert_eq!(self.rows_done(), from);
        for &ch in &rows_str[from..] {
            if !self.last_alive() {
                return None;
            }
            self.advance(ch, cols_str, counter);
        }
        if !self.last_alive() {
            return None;
        }
        self.distance()
    }

    /// One-shot bounded check of `rows_str` against `cols_str`.
    pub(crate) fn run(
        &mut self,
        rows_str: &[u8],
        cols_str: &[u8],
        bound: usize,
        counter: &mut DpCounter,
    ) -> Verdict {
        if !self.begin(bound, rows_str.len(), cols_str.len()) {
            return Verdict::Exceeds(bound);
        }
        match self.finish(rows_str, cols_str, 0, counter) {
            Some(d) => Verdict::Within(d),
            None => Verdict::Exceeds(bound),
        }
    }
}

/// Decide whether `ED(a, b) <= bound`, computing at most `bound + 1` cells
/// per matrix row. `Within` carries the exact distance.
pub fn banded_verify(a: &[u8], b: &[u8], bound: usize) -> Verdict {
    banded_verify_counted(a, b, bound, &mut DpCounter::new())
}

/// [`banded_verify`] with work instrumentation.
pub fn banded_verify_counted(a: &[u8], b: &[u8], bound: usize, counter: &mut DpCounter) -> Verdict {
    // Rows over the shorter string so row count and termination depth match
    // the shorter side.
    let (rows, cols) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    BandedMatrix::new().run(rows, cols, bound, counter)
}
