//! Sliding-window median in O(n log n) worst case.
//!
//! The window is kept as two balanced ordered halves so that inserting the
//! incoming observation, deleting the departing one, and reading the middle
//! element each cost O(log w). Entries are keyed by (value, arrival index) so
//! deletions remove exactly the departing observation even among duplicates.
//! Infinities participate in the ordering normally.
//!
//! `naive_sliding_median` recomputes every window from scratch and is kept as
//! the independent reference implementation for equivalence and scaling tests.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// An odd window size in [3; n].
///
/// An even requested size is widened by one, so every consumer sees an odd
/// window; the upper bound is checked against the series at call time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    w: usize,
}

impl WindowConfig {
    pub fn new(w: usize) -> Result<Self> {
        let w = if w.is_multiple_of(2) { w + 1 } else { w };
        if w < 3 {
            return Err(Error::WindowTooSmall { window: w });
        }
        Ok(WindowConfig { w })
    }

    pub fn w(&self) -> usize {
        self.w
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    value: f64,
    seq: usize,
}

impl Entry {
    fn cmp_key(&self, other: &Entry) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.seq.cmp(&other.seq))
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key(other)
    }
}

/// The window split into a lower and an upper half.
///
/// Invariant: hi.len() <= lo.len() <= hi.len() + 1, so for an odd element
/// count the median is the maximum of the lower half.
#[derive(Default)]
struct OrderedWindow {
    lo: BTreeSet<Entry>,
    hi: BTreeSet<Entry>,
}

impl OrderedWindow {
    fn insert(&mut self, e: Entry) {
        match self.lo.last() {
            Some(m) if e > *m => self.hi.insert(e),
            _ => self.lo.insert(e),
        };
        self.rebalance();
    }

    fn remove(&mut self, e: &Entry) {
        if !self.lo.remove(e) {
            self.hi.remove(e);
        }
        self.rebalance();
    }

    fn rebalance(&mut self) {
        if self.lo.len() > self.hi.len() + 1 {
            let e = self.lo.pop_last().unwrap();
            self.hi.insert(e);
        } else if self.hi.len() > self.lo.len() {
            let e = self.hi.pop_first().unwrap();
            self.lo.insert(e);
        }
    }

    fn median(&self) -> f64 {
        self.lo.last().expect("window is non-empty").value
    }
}

fn check_window(w: usize, n: usize) -> Result<()> {
    if w > n {
        return Err(Error::WindowExceedsSeries { window: w, len: n });
    }
    Ok(())
}

/// Sliding median of `x`: output position i holds the median of the window
/// x_i..x_{i+w-1}; output length is n - w + 1.
pub fn sliding_median(x: &TimeSeries, cfg: &WindowConfig) -> Result<TimeSeries> {
    let w = cfg.w();
    let v = x.values();
    check_window(w, v.len())?;

    let mut window = OrderedWindow::default();
    let mut out = Vec::with_capacity(v.len() - w + 1);
    for (i, &value) in v.iter().enumerate() {
        window.insert(Entry { value, seq: i });
        if i + 1 >= w {
            out.push(window.median());
            let oldest = i + 1 - w;
            window.remove(&Entry {
                value: v[oldest],
                seq: oldest,
            });
        }
    }
    TimeSeries::new(out)
}

/// Reference implementation: selects the middle order statistic of every
/// window independently, O(w) per window. Identical contract and output.
pub fn naive_sliding_median(x: &TimeSeries, cfg: &WindowConfig) -> Result<TimeSeries> {
    let w = cfg.w();
    let v = x.values();
    check_window(w, v.len())?;

    let mid = w / 2;
    let mut buf = vec![0.0; w];
    let mut out = Vec::with_capacity(v.len() - w + 1);
    for start in 0..=(v.len() - w) {
        buf.copy_from_slice(&v[start..start + w]);
        let (_, m, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
        out.push(*m);
    }
    TimeSeries::new(out)
}
