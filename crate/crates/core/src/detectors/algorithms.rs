use super::{BucketTrace, GarbagePolicy, RunMetrics};
use crate::rng::PinnedRng;

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Node {
    key: u32,
    left: u32,
    right: u32,
}

/// Reusable working storage for the detectors that need memory.
#[derive(Debug, Default)]
pub struct Scratch {
    counts: Vec<u32>,
    slots: Vec<i64>,
    nodes: Vec<Node>,
    rows: Vec<u32>,
    row_len: Vec<u32>,
    bucket_last: u64,
}

fn good(comparisons: u64, assignments: u64) -> RunMetrics {
    RunMetrics {
        good: true,
        comparisons,
        assignments,
        first_repeat_position: None,
    }
}

fn bad(comparisons: u64, assignments: u64, position: usize) -> RunMetrics {
    RunMetrics {
        good: false,
        comparisons,
        assignments,
        first_repeat_position: Some(position),
    }
}

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// The detectors below take the input length `n` separately from the values
/// they are given. `s` may be a prefix of the input; when it runs out before
/// the outcome is known they return `None` and must be rerun on a longer
/// prefix.
fn finish(n: usize, s: &[u32], metrics: RunMetrics) -> Option<RunMetrics> {
    (s.len() == n).then_some(metrics)
}

pub(super) fn backward(n: usize, s: &[u32]) -> Option<RunMetrics> {
    let mut comparisons = 0;
    for i in 1..s.len() {
        let x = s[i];
        for j in (0..i).rev() {
            comparisons += 1;
            if s[j] == x {
                return Some(bad(comparisons, 0, i + 1));
            }
        }
    }
    finish(n, s, good(comparisons, 0))
}

/// Needs the whole input: row `i` scans every later element.
pub(super) fn forward(n: usize, s: &[u32]) -> Option<RunMetrics> {
    if s.len() < n {
        return None;
    }
    let mut comparisons = 0;
    for i in 0..n.saturating_sub(1) {
        let x = s[i];
        for (j, &y) in s.iter().enumerate().skip(i + 1) {
            comparisons += 1;
            if y == x {
                return Some(bad(comparisons, 0, j + 1));
            }
        }
    }
    Some(good(comparisons, 0))
}

impl Scratch {
    pub(super) fn linear(&mut self, n: usize, s: &[u32]) -> Option<RunMetrics> {
        self.counts.clear();
        self.counts.resize(n, 0);
        let mut assignments = n as u64;
        let mut comparisons = 0;
        for (i, &x) in s.iter().enumerate() {
            comparisons += 1;
            let cell = &mut self.counts[x as usize - 1];
            if *cell > 0 {
                return Some(bad(comparisons, assignments, i + 1));
            }
            *cell += 1;
            assignments += 1;
        }
        finish(n, s, good(comparisons, assignments))
    }

    fn prefill(&mut self, n: usize, policy: GarbagePolicy) {
        self.slots.clear();
        match policy {
            GarbagePolicy::Zeroed => self.slots.resize(n, 0),
            GarbagePolicy::Constant(c) => self.slots.resize(n, c),
            GarbagePolicy::SeededRandom(seed) => {
                let mut rng = PinnedRng::new(seed);
                let span = 3 * n as u64 + 1;
                let low = -(n as i64);
                self.slots
                    .extend((0..n).map(|_| low + rng.below(span) as i64));
            }
        }
    }

    pub(super) fn garbage(
        &mut self,
        n: usize,
        s: &[u32],
        policy: GarbagePolicy,
    ) -> Option<RunMetrics> {
        self.prefill(n, policy);
        let mut comparisons = 0;
        let mut assignments = 0;
        for (i, &x) in s.iter().enumerate() {
            let position = i as i64 + 1;
            comparisons += 1;
            let cell = &mut self.slots[x as usize - 1];
            let prev = *cell;
            // A cell is trusted only if it names an earlier position holding x.
            if prev >= 1 && prev < position && s[prev as usize - 1] == x {
                return Some(bad(comparisons, assignments, i + 1));
            }
            *cell = position;
            assignments += 1;
        }
        finish(n, s, good(comparisons, assignments))
    }

    pub(super) fn tree(&mut self, n: usize, s: &[u32]) -> Option<RunMetrics> {
        self.nodes.clear();
        self.nodes.push(Node {
            key: s[0],
            left: NIL,
            right: NIL,
        });
        let mut comparisons = 0;
        for (i, &x) in s.iter().enumerate().skip(1) {
            let mut at = 0usize;
            loop {
                comparisons += 1;
                let node = self.nodes[at];
                if node.key == x {
                    return Some(bad(comparisons, self.nodes.len() as u64, i + 1));
                }
                let next = if x < node.key { node.left } else { node.right };
                if next == NIL {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(Node {
                        key: x,
                        left: NIL,
                        right: NIL,
                    });
                    let parent = &mut self.nodes[at];
                    if x < parent.key {
                        parent.left = id;
                    } else {
                        parent.right = id;
                    }
                    break;
                }
                at = next as usize;
            }
        }
        finish(n, s, good(comparisons, self.nodes.len() as u64))
    }

    pub(super) fn bucket(&mut self, n: usize, s: &[u32]) -> Option<RunMetrics> {
        let m = ceil_sqrt(n);
        // Q is m x m, row-major; only the first row_len[r] cells of a row are live.
        if self.rows.len() < m * m {
            self.rows.resize(m * m, 0);
        }
        self.row_len.clear();
        self.row_len.resize(m, 0);
        self.bucket_last = 0;
        let mut comparisons = 0;
        let mut assignments = m as u64;
        for (i, &x) in s.iter().enumerate() {
            let r = (x as usize).div_ceil(m) - 1;
            let row = &self.rows[r * m..r * m + self.row_len[r] as usize];
            let mut here = 0;
            for &y in row {
                here += 1;
                if y == x {
                    self.bucket_last = here;
                    return Some(bad(comparisons + here, assignments, i + 1));
                }
            }
            comparisons += here;
            let len = self.row_len[r] as usize;
            self.rows[r * m + len] = x;
            self.row_len[r] += 1;
            assignments += 2;
        }
        finish(n, s, good(comparisons, assignments))
    }

    pub(super) fn bucket_state(&self) -> (&[u32], u64) {
        (&self.row_len, self.bucket_last)
    }

    pub(super) fn bucket_trace(&self) -> BucketTrace {
        BucketTrace {
            m: self.row_len.len(),
            occupancy: self.row_len.clone(),
            last_row_comparisons: self.bucket_last,
        }
    }
}
