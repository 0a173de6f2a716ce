//! Internal backtracking engine for color-assignment problems with
//! pairwise difference constraints.
//!
//! Variables carry bitmask domains over colors `1..=k` (k <= 16). The
//! engine does depth-first search with forward checking; variable order is
//! either most-constrained-first (ties by lowest index) or static
//! ascending index, values always ascending. Fully deterministic.

use std::time::{Duration, Instant};

pub(crate) struct Csp {
    /// Domain bitmask per variable; bit `c` allows color `c + 1`.
    pub domains: Vec<u16>,
    /// Difference-constraint neighbours per variable, deduplicated.
    pub adj: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Order {
    MinDomain,
    /// Variable index order; kept as the baseline the tests compare against.
    #[cfg_attr(not(test), allow(dead_code))]
    Static,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Limits {
    pub nodes: Option<u64>,
    pub wall: Option<Duration>,
}

#[derive(Debug)]
pub(crate) enum RawOutcome {
    /// Colors `1..=k` per variable.
    Sat(Vec<u8>),
    Unsat,
    Budget,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct RawStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub wall: Duration,
}

struct Frame {
    var: usize,
    tried: u16,
    base_mark: usize,
}

pub(crate) fn solve_csp(csp: &Csp, order: Order, limits: &Limits) -> (RawOutcome, RawStats) {
    let start = Instant::now();
    let n = csp.domains.len();
    let mut stats = RawStats::default();
    if n == 0 {
        stats.wall = start.elapsed();
        return (RawOutcome::Sat(Vec::new()), stats);
    }
    if csp.domains.iter().any(|&d| d == 0) {
        stats.wall = start.elapsed();
        return (RawOutcome::Unsat, stats);
    }

    let mut domains = csp.domains.clone();
    let mut assigned: Vec<u8> = vec![0; n]; // 0 = unassigned, else color
    let mut trail: Vec<(usize, u16)> = Vec::new();
    let mut frames: Vec<Frame> = Vec::new();

    let pick = |domains: &[u16], assigned: &[u8]| -> Option<usize> {
        match order {
            Order::Static => (0..n).find(|&v| assigned[v] == 0),
            Order::MinDomain => {
                let mut best: Option<(u32, usize)> = None;
                for v in 0..n {
                    if assigned[v] != 0 {
                        continue;
                    }
                    let size = domains[v].count_ones();
                    if best.map_or(true, |b| (size, v) < b) {
                        best = Some((size, v));
                    }
                }
                best.map(|(_, v)| v)
            }
        }
    };

    let first = pick(&domains, &assigned).expect("n > 0");
    frames.push(Frame {
        var: first,
        tried: 0,
        base_mark: 0,
    });

    loop {
        stats.max_depth = stats.max_depth.max(frames.len());
        let Some(frame) = frames.last_mut() else {
            stats.wall = start.elapsed();
            return (RawOutcome::Unsat, stats);
        };
        let var = frame.var;

        // Undo the previous attempt at this frame, if any.
        while trail.len() > frame.base_mark {
            let (w, bit) = trail.pop().unwrap();
            domains[w] |= bit;
        }
        assigned[var] = 0;

        let candidates = domains[var] & !frame.tried;
        if candidates == 0 {
            frames.pop();
            continue;
        }
        let bit = candidates & candidates.wrapping_neg();
        frame.tried |= bit;
        let color = bit.trailing_zeros() as u8 + 1;

        stats.nodes += 1;
        if let Some(max) = limits.nodes {
            if stats.nodes > max {
                stats.wall = start.elapsed();
                return (RawOutcome::Budget, stats);
            }
        }
        if stats.nodes % 4096 == 0 {
            if let Some(max) = limits.wall {
                if start.elapsed() > max {
                    stats.wall = start.elapsed();
                    return (RawOutcome::Budget, stats);
                }
            }
        }

        assigned[var] = color;
        let mut dead_end = false;
        for &w in &csp.adj[var] {
            let w = w as usize;
            if assigned[w] == 0 && domains[w] & bit != 0 {
                domains[w] &= !bit;
                trail.push((w, bit));
                if domains[w] == 0 {
                    dead_end = true;
                    break;
                }
            }
        }
        if dead_end {
            continue; // same frame: undo happens on re-entry
        }

        match pick(&domains, &assigned) {
            None => {
                stats.wall = start.elapsed();
                return (RawOutcome::Sat(assigned), stats);
            }
            Some(next) => {
                let mark = trail.len();
                frames.push(Frame {
                    var: next,
                    tried: 0,
                    base_mark: mark,
                });
            }
        }
    }
}

/// Plain union-find over `0..n`, used to merge variables that must share a
/// color before the search runs.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Lower root wins, keeping class representatives canonical.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
