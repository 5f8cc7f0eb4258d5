//! Gap testers for edit distance: ACCEPT when the distance is at most `k`,
//! REJECT when it is far above `k`, with all string access going through
//! sampled LCE estimates so that runs stay sublinear for large `k`.
//!
//! [`gap_quadratic`] pushes a single greedy frontier and separates `k`
//! from `(3k+5)k`. [`gap_alpha`] widens the rejection threshold to
//! `k + 3(k+1)(alpha-1)` in exchange for cheaper queries: diagonals are
//! grouped in runs of `alpha` and each block of `b` neighbouring groups
//! is served by one anchored LCE index.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::lce_approx::apx_lce_max_in;
use crate::lce_batch::{build_lce_index, query_lce_index, LceIndex};
use crate::sampling::{RateConfig, Seed};
use crate::text::{CachedText, Text, Verdict};

/// Outcome of one tester call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapVerdict {
    pub verdict: Verdict,
    /// Character reads consumed: the probe-counter delta of the two input
    /// texts between entry and return.
    pub probes: u64,
    pub wall_time: Duration,
    /// Final d-values for diagnostics: one entry per budget step for the
    /// greedy tester, one per diagonal group for the wide tester. `None`
    /// marks a group the run never reached.
    pub frontier: Option<Vec<Option<i64>>>,
}

/// Greedy tester state after `i` budget steps: some prefix of Y reaches
/// X[0..d_prime) with at most `i` edits, and `d` extends that by the best
/// run of free matches over the allowed diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyFrontier {
    pub i: usize,
    pub d_prime: i64,
    pub d: i64,
}

/// Decides `ED(X,Y) <= k` against `ED(X,Y) > (3k+5)k`.
///
/// ACCEPT is w.h.p. correct whenever the distance is at most `k`, REJECT
/// w.h.p. correct whenever it exceeds `(3k+5)k`; between the thresholds
/// either answer may come back. Expected reads are about
/// `|X|/(k+1) * log` plus `k^2` for the per-row candidate filters.
pub fn gap_quadratic(x: &Text, y: &Text, k: usize, rates: RateConfig, seed: Seed) -> GapVerdict {
    let started = Instant::now();
    let before = x.probes() + y.probes();
    let xlen = x.len() as i64;
    let ylen = y.len() as i64;
    let kk = k as i64;

    // One read cache pair for the whole run: neighbouring rows revisit
    // positions near their shared boundary and a repeat read of the same
    // position must not be billed twice.
    let mut cx = CachedText::new(x);
    let mut cy = CachedText::new(y);

    let mut trail: Vec<Option<i64>> = Vec::with_capacity(k + 1);
    let mut front = GreedyFrontier { i: 0, d_prime: 0, d: 0 };
    let mut floor = 0i64;
    for i in 0..=k {
        front.i = i;
        // 0 <= d'_0 <= d_0 <= d'_1 <= ... <= d_k <= |X|, checked live.
        assert!(front.d_prime >= floor, "frontier must not retreat");
        let reach = apx_lce_max_in(
            &mut cx,
            &mut cy,
            front.d_prime,
            front.d_prime - kk..=front.d_prime + kk,
            k,
            rates,
            seed.child("row", i as u64),
        ) as i64;
        front.d = front.d_prime + reach;
        assert!(
            front.d_prime <= front.d && front.d <= xlen,
            "frontier row {i} out of order: d' = {}, d = {}, |X| = {xlen}",
            front.d_prime,
            front.d,
        );
        floor = front.d;
        trail.push(Some(front.d));
        if front.d == xlen {
            break; // saturated: every later row extends by zero
        }
        front.d_prime = (front.d + 1).min(xlen);
    }
    trail.resize(k + 1, Some(xlen));

    let verdict = if (xlen - ylen).abs() <= kk && trail[k] == Some(xlen) {
        Verdict::Accept
    } else {
        Verdict::Reject
    };
    GapVerdict {
        verdict,
        probes: x.probes() + y.probes() - before,
        wall_time: started.elapsed(),
        frontier: Some(trail),
    }
}

/// Reachability table of the wide tester. Row `i` holds the furthest X
/// prefixes reachable with `i` edits; column `j` covers the diagonal
/// group `[j*alpha..(j+1)*alpha)`. `None` marks "not reachable". The two
/// outermost columns are permanent `None` sentinels so propagation can
/// look one group left and right without bounds checks.
#[derive(Debug, Clone)]
pub struct WideFrontier {
    pub alpha: usize,
    pub b: usize,
    j_lo: i64,
    d: Vec<Vec<Option<i64>>>,
    d_prime: Vec<Vec<Option<i64>>>,
}

impl WideFrontier {
    fn new(k: usize, alpha: usize, b: usize) -> WideFrontier {
        let ai = alpha as i64;
        let main_lo = (-(k as i64)).div_euclid(ai);
        let main_hi = (k as i64).div_euclid(ai);
        let cols = (main_hi - main_lo + 3) as usize; // main range plus sentinels
        let mut f = WideFrontier {
            alpha,
            b,
            j_lo: main_lo - 1,
            d: vec![vec![None; cols]; k + 1],
            d_prime: vec![vec![None; cols]; k + 1],
        };
        let origin = f.col(0);
        f.d_prime[0][origin] = Some(0); // the only reachable row-0 entry
        f
    }

    fn col(&self, j: i64) -> usize {
        (j - self.j_lo) as usize
    }

    /// Diagonal groups the table actually advances (sentinels excluded).
    pub fn main_range(&self) -> RangeInclusive<i64> {
        self.j_lo + 1..=self.j_lo + self.d[0].len() as i64 - 2
    }

    pub fn d_at(&self, i: usize, j: i64) -> Option<i64> {
        self.d[i][self.col(j)]
    }

    pub fn d_prime_at(&self, i: usize, j: i64) -> Option<i64> {
        self.d_prime[i][self.col(j)]
    }

    fn set_d(&mut self, i: usize, j: i64, v: i64, xlen: i64) {
        assert!(v <= xlen, "d value {v} exceeds |X| = {xlen}");
        let c = self.col(j);
        self.d[i][c] = Some(v);
    }

    fn set_d_prime(&mut self, i: usize, j: i64, v: i64) {
        let c = self.col(j);
        self.d_prime[i][c] = Some(v);
    }
}

/// Decides `ED(X,Y) <= k` against `ED(X,Y) > k + 3(k+1)(alpha-1)`.
///
/// Diagonals are grouped in runs of `alpha`; each block of `b`
/// consecutive groups shares one anchored index, so a cell query costs
/// one index probe instead of `alpha` separate extensions. `b` defaults
/// to [`choose_block_parameter`]. Values of `alpha` above `max(1,k)` add
/// nothing over `alpha = max(1,k)` and quietly fall back to it.
pub fn gap_alpha(
    x: &Text,
    y: &Text,
    k: usize,
    alpha: usize,
    b: Option<usize>,
    rates: RateConfig,
    seed: Seed,
) -> Result<GapVerdict> {
    if alpha < 1 {
        return Err(Error::parameter("alpha must be a positive integer"));
    }
    if b == Some(0) {
        return Err(Error::parameter("block parameter must be positive when given"));
    }
    let started = Instant::now();
    let before = x.probes() + y.probes();

    let alpha = alpha.min(k.max(1));
    let b = b.unwrap_or_else(|| choose_block_parameter(x.len(), k, alpha));

    let xlen = x.len() as i64;
    let ylen = y.len() as i64;
    let kk = k as i64;
    let ai = alpha as i64;
    let bi = b as i64;
    // Each estimate must stay below the alpha-1 budget truth w.p.
    // 1 - n^(-lambda), so the sampling scale comes from that budget.
    let r = rates.bar_lce_scale(x.len() + y.len(), alpha - 1);

    let mut table = WideFrontier::new(k, alpha, b);
    let main = table.main_range();

    // One anchored index per block of b consecutive diagonal groups; the
    // block of group j is floor(j / b).
    let block_lo = main.start().div_euclid(bi);
    let block_hi = main.end().div_euclid(bi);
    let xw = x.whole();
    let yw = y.whole();
    let indices: Vec<LceIndex> = (block_lo..=block_hi)
        .map(|g| {
            let offs = g * ai * bi..=(g + 1) * ai * bi - 1;
            build_lce_index(&xw, &yw, r, offs, seed.child("block", (g - block_lo) as u64))
        })
        .collect();

    let cols = (main.end() - main.start() + 1) as u64;
    for i in 0..=k {
        for j in main.clone() {
            let Some(dp) = table.d_prime_at(i, j) else { continue };
            let g = j.div_euclid(bi);
            let row = query_lce_index(
                &indices[(g - block_lo) as usize],
                dp,
                seed.child("cell", i as u64 * cols + (j - main.start()) as u64),
            );
            // The block row covers offsets [g*alpha*b..(g+1)*alpha*b);
            // this group wants the slice [j*alpha..(j+1)*alpha).
            let lo = (j * ai - g * ai * bi) as usize;
            let ext = row[lo..lo + alpha].iter().copied().max().unwrap() as i64;
            table.set_d(i, j, dp + ext, xlen);
        }
        if i == k {
            break;
        }
        for j in main.clone() {
            let left = table.d_at(i, j - 1); // one Y char consumed for free
            let here = table.d_at(i, j).map(|v| v + 1);
            let right = table.d_at(i, j + 1).map(|v| v + 1);
            if let Some(best) = [left, here, right].into_iter().flatten().max() {
                table.set_d_prime(i + 1, j, best.min(xlen));
            }
        }
    }

    // The length gate guarantees the target group is inside the table.
    let verdict = if (xlen - ylen).abs() <= kk
        && table.d_at(k, (ylen - xlen).div_euclid(ai)) == Some(xlen)
    {
        Verdict::Accept
    } else {
        Verdict::Reject
    };
    let frontier = main.clone().map(|j| table.d_at(k, j)).collect();
    Ok(GapVerdict {
        verdict,
        probes: x.probes() + y.probes() - before,
        wall_time: started.elapsed(),
        frontier: Some(frontier),
    })
}

/// Block size balancing index build cost against per-cell query cost:
/// `clamp(round(sqrt(n) / (alpha * sqrt(max(k,1)))), 1, ceil(max(k,1)/alpha))`
/// where `n` is the length of X.
pub fn choose_block_parameter(n: usize, k: usize, alpha: usize) -> usize {
    assert!(alpha >= 1, "alpha must be positive");
    let keff = k.max(1);
    let upper = (keff + alpha - 1) / alpha;
    let raw = ((n as f64).sqrt() / (alpha as f64 * (keff as f64).sqrt())).round() as usize;
    raw.clamp(1, upper)
}
