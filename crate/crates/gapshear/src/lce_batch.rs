//! Sampled longest-common-extension estimates: one-shot, batched across a
//! run of shifts, and precomputed along anchored positions.
//!
//! Every value produced here is a one-sided sample: never below the exact
//! common extension, above the k-mismatch extension only with probability
//! exp(-(k+1)/r), simultaneously for every k. The scale `r` trades accuracy
//! for reads; `r <= 1` reads densely and is exact.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::lce_approx::{break_scan, period_of_window};
use crate::matching::{occurrences_in, period_of, to_sym, z_array, HoleGen, Sym};
use crate::sampling::{LazySampler, Seed};
use crate::text::Fragment;

/// One-sided sampled common extension of `x` and `y[j..]`.
///
/// Returns an `l` with a deterministic witness: either `l` is the boundary
/// `min(|x|, |y|-j)` or `x[l] != y[j+l]`. The result never undershoots the
/// exact common extension and overshoots the k-mismatch extension with
/// probability at most exp(-(k+1)/r). Scales `r <= 1` compare every
/// position and are exact.
pub fn bar_lce_single(x: &Fragment, y: &Fragment, r: f64, j: i64, seed: Seed) -> usize {
    let cap = if j < 0 {
        0
    } else {
        (x.len() as i64).min(y.len() as i64 - j)
    };
    if cap <= 0 {
        return 0;
    }
    let stop = if !(r > 1.0) {
        (0..cap).find(|&t| x.get(t) != y.get(j + t))
    } else if 1.0 / r > 0.0 {
        let mut sampler = LazySampler::new(0, 1.0 / r, seed).expect("rate is in (0, 1)");
        let positions = sampler.positions_below(cap).to_vec();
        positions.into_iter().find(|&s| x.get(s) != y.get(j + s))
    } else {
        None // infinite scale: nothing sampled
    };
    let l = stop.unwrap_or(cap);
    debug_assert!(l as usize >= lce0(x.raw(), y.raw(), 0, j));
    debug_assert!(l == cap || x.raw()[l as usize] != y.raw()[(j + l) as usize]);
    l as usize
}

/// Chains two independently sampled extensions across the split where the
/// first string ends: a sample that stops strictly inside the first string
/// stands on its own, one that reaches the split continues with the second
/// sample. The two samples must come from independent seeds or the misses
/// correlate and the tail bound is void. The shift `j` names the diagonal
/// both samples were taken on; the rule depends only on the split.
pub fn compose_bar_lce(first: usize, second: usize, split: usize, _j: i64) -> usize {
    if first < split {
        first
    } else {
        split + second
    }
}

/// Scans `t` for the first place its periodic structure breaks.
///
/// The leading window `t[0..2q)` must have shortest period at most `q`; the
/// scan compares sampled positions of `t` against the infinite repetition of
/// that window and narrows any disagreement down to a boundary `l` whose
/// trailing window `t(l-2q..l]` has shortest period above `q`. Returns `|t|`
/// when every sampled position agrees. Either way the result is a one-sided
/// sample of the common extension between `t` and its periodic continuation,
/// with the same guarantees as [`bar_lce_single`].
///
/// A leading window with period above `q` is a contract error; a window that
/// does not fit in `t` is a parameter error.
pub fn find_break2(t: &Fragment, r: f64, q: usize, seed: Seed) -> Result<usize> {
    let n = t.len() as i64;
    let q = q as i64;
    if q == 0 || 2 * q > n {
        return Err(Error::parameter(format!(
            "find_break2: window radius {q} does not fit a string of length {n}"
        )));
    }
    let mut read = |i: i64| t.get(i);
    let p = period_of_window(&mut read, 0, 2 * q);
    if p > q {
        return Err(Error::contract(format!(
            "find_break2: leading window has period {p}, above the bound {q}"
        )));
    }
    let rate = if r > 1.0 { 1.0 / r } else { 1.0 };
    let sampled: Vec<i64> = if rate > 0.0 {
        LazySampler::new(0, rate, seed)?.positions_below(n).to_vec()
    } else {
        Vec::new()
    };
    let l = break_scan(&mut read, n, q, p, &sampled).unwrap_or(n);
    debug_assert!(l == n || {
        let w = &t.raw()[(l - 2 * q + 1) as usize..=l as usize];
        period_of(w) as i64 > q
    });
    debug_assert!({
        let raw = t.raw();
        let first_break = (0..n)
            .find(|&i| raw[i as usize] != raw[(i % p) as usize])
            .unwrap_or(n);
        l >= first_break
    });
    Ok(l as usize)
}

/// Extension samples for every shift in a contiguous run, sharing work.
///
/// Exact prefix comparisons over one auxiliary string settle every shift
/// that disagrees within `2d` positions, where `d` is the span of the run.
/// Shifts that agree that far overlap pairwise, so the shared window is
/// periodic and two break hunts, one on each string, bound all of them at
/// once. A shift whose bound stops early while the strings still agree
/// locally is found by exact pattern matching against the break windows (at
/// most one shift per hunt can agree, because the windows have long periods)
/// and re-sampled from scratch. Each entry obeys the [`bar_lce_single`]
/// contract for its shift.
///
/// The result is indexed in shift order; an empty run yields an empty vector.
pub fn batch_bar_lce(
    x: &Fragment,
    y: &Fragment,
    r: f64,
    shifts: RangeInclusive<i64>,
    seed: Seed,
) -> Vec<usize> {
    if shifts.is_empty() {
        return Vec::new();
    }
    let (j_lo, j_hi) = (*shifts.start(), *shifts.end());
    if j_lo == j_hi {
        // A lone shift has nothing to share; one sampled scan answers it.
        return vec![bar_lce_single(x, y, r, j_lo, seed.child("single", 0))];
    }
    let d = j_hi - j_lo;
    let w = 2 * d; // shared-prefix threshold

    // X[0..w) $ Y[j_lo..j_hi+w): prefix lengths of the whole string at each
    // position of the Y part are exactly the extensions capped at w. The
    // separator and every out-of-bounds read become holes, which match
    // nothing, so string boundaries terminate matches on their own.
    let mut holes = HoleGen::default();
    let mut aux: Vec<Sym> = Vec::with_capacity((w + 1 + d + w) as usize);
    for i in 0..w {
        aux.push(to_sym(x.get(i), &mut holes));
    }
    aux.push(holes.fresh());
    for u in j_lo..j_hi + w {
        aux.push(to_sym(y.get(u), &mut holes));
    }
    let z = z_array(&aux);
    let mut out: Vec<usize> = (j_lo..=j_hi)
        .map(|j| z[(w + 1 + (j - j_lo)) as usize])
        .collect();
    debug_assert!(out.iter().all(|&l| l as i64 <= w));

    let full: Vec<i64> = (j_lo..=j_hi)
        .filter(|&j| out[(j - j_lo) as usize] as i64 == w)
        .collect();
    if full.len() <= 1 {
        for &j in &full {
            out[(j - j_lo) as usize] =
                bar_lce_single(x, y, r, j, seed.child("single", (j - j_lo) as u64));
        }
        assert_one_sided(x, y, j_lo, &out);
        return out;
    }

    // Two shifts matching the whole window overlap in at least w - d
    // positions, which forces a period at most d on the window and licenses
    // the break hunts on both strings.
    let c_lo = full[0];
    let c_hi = *full.last().unwrap();
    let lx = find_break2(x, r, d as usize, seed.child("break-x", 0))
        .expect("two full-window shifts force the leading-window period");
    let ybar_hi = (c_hi + x.len() as i64).min(y.len() as i64) as usize;
    let ybar = y.sub(c_lo as usize, ybar_hi);
    let ly = find_break2(&ybar, r, d as usize, seed.child("break-y", 0))
        .expect("the shared window starts every full-window shift");
    for &j in &full {
        out[(j - j_lo) as usize] = (lx as i64).min(ly as i64 - (j - c_lo)) as usize;
    }

    // Break positions bound a shift correctly unless the other string
    // happens to repeat the break window right where that shift stopped;
    // such shifts still agree locally and must be re-sampled. Ties between
    // the two hunts belong to the X side.
    let in_full = |j: i64| full.binary_search(&j).is_ok();
    let still_open =
        |j: i64, l: i64| l < (x.len() as i64).min(y.len() as i64 - j);
    let mut redo: Vec<i64> = Vec::new();
    if lx < x.len() {
        // Does X's break window recur in Y where a shift stopped at lx?
        let lx = lx as i64;
        let mut hg = HoleGen::default();
        let pat: Vec<Sym> = (lx - w + 1..=lx).map(|i| to_sym(x.get(i), &mut hg)).collect();
        let win: Vec<Sym> = (c_lo + lx - w + 1..=c_hi + lx)
            .map(|u| to_sym(y.get(u), &mut hg))
            .collect();
        for s in occurrences_in(&pat, &win) {
            let j = c_lo + s as i64;
            if in_full(j) && out[(j - j_lo) as usize] as i64 == lx && still_open(j, lx) {
                redo.push(j);
            }
        }
    }
    if ly < ybar.len() {
        // Does Y's break window recur in X where a shift stopped short of lx?
        let ly = ly as i64;
        let span = c_hi - c_lo;
        let mut hg = HoleGen::default();
        let pat: Vec<Sym> = (ly - w + 1..=ly).map(|i| to_sym(ybar.get(i), &mut hg)).collect();
        let win_lo = ly - span - w + 1;
        let win: Vec<Sym> = (win_lo..=ly).map(|i| to_sym(x.get(i), &mut hg)).collect();
        for s in occurrences_in(&pat, &win) {
            let l = win_lo + s as i64 + w - 1; // the stop this occurrence sits behind
            let j = c_lo + ly - l;
            if in_full(j)
                && out[(j - j_lo) as usize] as i64 == l
                && l < lx as i64
                && still_open(j, l)
            {
                redo.push(j);
            }
        }
    }
    debug_assert!(redo.len() <= 2);
    for (c, j) in redo.into_iter().enumerate() {
        out[(j - j_lo) as usize] = bar_lce_single(x, y, r, j, seed.child("redo", c as u64));
    }
    assert_one_sided(x, y, j_lo, &out);
    out
}

/// Precomputed grid of extension samples for a fixed run of diagonal
/// offsets, anchored at every `x ≡ |X| (mod q)` with `q = max(1, ⌈r·|Δ|⌉)`.
/// Built by [`build_lce_index`], read by [`query_lce_index`].
pub struct LceIndex {
    x: Fragment,
    y: Fragment,
    r: f64,
    d_lo: i64,
    d_hi: i64,
    q: i64,
    rows: HashMap<i64, Vec<usize>>,
}

impl LceIndex {
    /// Distance between consecutive anchors.
    pub fn block(&self) -> usize {
        self.q as usize
    }

    /// The diagonal offsets each row covers, in output order.
    pub fn offsets(&self) -> RangeInclusive<i64> {
        self.d_lo..=self.d_hi
    }

    /// Sampling scale the grid was built with.
    pub fn scale(&self) -> f64 {
        self.r
    }
}

/// Builds the anchored grid right to left: each anchor's batch runs only
/// over the next block of `x` and chains into the row above it through
/// [`compose_bar_lce`], so one row costs one batch no matter how far its
/// extensions reach. Rows use independent sub-seeds, which is what makes
/// the chaining rule sound.
///
/// The offset range must be nonempty and the scale positive and finite.
pub fn build_lce_index(
    x: &Fragment,
    y: &Fragment,
    r: f64,
    offsets: RangeInclusive<i64>,
    seed: Seed,
) -> LceIndex {
    assert!(!offsets.is_empty(), "offset range must be nonempty");
    assert!(r > 0.0 && r.is_finite(), "scale must be positive and finite");
    let (d_lo, d_hi) = (*offsets.start(), *offsets.end());
    let width = (d_hi - d_lo + 1) as usize;
    let q = ((r * width as f64).ceil() as i64).max(1);
    let mut rows = HashMap::new();
    let mut xa = x.len() as i64;
    rows.insert(xa, vec![0usize; width]);
    while xa >= q {
        xa -= q;
        let piece = x.sub(xa as usize, (xa + q) as usize);
        let vals = batch_bar_lce(&piece, y, r, xa + d_lo..=xa + d_hi, seed.child("row", xa as u64));
        let upper = &rows[&(xa + q)];
        let row: Vec<usize> = vals
            .iter()
            .zip(upper.iter())
            .map(|(&v, &u)| compose_bar_lce(v, u, q as usize, 0))
            .collect();
        debug_assert!(row.iter().all(|&l| l as i64 <= x.len() as i64 - xa));
        rows.insert(xa, row);
    }
    LceIndex { x: x.clone(), y: y.clone(), r, d_lo, d_hi, q, rows }
}

/// Extension samples of `x[xq..]` against `y[xq+δ..]` for every offset `δ`,
/// in offset order. Anchored positions return their stored row; any other
/// position inside the string pays one fresh batch over the partial block up
/// to the next anchor and chains into that anchor's row. Positions outside
/// `[0..|X|]` extend nowhere and yield zeros.
pub fn query_lce_index(idx: &LceIndex, xq: i64, seed: Seed) -> Vec<usize> {
    let width = (idx.d_hi - idx.d_lo + 1) as usize;
    let xl = idx.x.len() as i64;
    if xq < 0 || xq > xl {
        return vec![0; width];
    }
    let anchor = xq + (xl - xq) % idx.q;
    let row = if anchor == xq {
        idx.rows[&anchor].clone()
    } else {
        let piece = idx.x.sub(xq as usize, anchor as usize);
        let vals = batch_bar_lce(&piece, &idx.y, idx.r, xq + idx.d_lo..=xq + idx.d_hi, seed);
        let gap = (anchor - xq) as usize;
        let upper = &idx.rows[&anchor];
        vals.iter()
            .zip(upper.iter())
            .map(|(&v, &u)| compose_bar_lce(v, u, gap, 0))
            .collect()
    };
    debug_assert!(row
        .iter()
        .enumerate()
        .all(|(i, &l)| l >= lce0(idx.x.raw(), idx.y.raw(), xq, xq + idx.d_lo + i as i64)
            && l as i64 <= xl - xq));
    row
}

/// Exact common extension on raw bytes; assertion oracle, does not probe.
fn lce0(x: &[u8], y: &[u8], x0: i64, y0: i64) -> usize {
    if x0 < 0 || y0 < 0 || x0 > x.len() as i64 || y0 > y.len() as i64 {
        return 0;
    }
    x[x0 as usize..]
        .iter()
        .zip(&y[y0 as usize..])
        .take_while(|(a, b)| a == b)
        .count()
}

fn assert_one_sided(x: &Fragment, y: &Fragment, j_lo: i64, out: &[usize]) {
    debug_assert!(out
        .iter()
        .enumerate()
        .all(|(i, &l)| l >= lce0(x.raw(), y.raw(), 0, j_lo + i as i64)));
}
