//! Break finding and one-sided approximate LCE maximisation.
//!
//! The core query here is: from position `i` in `X` and a contiguous range
//! `J` of starting positions in `Y`, how far can we extend a common prefix?
//! `apx_lce_max` answers with a value sandwiched (w.h.p.) between the best
//! exact extension and the best extension with at most `k` mismatches, while
//! probing far fewer positions than the extension is long.
//!
//! The engine behind it is `gap_match_oracle`, a YES/NO test: does some
//! `j in J` match `X[i..i+len)` exactly (YES is then forced), or do all of
//! them mismatch in more than `k` places (NO follows w.h.p.)? Periodicity is
//! what makes the oracle cheap: either the relevant windows are periodic, in
//! which case candidates collapse into an arithmetic progression and one
//! representative speaks for all, or a break (a window with long shortest
//! period) exists and pins down at most one viable candidate. `find_break`
//! hunts for such a window by sampling positions that disagree with the
//! period of the leading window.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::matching::period_of;
use crate::sampling::{LazySampler, RateConfig, Seed};
use crate::text::{symbols_match, CachedText, Fragment, Text};

/// Outcome of a break search.
#[derive(Debug, Clone)]
pub enum BreakOutcome {
    /// A window of length `2q` whose shortest period exceeds `q`. Coordinates
    /// refer to the text the searched fragment came from.
    Break(Fragment),
    /// No break surfaced: the fragment agrees with the period `p` of its
    /// leading `2q` symbols everywhere except, w.h.p., at most `k` positions.
    Periodic(usize),
}

/// Answer of [`gap_match_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    No,
}

impl OracleAnswer {
    pub fn is_yes(self) -> bool {
        matches!(self, OracleAnswer::Yes)
    }
}

/// Searches `t` for a window of length `2q` with shortest period above `q`.
///
/// If the leading window `t[0..2q)` already qualifies it is returned as is.
/// Otherwise positions are sampled at a rate calibrated for tolerance `k`;
/// any sampled position that disagrees with the periodic extension of the
/// leading window seeds a binary search that pins a break deterministically
/// (the returned window always satisfies the period bound). `Periodic(p)`
/// certifies that at most `k` positions disagree with period `p`, with high
/// probability in `|t|`.
pub fn find_break(
    t: &Fragment,
    q: usize,
    k: usize,
    rates: RateConfig,
    seed: Seed,
) -> Result<BreakOutcome> {
    if q < 1 || 2 * q > t.len() {
        return Err(Error::parameter(format!(
            "break search needs 1 <= q <= len/2, got q={q} with len={}",
            t.len()
        )));
    }
    let len = t.len() as i64;
    let q = q as i64;
    let p = period_of_window(&mut |i| t.get(i), 0, 2 * q);
    if p > q {
        return Ok(BreakOutcome::Break(t.sub(0, 2 * q as usize)));
    }
    let rate = safe_rate(rates.sample_rate(t.len(), k));
    let mut sampler = LazySampler::new(0, rate, seed.child("break", 0))?;
    let sampled = sampler.positions_below(len).to_vec();
    match break_scan(&mut |i| t.get(i), len, q, p, &sampled) {
        Some(b) => {
            let window = t.sub((b - 2 * q + 1) as usize, (b + 1) as usize);
            debug_assert!(period_of(window.raw()) > q as usize);
            Ok(BreakOutcome::Break(window))
        }
        None => Ok(BreakOutcome::Periodic(p as usize)),
    }
}

/// Tests whether `x[i..i+len)` occurs at some start in `j` within `y`.
///
/// Returns `Yes` whenever an exact occurrence exists (this direction is
/// deterministic) and `No`, with high probability, when every candidate start
/// disagrees in more than `k` positions. Between those regimes either answer
/// may come back. Positions probed: `O(len/(k+1))` times logarithmic factors,
/// plus `O(|j|)`.
pub fn gap_match_oracle(
    x: &Text,
    y: &Text,
    i: i64,
    j: RangeInclusive<i64>,
    k: usize,
    len: usize,
    rates: RateConfig,
    seed: Seed,
) -> Result<OracleAnswer> {
    let (j_lo, j_hi) = (*j.start(), *j.end());
    let len = len as i64;
    if len < 1 {
        return Err(Error::parameter("match oracle needs a positive length"));
    }
    if j_lo > j_hi {
        return Err(Error::parameter("match oracle needs a nonempty start range"));
    }
    if i < 0 || i + len > x.len() as i64 {
        return Err(Error::parameter(format!(
            "pattern window [{i}, {}) leaves the first string (len {})",
            i + len,
            x.len()
        )));
    }
    if j_lo < 0 || j_hi + len > y.len() as i64 {
        return Err(Error::parameter(format!(
            "start range [{j_lo}, {j_hi}] at length {len} leaves the second string (len {})",
            y.len()
        )));
    }
    let mut cx = CachedText::new(x);
    let mut cy = CachedText::new(y);
    let mut session = RangeMaxSession::new(&mut cx, &mut cy, i, j_lo, j_hi, k, rates, seed);
    Ok(session.oracle(len))
}

/// Largest extension length from `x[i]` over starts `j` in `y`, approximated
/// from the mismatch-tolerant side.
///
/// The result `r` satisfies `max_j LCE_0(i, j) <= r` always, and w.h.p.
/// `r <= max_j LCE_k(i, j)` (extension with at most `k` mismatches). Starts
/// outside `[0, |y|]` are ignored; an empty or fully out-of-range `j`, or an
/// `i` outside `[0, |x|]`, yields 0.
pub fn apx_lce_max(
    x: &Text,
    y: &Text,
    i: i64,
    j: RangeInclusive<i64>,
    k: usize,
    rates: RateConfig,
    seed: Seed,
) -> usize {
    let mut cx = CachedText::new(x);
    let mut cy = CachedText::new(y);
    apx_lce_max_in(&mut cx, &mut cy, i, j, k, rates, seed)
}

/// [`apx_lce_max`] over caller-owned read caches, so that one run of a
/// higher-level algorithm pays for each distinct position at most once even
/// across many range-max queries.
pub(crate) fn apx_lce_max_in(
    cx: &mut CachedText,
    cy: &mut CachedText,
    i: i64,
    j: RangeInclusive<i64>,
    k: usize,
    rates: RateConfig,
    seed: Seed,
) -> usize {
    let xl = cx.len() as i64;
    let yl = cy.len() as i64;
    let j_lo = (*j.start()).max(0);
    let j_hi = (*j.end()).min(yl);
    if j_lo > j_hi || i < 0 || i > xl {
        return 0;
    }
    let cap = (xl - i).min(yl - j_lo);
    if cap <= 0 {
        return 0;
    }
    let mut session = RangeMaxSession::new(cx, cy, i, j_lo, j_hi, k, rates, seed);

    // Thresholds below 3|J| are cheapest to answer exactly: candidates die on
    // their first mismatch, and the per-candidate mismatch offsets are the
    // exact extensions. So the geometric search starts at 3|J| and only the
    // failure of that first probe drops us into the exact regime.
    let l0 = (3 * session.q).min(cap);
    if !session.oracle(l0).is_yes() {
        session.ensure_exact(l0);
        debug_assert!(
            session.alive.is_empty(),
            "a NO at the opening threshold rules out exact matches below it"
        );
        let best = session.death.values().copied().max().unwrap_or(0);
        return best as usize;
    }
    let mut lo = l0;
    if lo >= cap {
        return cap as usize;
    }
    let mut hi;
    loop {
        let next = (lo * 2).min(cap);
        if session.oracle(next).is_yes() {
            lo = next;
            if lo >= cap {
                return cap as usize;
            }
        } else {
            hi = next;
            break;
        }
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if session.oracle(mid).is_yes() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo as usize
}

/// One range-max query in flight: the two read caches, the candidate filter,
/// and the sampling streams shared by every threshold the search visits.
///
/// Sharing matters twice over. Reusing one Bernoulli stream across thresholds
/// keeps the probed shift set nested, so the probe bill grows with the
/// largest threshold instead of the sum of all of them; and the candidate
/// filter only ever extends, so a start refuted once is never re-read. Each
/// verification still sees a fresh Bernoulli set on its range, which is all
/// the per-call guarantee needs.
pub(crate) struct RangeMaxSession<'a> {
    x: &'a mut CachedText,
    y: &'a mut CachedText,
    i: i64,
    j_lo: i64,
    j_hi: i64,
    q: i64,
    verify: LazySampler,
    fb_x: LazySampler,
    fb_y: LazySampler,
    // Candidate filter: starts still matching x[i..i+depth) exactly, and the
    // first mismatching offset of every start already refuted.
    depth: i64,
    alive: Vec<i64>,
    death: HashMap<i64, i64>,
    per_x: Option<i64>,
    per_y: HashMap<i64, i64>,
}

impl<'a> RangeMaxSession<'a> {
    /// `j_lo..=j_hi` must be nonempty and within `[0, |y|]`.
    pub(crate) fn new(
        x: &'a mut CachedText,
        y: &'a mut CachedText,
        i: i64,
        j_lo: i64,
        j_hi: i64,
        k: usize,
        rates: RateConfig,
        seed: Seed,
    ) -> RangeMaxSession<'a> {
        debug_assert!(j_lo <= j_hi && j_lo >= 0 && j_hi <= y.len() as i64);
        let n = x.len() + y.len();
        let verify_rate = safe_rate(rates.sample_rate(n, k));
        let break_rate = safe_rate(rates.sample_rate(n, k / 2));
        let verify = LazySampler::new(0, verify_rate, seed.child("verify", 0))
            .expect("sanitized rate is always valid");
        let fb_x = LazySampler::new(0, break_rate, seed.child("break-x", 0))
            .expect("sanitized rate is always valid");
        let fb_y = LazySampler::new(0, break_rate, seed.child("break-y", 0))
            .expect("sanitized rate is always valid");
        RangeMaxSession {
            x,
            y,
            i,
            j_lo,
            j_hi,
            q: j_hi - j_lo + 1,
            verify,
            fb_x,
            fb_y,
            depth: 0,
            alive: (j_lo..=j_hi).collect(),
            death: HashMap::new(),
            per_x: None,
            per_y: HashMap::new(),
        }
    }

    /// Answers one threshold. Caller guarantees `1 <= len <= |x| - i` and
    /// that at least one start fits, i.e. `j_lo + len <= |y|`.
    pub(crate) fn oracle(&mut self, len: i64) -> OracleAnswer {
        debug_assert!(len >= 1 && self.i + len <= self.x.len() as i64);
        debug_assert!(self.j_lo + len <= self.y.len() as i64);
        let clamp_hi = self.y.len() as i64 - len;
        if len < 3 * self.q {
            // Short threshold: exact matching is as cheap as sampling here.
            // A start matches iff its first recorded mismatch (if any) sits at
            // or beyond the threshold.
            self.ensure_exact(len);
            let hit = (self.j_lo..=self.j_hi).any(|j| {
                j <= clamp_hi
                    && match self.death.get(&j) {
                        Some(&d) => d >= len,
                        None => self.depth >= len,
                    }
            });
            return if hit { OracleAnswer::Yes } else { OracleAnswer::No };
        }
        // Candidates that survive 3|J| symbols either collapse to one start
        // or sit on an arithmetic progression inside a periodic window.
        self.ensure_while_contested(3 * self.q);
        let c: Vec<i64> = self.alive.iter().copied().filter(|&j| j <= clamp_hi).collect();
        if c.is_empty() {
            return OracleAnswer::No;
        }
        if c.len() == 1 {
            return self.sampled_verify(c[0], len);
        }
        debug_assert!(self.depth >= 3 * self.q);
        let (min_c, max_c) = (c[0], *c.last().unwrap());
        let bx = self.find_break_x(len);
        let by = self.find_break_y(max_c, min_c + len);
        if bx.is_none() && by.is_none() {
            // Both windows are periodic up to a few stray symbols and the
            // candidates all start inside one period phase, so any candidate
            // is within tolerance whenever one is.
            return OracleAnswer::Yes;
        }
        let mut c = c;
        if let Some((lo, hi)) = bx {
            c.retain(|&j| {
                let off = j - self.i;
                range_matches(self.x, self.y, lo, lo + off, hi - lo)
            });
        }
        if let Some((lo, hi)) = by {
            c.retain(|&j| {
                let off = self.i - j;
                range_matches(self.y, self.x, lo, lo + off, hi - lo)
            });
        }
        if c.is_empty() {
            return OracleAnswer::No;
        }
        debug_assert!(c.len() == 1, "a break admits at most one aligned candidate");
        self.sampled_verify(c[0], len)
    }

    /// Extends the candidate filter to `target` symbols, retiring starts as
    /// they mismatch. Stops early once nobody is left.
    fn ensure_exact(&mut self, target: i64) {
        self.extend_filter(target, 1);
    }

    /// Extends the filter only while at least two candidates remain: once a
    /// single start survives, sampled verification takes over and dense
    /// comparison would be wasted probes.
    fn ensure_while_contested(&mut self, target: i64) {
        self.extend_filter(target, 2);
    }

    fn extend_filter(&mut self, target: i64, min_alive: usize) {
        while self.depth < target && self.alive.len() >= min_alive {
            let t = self.depth;
            let xc = self.x.get(self.i + t);
            let y = &mut *self.y;
            let death = &mut self.death;
            self.alive.retain(|&j| {
                if symbols_match(xc, y.get(j + t)) {
                    true
                } else {
                    death.insert(j, t);
                    false
                }
            });
            self.depth += 1;
        }
    }

    /// Compares `x[i+s]` with `y[j0+s]` at sampled shifts `s` below `len`.
    fn sampled_verify(&mut self, j0: i64, len: i64) -> OracleAnswer {
        let shifts = self.verify.positions_below(len).to_vec();
        for s in shifts {
            if !symbols_match(self.x.get(self.i + s), self.y.get(j0 + s)) {
                return OracleAnswer::No;
            }
        }
        OracleAnswer::Yes
    }

    /// Break search over `x[i..i+len)` with tolerance `k/2`. Returns absolute
    /// coordinates of a window with shortest period above `q`, or `None` when
    /// the window looks periodic at the sampled positions.
    fn find_break_x(&mut self, len: i64) -> Option<(i64, i64)> {
        let (i0, q) = (self.i, self.q);
        let p = match self.per_x {
            Some(p) => p,
            None => {
                let x = &mut *self.x;
                let p = period_of_window(&mut |r| x.get(i0 + r), 0, 2 * q);
                self.per_x = Some(p);
                p
            }
        };
        if p > q {
            return Some((i0, i0 + 2 * q));
        }
        let sampled = self.fb_x.positions_below(len).to_vec();
        let x = &mut *self.x;
        let b = break_scan(&mut |r| x.get(i0 + r), len, q, p, &sampled)?;
        Some((i0 + b - 2 * q + 1, i0 + b + 1))
    }

    /// Break search over `y[t_lo..t_hi)`, sharing one position stream across
    /// thresholds even though the window start moves with the candidate set.
    fn find_break_y(&mut self, t_lo: i64, t_hi: i64) -> Option<(i64, i64)> {
        let q = self.q;
        debug_assert!(t_hi - t_lo >= 2 * q);
        let p = match self.per_y.get(&t_lo) {
            Some(&p) => p,
            None => {
                let y = &mut *self.y;
                let p = period_of_window(&mut |r| y.get(t_lo + r), 0, 2 * q);
                self.per_y.insert(t_lo, p);
                p
            }
        };
        if p > q {
            return Some((t_lo, t_lo + 2 * q));
        }
        let sampled: Vec<i64> = self
            .fb_y
            .positions_below(t_hi)
            .iter()
            .copied()
            .filter(|&a| a >= t_lo)
            .map(|a| a - t_lo)
            .collect();
        let y = &mut *self.y;
        let b = break_scan(&mut |r| y.get(t_lo + r), t_hi - t_lo, q, p, &sampled)?;
        Some((t_lo + b - 2 * q + 1, t_lo + b + 1))
    }
}

/// True when `a[a_lo..a_lo+len)` equals `b[b_lo..b_lo+len)`; out-of-bounds
/// positions match nothing.
fn range_matches(a: &mut CachedText, b: &mut CachedText, a_lo: i64, b_lo: i64, len: i64) -> bool {
    (0..len).all(|t| symbols_match(a.get(a_lo + t), b.get(b_lo + t)))
}

/// Shortest period of the window `[lo, hi)` read through `read`. The window
/// must be in bounds.
pub(crate) fn period_of_window(read: &mut impl FnMut(i64) -> Option<u8>, lo: i64, hi: i64) -> i64 {
    let bytes: Vec<u8> = (lo..hi)
        .map(|i| read(i).expect("period window must be in bounds"))
        .collect();
    period_of(&bytes) as i64
}

/// Core of the break hunt over a string `T` of length `len` (relative
/// coordinates) whose leading window `T[0..2q)` has shortest period `p <= q`.
///
/// Scans `sampled` in order for a position that disagrees with the periodic
/// extension of the leading window; positions inside the leading window agree
/// by construction and are skipped. On a hit at `s`, a binary search narrows
/// to a boundary `b` such that `T(b-2q..b]` has shortest period above `q`:
/// throughout, `e` is a known disagreeing position, everything in
/// `[b-2q, b)` agrees, and each round either certifies the window left of
/// `m` clean (so `b` jumps to `m`) or finds a disagreement inside it (so `e`
/// drops). Returns that `b`, or `None` if all sampled positions agree.
pub(crate) fn break_scan(
    read: &mut impl FnMut(i64) -> Option<u8>,
    len: i64,
    q: i64,
    p: i64,
    sampled: &[i64],
) -> Option<i64> {
    debug_assert!(p >= 1 && p <= q && 2 * q <= len);
    for &s in sampled {
        if s < 2 * q {
            continue;
        }
        if symbols_match(read(s), read(s % p)) {
            continue;
        }
        let (mut b, mut e) = (2 * q, s);
        while b < e {
            let m = b + (e - b + 1) / 2;
            for j in (m - 2 * q)..m {
                if !symbols_match(read(j), read(j % p)) {
                    e = j;
                }
            }
            if e >= m {
                b = m;
            }
        }
        return Some(b);
    }
    None
}

/// Degenerate sampling configurations (hand-built rate parameters) fall back
/// to dense reading instead of erroring out of infallible callers.
fn safe_rate(rate: f64) -> f64 {
    if rate.is_finite() && rate > 0.0 {
        rate.min(1.0)
    } else {
        1.0
    }
}
