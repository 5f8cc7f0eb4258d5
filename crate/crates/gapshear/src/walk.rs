//! Gap testing by a sampled alignment walk, and the Hamming embedding that
//! runs the same walk one string at a time.
//!
//! [`sampled_random_walk`] advances two cursors together, peeks at a
//! `2 ln n / p` fraction of the iterations, and on a sampled mismatch lets a
//! fair coin decide which cursor moves. [`sublinear_embed`] replays the
//! per-string half of that process against shared randomness, so Hamming
//! distance between two images counts exactly the sampled unequal reads.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::sampling::{
    dense_randomness, geometric_skip, make_shared_randomness, EmbedMode, Seed, SharedRandomness,
};
use crate::text::{edit_distance_full, Text, Verdict};

/// Knobs for one walk: edit budget `k`, sampling period `p`, and the context
/// length `n` the period was tuned against (at least `max(|X|, |Y|)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkParams {
    pub k: usize,
    pub p: usize,
    pub n: usize,
}

/// What one walk did. `c` counts sampled iterations that read unequal
/// symbols; `leftover` is the unconsumed tail `max(|X|-x, |Y|-y)`, reported
/// separately so a rejection shows which of the two terms blew the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkTrace {
    pub c: u64,
    pub final_x: usize,
    pub final_y: usize,
    pub leftover: usize,
    pub verdict: Verdict,
}

/// Acceptance budget for the walk: `c + leftover <= 1296 k^2`. The constant
/// is part of the decision rule, not a tuning knob; it is the square of the
/// `36k` detour radius that keeps the failure probability under one third.
pub fn walk_threshold(k: usize) -> u64 {
    1296 * (k as u64) * (k as u64)
}

/// Smallest period the analysis covers, `ceil(2 ln n)`; the default when a
/// caller does not pick one.
pub fn default_walk_period(n: usize) -> usize {
    (2.0 * (n.max(2) as f64).ln()).ceil() as usize
}

/// Per-iteration sampling rate, after rejecting parameters the analysis
/// does not cover. `p` above `n` only thins the sampling further and is
/// allowed; `p` below `2 ln n` would need a rate above one and is not.
fn walk_rate(params: &WalkParams, xlen: usize, ylen: usize) -> Result<f64> {
    if params.n < xlen.max(ylen).max(1) {
        return Err(Error::parameter(format!(
            "walk context n = {} cannot cover inputs of length {} and {}",
            params.n, xlen, ylen
        )));
    }
    if params.p == 0 {
        return Err(Error::parameter("sampling period p must be positive"));
    }
    let ln_n = (params.n as f64).ln();
    if (params.p as f64) < 2.0 * ln_n {
        return Err(Error::parameter(format!(
            "sampling period p = {} is below 2 ln n = {:.3} for n = {}",
            params.p,
            2.0 * ln_n,
            params.n
        )));
    }
    Ok((2.0 * ln_n / params.p as f64).min(1.0))
}

fn walk_core(x: &Text, y: &Text, params: WalkParams, seed: Seed, batched: bool) -> Result<WalkTrace> {
    let rate = walk_rate(&params, x.len(), y.len())?;
    let (xlen, ylen) = (x.len(), y.len());
    let mut xp = 0usize;
    let mut yp = 0usize;
    let mut c = 0u64;

    if rate > 0.0 {
        let mut skip_rng = seed.child("skip", 0).rng();
        let mut flip_rng = seed.child("flip", 0).rng();
        // Both variants draw one skip per sampled iteration they process
        // (plus the opening draw) and one flip per mismatch, so they agree
        // bit for bit on the same seed.
        if batched {
            let mut t = 0usize;
            let mut next = geometric_skip(rate, &mut skip_rng)? - 1;
            loop {
                let gap = next - t;
                let room = (xlen - xp).min(ylen - yp);
                if gap >= room {
                    // the walk ends inside the unsampled stretch
                    xp += room;
                    yp += room;
                    break;
                }
                xp += gap;
                yp += gap;
                t = next;
                let a = x.get(xp as i64).expect("cursor in range");
                let b = y.get(yp as i64).expect("cursor in range");
                if a == b {
                    xp += 1;
                    yp += 1;
                } else {
                    c += 1;
                    if flip_rng.gen::<bool>() {
                        xp += 1;
                    } else {
                        yp += 1;
                    }
                }
                t += 1;
                next = t.saturating_add(geometric_skip(rate, &mut skip_rng)? - 1);
            }
        } else {
            let mut t = 0usize;
            let mut next = geometric_skip(rate, &mut skip_rng)? - 1;
            while xp < xlen && yp < ylen {
                let before = xp + yp;
                let sampled = t == next;
                let mut mismatch = false;
                if sampled {
                    let a = x.get(xp as i64).expect("cursor in range");
                    let b = y.get(yp as i64).expect("cursor in range");
                    mismatch = a != b;
                    next = (t + 1).saturating_add(geometric_skip(rate, &mut skip_rng)? - 1);
                }
                if mismatch {
                    c += 1;
                    if flip_rng.gen::<bool>() {
                        xp += 1;
                    } else {
                        yp += 1;
                    }
                } else {
                    xp += 1;
                    yp += 1;
                }
                let step = xp + yp - before;
                assert!(
                    step == if mismatch { 1 } else { 2 },
                    "cursor sum must grow by 1 on a mismatch and 2 otherwise, got {step}"
                );
                t += 1;
            }
        }
    } else {
        // n = 1 makes the sampling rate zero: nothing is ever compared and
        // the walk is a plain aligned advance.
        let room = (xlen - xp).min(ylen - yp);
        xp += room;
        yp += room;
    }

    assert!(xp <= xlen && yp <= ylen, "cursors stay within the strings");
    assert!(xp == xlen || yp == ylen, "the walk only stops at an exhausted side");
    let leftover = (xlen - xp).max(ylen - yp);
    let verdict = if c + leftover as u64 <= walk_threshold(params.k) {
        Verdict::Accept
    } else {
        Verdict::Reject
    };
    Ok(WalkTrace { c, final_x: xp, final_y: yp, leftover, verdict })
}

/// Gap tester as a sampled alignment walk. Probes `O((|X|+|Y|) ln n / p)`
/// positions by jumping over unsampled stretches with geometric skips;
/// accepts iff the mismatch count plus the unconsumed tail stays within
/// [`walk_threshold`].
pub fn sampled_random_walk(x: &Text, y: &Text, params: WalkParams, seed: Seed) -> Result<WalkTrace> {
    walk_core(x, y, params, seed, true)
}

/// Single-step reference for [`sampled_random_walk`]: executes every
/// iteration of the walk loop one at a time and checks the cursor-sum
/// invariant on each. Same seed, same answer as the batched version.
pub fn sampled_random_walk_naive(
    x: &Text,
    y: &Text,
    params: WalkParams,
    seed: Seed,
) -> Result<WalkTrace> {
    walk_core(x, y, params, seed, false)
}

/// Image of one string under the sampled embedding, with the randomness
/// that produced it.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// One output symbol per sampled index; length is exactly
    /// `randomness.sample_count()`.
    pub output: Vec<u8>,
    pub randomness: SharedRandomness,
}

/// Read of the zero-padded string `X' = X 0^{3n}`: positions past `|X|`
/// belong to the pad and cost no probes.
fn padded(x: &Text, pos: usize) -> u8 {
    if pos < x.len() {
        x.get(pos as i64).expect("read inside the string")
    } else {
        0
    }
}

fn all_binary(texts: &[&Text]) -> bool {
    texts.iter().all(|t| t.raw().iter().all(|&b| b <= 1))
}

/// Walk the padded string, emitting the symbol under the cursor at every
/// index of the shared sampled set and advancing by that index's hash bit;
/// unsampled indices advance the cursor silently, so the run costs one probe
/// per sampled index instead of one per iteration. Two strings embedded with
/// the same randomness disagree exactly where their sampled reads disagree.
pub fn sublinear_embed(x: &Text, randomness: &SharedRandomness) -> Result<Embedding> {
    if x.len() > randomness.n {
        return Err(Error::parameter(format!(
            "randomness was built for strings of length at most {}, got {}",
            randomness.n,
            x.len()
        )));
    }
    if matches!(randomness.mode, EmbedMode::Binary) && !all_binary(&[x]) {
        return Err(Error::parameter("binary-mode embedding requires symbols 0 and 1"));
    }
    let mut out = Vec::with_capacity(randomness.sample_count());
    let mut pos = 0usize;
    let mut prev = 0i64; // iteration indices live in [1 .. 3n]
    for (j, &i) in randomness.s_set.iter().enumerate() {
        pos += (i - prev - 1) as usize; // unsampled iterations step once each
        let sym = padded(x, pos);
        out.push(sym);
        pos += randomness.h(j, sym) as usize;
        prev = i;
    }
    assert_eq!(out.len(), randomness.sample_count(), "one output symbol per sampled index");
    Ok(Embedding { output: out, randomness: randomness.clone() })
}

/// Mismatch counter of the two-cursor walk that a pair of embeddings with
/// shared randomness realizes together: advance both cursors in lockstep
/// through the sampled set, counting the sampled iterations whose reads
/// disagree. Equals the Hamming distance of the two embedded images.
pub fn coupled_mismatch_count(x: &Text, y: &Text, randomness: &SharedRandomness) -> Result<usize> {
    if x.len() > randomness.n || y.len() > randomness.n {
        return Err(Error::parameter(format!(
            "randomness was built for strings of length at most {}, got {} and {}",
            randomness.n,
            x.len(),
            y.len()
        )));
    }
    let (mut xp, mut yp, mut prev) = (0usize, 0usize, 0i64);
    let mut unequal = 0usize;
    for (j, &i) in randomness.s_set.iter().enumerate() {
        let step = (i - prev - 1) as usize;
        xp += step;
        yp += step;
        let a = padded(x, xp);
        let b = padded(y, yp);
        if a != b {
            unequal += 1;
        }
        xp += randomness.h(j, a) as usize;
        yp += randomness.h(j, b) as usize;
        prev = i;
    }
    Ok(unequal)
}

/// Empirical distortion report for one string pair under repeated
/// independent embeddings.
#[derive(Debug, Clone)]
pub struct DistortionStats {
    pub trials: usize,
    /// Edit distance of the pair, from an exact uncounted reference run.
    pub distance: usize,
    /// Fraction of trials whose Hamming distance `h` respected both sides of
    /// `(distance - p + 1) / (p + 1) <= h <= 1296 * distance^2`.
    pub joint_fraction: f64,
    /// Hamming distance value -> number of trials that produced it.
    pub histogram: BTreeMap<usize, usize>,
}

/// Draw `trials` independent shared-randomness instances, embed both strings
/// against each, and report how often the Hamming distance of the images
/// lands inside the expected distortion window. Inputs that use symbols
/// beyond {0, 1} are embedded with general single-bit hashes instead of the
/// binary bijections the guarantees assume.
pub fn embed_distortion_check(
    x: &Text,
    y: &Text,
    p: usize,
    trials: usize,
    seed: Seed,
) -> Result<DistortionStats> {
    let n = x.len().max(y.len()).max(1);
    let mode = if all_binary(&[x, y]) { EmbedMode::Binary } else { EmbedMode::General };
    let distance = edit_distance_full(x, y);
    let lower = (distance as f64 - p as f64 + 1.0) / (p as f64 + 1.0);
    let upper = 1296u64.saturating_mul((distance as u64).saturating_mul(distance as u64));
    let mut histogram = BTreeMap::new();
    let mut good = 0usize;
    for t in 0..trials {
        let r = make_shared_randomness(n, p, mode, seed.child("trial", t as u64))?;
        let ex = sublinear_embed(x, &r)?;
        let ey = sublinear_embed(y, &r)?;
        let hd = ex.output.iter().zip(&ey.output).filter(|(a, b)| a != b).count();
        *histogram.entry(hd).or_insert(0) += 1;
        if hd as f64 >= lower && (hd as u64) <= upper {
            good += 1;
        }
    }
    let joint_fraction = good as f64 / trials.max(1) as f64;
    Ok(DistortionStats { trials, distance, joint_fraction, histogram })
}

/// One-symbol-per-iteration baseline: walk the padded string for exactly
/// `3 |X|` iterations, emitting the symbol under the cursor each time and
/// advancing by that iteration's hash bit. Output length is exactly `3 |X|`.
/// The hash family is derived from `seed` and `|X|`; binary inputs get
/// bijection hashes, anything else general single-bit hashes.
pub fn cgk_embed_baseline(x: &Text, seed: Seed) -> Vec<u8> {
    let n = x.len();
    let mode = if all_binary(&[x]) { EmbedMode::Binary } else { EmbedMode::General };
    let r = dense_randomness(n, mode, seed);
    let mut out = Vec::with_capacity(3 * n);
    let mut pos = 0usize;
    for j in 0..3 * n {
        let sym = padded(x, pos);
        out.push(sym);
        pos += r.h(j, sym) as usize;
    }
    assert_eq!(out.len(), 3 * n, "the baseline always emits 3|X| symbols");
    out
}
