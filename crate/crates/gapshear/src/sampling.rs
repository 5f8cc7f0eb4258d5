//! Seeded randomness: labeled seed splitting, Bernoulli index sampling via
//! geometric skips, sampling-rate policy, and the embedding's shared
//! randomness.
//!
//! Every randomized operation in this crate is a pure function of its
//! inputs and a [`Seed`]. Independence across sub-calls comes from labeled
//! splitting, never from a global RNG.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A 64-bit seed. Split with [`Seed::child`] to derive independent streams;
/// turn into an RNG with [`Seed::rng`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed(pub u64);

/// splitmix64 finalizer; full-avalanche 64-bit mixer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl Seed {
    pub fn new(value: u64) -> Seed {
        Seed(value)
    }

    /// Derive a sub-seed from a textual label and a counter. Distinct
    /// (label, counter) pairs give independent streams.
    pub fn child(self, label: &str, counter: u64) -> Seed {
        let tag = fnv1a(label.as_bytes()) ^ counter.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        Seed(mix64(self.0 ^ mix64(tag)))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Parse a decimal or `0x`-prefixed hex 64-bit seed.
    pub fn parse(s: &str) -> Result<Seed> {
        let s = s.trim();
        let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            u64::from_str_radix(hex, 16)
        } else {
            s.parse::<u64>()
        };
        parsed
            .map(Seed)
            .map_err(|_| Error::parameter(format!("invalid seed {s:?}: expected decimal or 0x-hex u64")))
    }
}

/// Policy for every "sufficiently large" sampling rate and repetition count.
///
/// A rate for mismatch budget `k` on input scale `n` is
/// `min(1, c * lambda * ln(max(n,2)) / (k+1))`, so each sampled primitive
/// fails with probability about `n^(-lambda)`. Both constants are
/// caller-tunable; the defaults calibrate "with high probability" to
/// roughly `1 - 1/n` per primitive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateConfig {
    pub hp_constant: f64,
    pub failure_exponent: f64,
}

impl Default for RateConfig {
    fn default() -> Self {
        RateConfig { hp_constant: 3.0, failure_exponent: 1.0 }
    }
}

impl RateConfig {
    pub fn new(hp_constant: f64, failure_exponent: f64) -> Result<RateConfig> {
        if !(hp_constant > 0.0) || !hp_constant.is_finite() {
            return Err(Error::parameter(format!("rate constant must be positive, got {hp_constant}")));
        }
        if !(failure_exponent > 0.0) || !failure_exponent.is_finite() {
            return Err(Error::parameter(format!(
                "failure exponent must be positive, got {failure_exponent}"
            )));
        }
        Ok(RateConfig { hp_constant, failure_exponent })
    }

    fn log_n(n: usize) -> f64 {
        (n.max(2) as f64).ln()
    }

    /// Bernoulli rate for verifying a budget of `k` mismatches at scale `n`.
    /// Always in (0, 1].
    pub fn sample_rate(&self, n: usize, k: usize) -> f64 {
        let raw = self.hp_constant * self.failure_exponent * Self::log_n(n) / (k as f64 + 1.0);
        raw.min(1.0)
    }

    /// Sampling scale `r` for randomized LCE runs that must stay below
    /// `LCE_k` with probability about `1 - n^(-lambda)`:
    /// `r = (k+1) / (lambda * ln n)`.
    pub fn bar_lce_scale(&self, n: usize, k: usize) -> f64 {
        (k as f64 + 1.0) / (self.failure_exponent * Self::log_n(n))
    }

    /// Repetition count that drives a constant per-round failure probability
    /// down to about `n^(-lambda)`.
    pub fn whp_rounds(&self, n: usize) -> usize {
        (self.failure_exponent * Self::log_n(n) / std::f64::consts::LN_2).ceil() as usize + 1
    }
}

/// One draw of the gap to the next sampled index in an i.i.d.
/// Bernoulli(`rate`) process: returns `1 + Geometric(rate)`, always >= 1.
pub fn geometric_skip(rate: f64, rng: &mut ChaCha8Rng) -> Result<usize> {
    if !(rate > 0.0) || rate.is_nan() {
        return Err(Error::parameter(format!("sampling rate must be positive, got {rate}")));
    }
    if rate >= 1.0 {
        return Ok(1);
    }
    // Inverse transform: ceil(ln u / ln(1-rate)) has the right distribution
    // for u uniform in (0,1); guard u = 0 and cap the result so extreme
    // draws saturate instead of overflowing.
    let u = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let skip = (u.ln() / (1.0 - rate).ln()).ceil();
    if !skip.is_finite() || skip >= usize::MAX as f64 / 4.0 {
        return Ok(usize::MAX / 4);
    }
    Ok((skip as usize).max(1))
}

/// A sorted Bernoulli sample of an integer range.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub indices: Vec<i64>,
    pub rate: f64,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: i64) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Include each index of `[lo, hi)` independently with probability `rate`,
/// in expected time proportional to the output size, not the range.
/// An inverted range yields the empty set.
pub fn sample_range(lo: i64, hi: i64, rate: f64, seed: Seed) -> Result<SampleSet> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::parameter(format!("sampling rate must lie in [0,1], got {rate}")));
    }
    let mut indices = Vec::new();
    if rate > 0.0 && lo < hi {
        let mut rng = seed.rng();
        let mut pos = lo - 1;
        loop {
            let skip = geometric_skip(rate, &mut rng)? as i64;
            pos = pos.saturating_add(skip);
            if pos >= hi {
                break;
            }
            indices.push(pos);
        }
    }
    Ok(SampleSet { indices, rate })
}

/// An ascending Bernoulli(`rate`) sample stream over `[start, ..)`,
/// materialized lazily. Asking for a prefix never re-randomizes: the
/// positions below any bound are consistent across calls, so one sampler
/// can serve a whole family of nested verification queries.
#[derive(Debug, Clone)]
pub struct LazySampler {
    rate: f64,
    rng: ChaCha8Rng,
    next: i64,
    buf: Vec<i64>,
}

impl LazySampler {
    pub fn new(start: i64, rate: f64, seed: Seed) -> Result<LazySampler> {
        if !(rate > 0.0) || !(rate <= 1.0) {
            return Err(Error::parameter(format!("sampling rate must lie in (0,1], got {rate}")));
        }
        let mut rng = seed.rng();
        let first = start - 1 + geometric_skip(rate, &mut rng)? as i64;
        Ok(LazySampler { rate, rng, next: first, buf: Vec::new() })
    }

    /// All sampled positions strictly below `hi`, in increasing order.
    pub fn positions_below(&mut self, hi: i64) -> &[i64] {
        while self.next < hi {
            self.buf.push(self.next);
            let skip = geometric_skip(self.rate, &mut self.rng)
                .expect("rate validated at construction") as i64;
            self.next = self.next.saturating_add(skip);
        }
        let cut = self.buf.partition_point(|&p| p < hi);
        &self.buf[..cut]
    }
}

/// Alphabet handling for the embedding and the sampled walk.
///
/// `Binary` is the strict mode: inputs are over {0, 1} and each sampled
/// index carries a uniformly random bijection of {0, 1}, which is what the
/// distortion guarantee assumes. `General` allows arbitrary bytes and uses
/// a uniformly random function from bytes to {0, 1} instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedMode {
    Binary,
    General,
}

#[derive(Debug, Clone)]
enum Hashes {
    /// One flip bit per sampled index: h(b) = b xor flip.
    Binary(Vec<bool>),
    /// One 64-bit key per sampled index: h(b) = low bit of mix(key, b).
    General(Vec<u64>),
}

/// Seed material shared by both sides of an embedding: the sampled index
/// set `S` of `[1..3n]` and one single-bit hash per element of `S`.
#[derive(Debug, Clone)]
pub struct SharedRandomness {
    pub n: usize,
    pub p: usize,
    pub mode: EmbedMode,
    pub s_set: Vec<i64>,
    hashes: Hashes,
    pub seed: Seed,
}

impl SharedRandomness {
    /// The j-th hash applied to a symbol; always 0 or 1.
    pub fn h(&self, j: usize, sym: u8) -> u8 {
        match &self.hashes {
            Hashes::Binary(flips) => {
                debug_assert!(sym <= 1, "binary mode symbol out of range: {sym}");
                (sym & 1) ^ flips[j] as u8
            }
            Hashes::General(keys) => (mix64(keys[j] ^ (sym as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)) & 1) as u8,
        }
    }

    pub fn sample_count(&self) -> usize {
        self.s_set.len()
    }
}

/// Build shared randomness for strings of length at most `n`: each index of
/// `[1..3n]` joins `S` independently with probability `2 ln n / p`, and each
/// element of `S` gets an independent single-bit hash. Deterministic in
/// `seed`.
pub fn make_shared_randomness(n: usize, p: usize, mode: EmbedMode, seed: Seed) -> Result<SharedRandomness> {
    if n < 1 {
        return Err(Error::parameter("shared randomness needs n >= 1"));
    }
    let ln_n = (n as f64).ln();
    if (p as f64) < 2.0 * ln_n {
        return Err(Error::parameter(format!(
            "sampling period p = {p} is below 2 ln n = {:.3} for n = {n}",
            2.0 * ln_n
        )));
    }
    let rate = (2.0 * ln_n / p as f64).min(1.0);
    let s_set = sample_range(1, 3 * n as i64 + 1, rate, seed.child("s-set", 0))?.indices;
    let mut rng = seed.child("hashes", 0).rng();
    let hashes = match mode {
        EmbedMode::Binary => Hashes::Binary((0..s_set.len()).map(|_| rng.gen::<bool>()).collect()),
        EmbedMode::General => Hashes::General((0..s_set.len()).map(|_| rng.gen::<u64>()).collect()),
    };
    Ok(SharedRandomness { n, p, mode, s_set, hashes, seed })
}

/// Dense variant used by the one-symbol-per-step baseline embedding: every
/// index of `[1..3n]` is sampled and carries its own hash.
pub(crate) fn dense_randomness(n: usize, mode: EmbedMode, seed: Seed) -> SharedRandomness {
    let s_set: Vec<i64> = (1..=3 * n as i64).collect();
    let mut rng = seed.child("hashes", 0).rng();
    let hashes = match mode {
        EmbedMode::Binary => Hashes::Binary((0..s_set.len()).map(|_| rng.gen::<bool>()).collect()),
        EmbedMode::General => Hashes::General((0..s_set.len()).map(|_| rng.gen::<u64>()).collect()),
    };
    SharedRandomness { n, p: 1, mode, s_set, hashes, seed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_parsing() {
        assert_eq!(Seed::parse("42").unwrap(), Seed(42));
        assert_eq!(Seed::parse("0xff").unwrap(), Seed(255));
        assert_eq!(Seed::parse("0XDEADBEEF").unwrap(), Seed(0xdead_beef));
        assert!(Seed::parse("nope").is_err());
        assert!(Seed::parse("-1").is_err());
    }

    #[test]
    fn child_seeds_are_stable_and_distinct() {
        let s = Seed(7);
        assert_eq!(s.child("a", 0), s.child("a", 0));
        assert_ne!(s.child("a", 0), s.child("a", 1));
        assert_ne!(s.child("a", 0), s.child("b", 0));
        assert_ne!(s.child("a", 0).0, s.0);
    }

    #[test]
    fn rate_config_formulas() {
        let rc = RateConfig::default();
        assert_eq!(rc.sample_rate(2, 1000), 3.0 * (2f64).ln() / 1001.0);
        assert_eq!(rc.sample_rate(100, 0), 1.0, "small k clamps to certainty");
        let r = rc.bar_lce_scale(100, 4);
        assert!((r - 5.0 / (100f64).ln()).abs() < 1e-12);
        assert!(rc.whp_rounds(1024) >= 10);
        assert!(RateConfig::new(0.0, 1.0).is_err());
        assert!(RateConfig::new(1.0, -2.0).is_err());
    }

    #[test]
    fn geometric_skip_edges() {
        let mut rng = Seed(1).rng();
        for _ in 0..100 {
            assert_eq!(geometric_skip(1.0, &mut rng).unwrap(), 1);
        }
        assert!(geometric_skip(0.0, &mut rng).is_err());
        assert!(geometric_skip(-0.5, &mut rng).is_err());
        for _ in 0..1000 {
            assert!(geometric_skip(0.3, &mut rng).unwrap() >= 1);
        }
    }

    #[test]
    fn geometric_skip_mean_and_tail() {
        let mut rng = Seed(99).rng();
        let draws: Vec<usize> = (0..100_000)
            .map(|_| geometric_skip(0.5, &mut rng).unwrap())
            .collect();
        let mean = draws.iter().sum::<usize>() as f64 / draws.len() as f64;
        assert!((mean - 2.0).abs() < 0.04, "mean {mean} should be within 2% of 2");

        let mut rng = Seed(100).rng();
        let n = 100_000usize;
        let tail = (0..n)
            .filter(|_| geometric_skip(0.1, &mut rng).unwrap() > 43)
            .count();
        // P(skip > 43) = (0.9)^43; allow 3 binomial sigma.
        let p = 0.9f64.powi(43);
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        let emp = tail as f64 / n as f64;
        assert!((emp - p).abs() <= 3.0 * sigma, "tail {emp} vs {p} (sigma {sigma})");
    }

    #[test]
    fn sample_range_edges() {
        let all = sample_range(0, 5, 1.0, Seed(1)).unwrap();
        assert_eq!(all.indices, vec![0, 1, 2, 3, 4]);
        assert!(sample_range(0, 1000, 0.0, Seed(1)).unwrap().is_empty());
        assert!(sample_range(10, 3, 0.5, Seed(1)).unwrap().is_empty());
        assert!(sample_range(0, 10, 1.5, Seed(1)).is_err());
        let s = sample_range(-5, 5, 0.5, Seed(2)).unwrap();
        assert!(s.indices.windows(2).all(|w| w[0] < w[1]), "sorted strictly");
        assert!(s.indices.iter().all(|&i| (-5..5).contains(&i)));
    }

    #[test]
    fn sample_range_density() {
        let s = sample_range(0, 1_000_000, 0.25, Seed(42)).unwrap();
        let expect = 250_000.0;
        let sigma = (1_000_000f64 * 0.25 * 0.75).sqrt();
        assert!(
            (s.len() as f64 - expect).abs() <= 3.0 * sigma,
            "size {} should be within 3 sigma of {expect}",
            s.len()
        );
    }

    #[test]
    fn sample_range_chi_square_uniformity() {
        // Bucket a large Bernoulli sample into 10 equal cells; conditioned
        // on the total, counts are uniform multinomial. Critical value for
        // chi^2 with 9 degrees of freedom at significance 0.001 is 27.877.
        let s = sample_range(0, 200_000, 0.5, Seed(7)).unwrap();
        let mut buckets = [0f64; 10];
        for &i in &s.indices {
            buckets[(i / 20_000) as usize] += 1.0;
        }
        let e = s.len() as f64 / 10.0;
        let chi2: f64 = buckets.iter().map(|&o| (o - e) * (o - e) / e).sum();
        assert!(chi2 < 27.877, "chi^2 = {chi2}");
    }

    #[test]
    fn sibling_streams_are_uncorrelated() {
        let mut a = Seed(5).child("left", 0).rng();
        let mut b = Seed(5).child("right", 0).rng();
        let n = 100_000;
        let (mut sx, mut sy, mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let x = a.gen::<f64>();
            let y = b.gen::<f64>();
            sx += x;
            sy += y;
            sxy += x * y;
            sxx += x * x;
            syy += y * y;
        }
        let nf = n as f64;
        let cov = sxy / nf - (sx / nf) * (sy / nf);
        let vx = sxx / nf - (sx / nf) * (sx / nf);
        let vy = syy / nf - (sy / nf) * (sy / nf);
        let corr = cov / (vx * vy).sqrt();
        assert!(corr.abs() < 3.0 / nf.sqrt(), "correlation {corr}");
    }

    #[test]
    fn lazy_sampler_is_consistent_across_bounds() {
        let mut s = LazySampler::new(0, 0.3, Seed(11)).unwrap();
        let upto_50: Vec<i64> = s.positions_below(50).to_vec();
        let upto_200: Vec<i64> = s.positions_below(200).to_vec();
        assert!(upto_200.starts_with(&upto_50), "prefix stability");
        let again_50: Vec<i64> = s.positions_below(50).to_vec();
        assert_eq!(upto_50, again_50, "asking for a smaller bound never re-randomizes");
        let mut fresh = LazySampler::new(0, 0.3, Seed(11)).unwrap();
        assert_eq!(fresh.positions_below(200), &upto_200[..], "determinism in the seed");
        assert!(upto_200.iter().all(|&p| (0..200).contains(&p)));
    }

    #[test]
    fn shared_randomness_shape() {
        let r = make_shared_randomness(1, 1, EmbedMode::Binary, Seed(3)).unwrap();
        assert!(r.s_set.iter().all(|&i| (1..=3).contains(&i)), "range is [1..3n]");

        let a = make_shared_randomness(100, 20, EmbedMode::Binary, Seed(9)).unwrap();
        let b = make_shared_randomness(100, 20, EmbedMode::Binary, Seed(9)).unwrap();
        assert_eq!(a.s_set, b.s_set, "deterministic in the seed");
        for j in 0..a.sample_count() {
            assert_eq!(a.h(j, 0), b.h(j, 0));
            assert_eq!(a.h(j, 1), b.h(j, 1));
        }
        assert!(make_shared_randomness(100, 2, EmbedMode::Binary, Seed(9)).is_err(), "p below 2 ln n");
        assert!(make_shared_randomness(0, 10, EmbedMode::Binary, Seed(9)).is_err());
    }

    #[test]
    fn shared_randomness_density() {
        let (n, p) = (10_000usize, 100usize);
        let expect = 3.0 * n as f64 * 2.0 * (n as f64).ln() / p as f64;
        let mut total = 0usize;
        let seeds = 100;
        for s in 0..seeds {
            total += make_shared_randomness(n, p, EmbedMode::Binary, Seed(s))
                .unwrap()
                .sample_count();
        }
        let mean = total as f64 / seeds as f64;
        assert!(
            (mean - expect).abs() / expect < 0.2,
            "mean |S| = {mean} should be within 20% of {expect}"
        );
    }

    #[test]
    fn binary_hashes_are_bijections() {
        let r = make_shared_randomness(64, 10, EmbedMode::Binary, Seed(21)).unwrap();
        for j in 0..r.sample_count() {
            let (h0, h1) = (r.h(j, 0), r.h(j, 1));
            assert_ne!(h0, h1, "a bijection of {{0,1}} maps the two symbols apart");
            assert!(h0 <= 1 && h1 <= 1);
        }
    }

    #[test]
    fn general_hashes_cover_both_bits() {
        let r = make_shared_randomness(512, 13, EmbedMode::General, Seed(22)).unwrap();
        let mut seen = [false; 2];
        for j in 0..r.sample_count() {
            seen[r.h(j, b'x') as usize] = true;
        }
        assert!(seen[0] && seen[1]);
    }
}
