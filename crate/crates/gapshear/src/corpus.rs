//! Input generators: base strings with known structure and partners at a
//! bounded planted edit distance.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ptas::{check_aperiodicity, AperiodicityParams};
use crate::sampling::Seed;
use crate::text::Text;

/// Regeneration attempts for the verified kind before giving up.
const RETRY_BUDGET: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Independent uniform symbols.
    UniformRandom,
    /// Uniform symbols, regenerated until every window of the declared
    /// length has a period above twice the declared budget.
    AperiodicVerified,
    /// A short random block repeated to full length, the worst case for
    /// anything that assumes local aperiodicity.
    PeriodicStress,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::UniformRandom => "uniform-random",
            GeneratorKind::AperiodicVerified => "aperiodic-verified",
            GeneratorKind::PeriodicStress => "periodic-stress",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-random" => Ok(GeneratorKind::UniformRandom),
            "aperiodic-verified" => Ok(GeneratorKind::AperiodicVerified),
            "periodic-stress" => Ok(GeneratorKind::PeriodicStress),
            other => Err(Error::parameter(format!(
                "unknown generator kind `{other}`; expected uniform-random, aperiodic-verified, or periodic-stress"
            ))),
        }
    }
}

/// What to generate: a base string of length `n` over the first `sigma`
/// byte values and a partner with at most `edits` random edits applied.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub n: usize,
    pub sigma: u16,
    pub kind: GeneratorKind,
    pub edits: usize,
    /// Window/budget pair the aperiodic-verified kind must certify.
    pub verify: Option<AperiodicityParams>,
    pub seed: Seed,
}

/// Produce the pair `(X, Y)` described by `spec`. `Y` is `X` with exactly
/// `spec.edits` edits applied, so `ED(X, Y) <= spec.edits` by construction;
/// the true distance may be smaller when edits cancel.
pub fn generate(spec: &CorpusSpec) -> Result<(Vec<u8>, Vec<u8>)> {
    if spec.sigma == 0 || spec.sigma > 256 {
        return Err(Error::parameter(format!(
            "alphabet size must be in 1..=256, got {}",
            spec.sigma
        )));
    }
    let x = base_string(spec)?;
    let mut rng = spec.seed.child("edits", 0).rng();
    let y = plant_edits(&mut rng, &x, spec.edits, spec.sigma);
    Ok((x, y))
}

fn uniform(n: usize, sigma: u16, seed: Seed) -> Vec<u8> {
    let mut rng = seed.rng();
    (0..n).map(|_| rng.gen_range(0..sigma) as u8).collect()
}

fn base_string(spec: &CorpusSpec) -> Result<Vec<u8>> {
    match spec.kind {
        GeneratorKind::UniformRandom => Ok(uniform(spec.n, spec.sigma, spec.seed.child("base", 0))),
        GeneratorKind::AperiodicVerified => {
            let params = spec.verify.ok_or_else(|| {
                Error::parameter("aperiodic-verified generation needs a window and a budget")
            })?;
            for attempt in 0..RETRY_BUDGET {
                let x = uniform(spec.n, spec.sigma, spec.seed.child("base", attempt));
                if check_aperiodicity(&Text::new(x.clone()), params.window, params.k).is_none() {
                    return Ok(x);
                }
            }
            Err(Error::RetriesExhausted(format!(
                "no length-{} string over {} symbols kept every window of {} above period {} in {RETRY_BUDGET} attempts",
                spec.n,
                spec.sigma,
                params.window,
                2 * params.k
            )))
        }
        GeneratorKind::PeriodicStress => {
            let mut rng = spec.seed.child("base", 0).rng();
            let period = rng.gen_range(1..=4usize.min(spec.n.max(1)));
            let block: Vec<u8> = (0..period).map(|_| rng.gen_range(0..spec.sigma) as u8).collect();
            Ok(block.iter().copied().cycle().take(spec.n).collect())
        }
    }
}

/// Apply `edits` edits to `base`, each kind equiprobable and each position
/// uniform at the time it is applied. Substitutions always change the
/// symbol; when that is impossible (unary alphabet) or the string is empty,
/// the edit falls back to an insertion so the full count is spent.
pub fn plant_edits(rng: &mut ChaCha8Rng, base: &[u8], edits: usize, sigma: u16) -> Vec<u8> {
    let mut v = base.to_vec();
    for _ in 0..edits {
        let kind = rng.gen_range(0..3u8);
        match kind {
            0 if !v.is_empty() && sigma >= 2 => {
                let i = rng.gen_range(0..v.len());
                let old = v[i];
                while v[i] == old {
                    v[i] = rng.gen_range(0..sigma) as u8;
                }
            }
            2 if !v.is_empty() => {
                let i = rng.gen_range(0..v.len());
                v.remove(i);
            }
            _ => {
                let i = rng.gen_range(0..=v.len());
                v.insert(i, rng.gen_range(0..sigma) as u8);
            }
        }
    }
    v
}

/// Benchmark planting: `edits` substitutions at evenly spaced positions
/// with a small jitter, so probe counts vary little between seeds of one
/// cell while still exercising random content.
pub fn plant_spread(rng: &mut ChaCha8Rng, base: &[u8], edits: usize) -> Vec<u8> {
    let mut v = base.to_vec();
    if v.is_empty() || edits == 0 {
        return v;
    }
    let gap = (v.len() / edits).max(1);
    for e in 0..edits {
        let center = e * gap + gap / 2;
        let jitter = gap / 8;
        let lo = center.saturating_sub(jitter);
        let hi = (center + jitter).min(v.len() - 1);
        let pos = rng.gen_range(lo..=hi.max(lo)).min(v.len() - 1);
        v[pos] ^= rng.gen_range(1..=255u8);
    }
    v
}
