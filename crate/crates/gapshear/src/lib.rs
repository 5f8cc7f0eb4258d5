//! Sublinear-time testers for the gap edit distance problem, built from the
//! bottom up:
//!
//! - [`text`]: probe-counted strings, exact periodicity and matching
//!   primitives, reference distance oracles, and the banded exact tester.
//! - [`sampling`]: seeded randomness, Bernoulli index sampling with
//!   geometric skips, and the shared randomness of the embedding.
//! - [`lce_approx`]: randomized break finding and the one-sided approximate
//!   LCE range-max query.
//! - [`lce_batch`]: sampled LCE values with an exponential upper tail,
//!   batched over shift ranges and precomputed into an anchored index.
//! - [`gap`]: the quadratic-gap tester and the wide-diagonal trade-off
//!   tester built on the LCE machinery.
//! - [`ptas`]: the (1+epsilon)-gap tester for strings without long
//!   small-period windows.
//! - [`walk`]: the sampled random-walk tester and the sublinear
//!   edit-to-Hamming embedding, plus a linear-time baseline embedding.
//! - [`corpus`] and [`report`]: input generators and the benchmark/report
//!   plumbing shared with the command-line front end.
//!
//! Everything randomized takes an explicit [`Seed`] and is bit-reproducible;
//! all query costs are measured in probes, single character reads counted by
//! [`Text`].

pub mod corpus;
mod error;
pub mod gap;
pub mod lce_approx;
pub mod lce_batch;
mod matching;
pub mod ptas;
pub mod report;
pub mod sampling;
pub mod text;
pub mod walk;

pub use corpus::{generate, plant_edits, plant_spread, CorpusSpec, GeneratorKind};
pub use error::{Error, Result};
pub use gap::{choose_block_parameter, gap_alpha, gap_quadratic, GapVerdict, GreedyFrontier, WideFrontier};
pub use lce_approx::{apx_lce_max, find_break, gap_match_oracle, BreakOutcome, OracleAnswer};
pub use lce_batch::{
    bar_lce_single, batch_bar_lce, build_lce_index, compose_bar_lce, find_break2,
    query_lce_index, LceIndex,
};
pub use ptas::{
    check_aperiodicity, decompose, estimate_sum, gap_ptas, phrase_distance_or_cert,
    AperiodicityParams, Decomposition, PhraseDistance,
};
pub use report::{
    append_bench_csv, bench_grid, read_bench_csv, BenchOptions, BenchRow, RunReport, TesterMode,
    BENCH_HEADER,
};
pub use sampling::{make_shared_randomness, EmbedMode, RateConfig, Seed, SharedRandomness};
pub use text::{landau_vishkin, landau_vishkin_bounded, Fragment, Text, Verdict};
pub use walk::{
    cgk_embed_baseline, coupled_mismatch_count, default_walk_period, embed_distortion_check,
    sampled_random_walk, sampled_random_walk_naive, sublinear_embed, walk_threshold,
    DistortionStats, Embedding, WalkParams, WalkTrace,
};
