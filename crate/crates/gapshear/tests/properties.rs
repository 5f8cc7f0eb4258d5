//! Randomized structural properties over small inputs.

use proptest::collection::vec;
use proptest::prelude::*;

use gapshear::text::edit_distance_full;
use gapshear::{
    append_bench_csv, decompose, default_walk_period, gap_quadratic, plant_edits, read_bench_csv,
    sampled_random_walk, sampled_random_walk_naive, BenchRow, RateConfig, Seed, TesterMode, Text,
    Verdict, WalkParams,
};

proptest! {
    #[test]
    fn batched_walk_equals_the_naive_walk(
        xs in vec(0u8..2, 0..32),
        ys in vec(0u8..2, 0..32),
        k in 0usize..5,
        p_extra in 0usize..20,
        seed in any::<u64>(),
    ) {
        let n = xs.len().max(ys.len()).max(1);
        let params = WalkParams { k, p: default_walk_period(n) + p_extra, n };

        let (x, y) = (Text::new(xs.clone()), Text::new(ys.clone()));
        let fast = sampled_random_walk(&x, &y, params, Seed::new(seed)).unwrap();
        let fast_probes = x.probes() + y.probes();

        let (x, y) = (Text::new(xs), Text::new(ys));
        let slow = sampled_random_walk_naive(&x, &y, params, Seed::new(seed)).unwrap();
        let slow_probes = x.probes() + y.probes();

        prop_assert_eq!(fast, slow);
        prop_assert_eq!(fast_probes, slow_probes);
    }

    #[test]
    fn planted_edit_count_bounds_the_true_distance(
        base in vec(any::<u8>(), 0..24),
        edits in 0usize..7,
        seed in any::<u64>(),
    ) {
        let mut rng = Seed::new(seed).rng();
        let edited = plant_edits(&mut rng, &base, edits, 256);
        let d = edit_distance_full(&Text::new(base), &Text::new(edited));
        prop_assert!(d <= edits, "distance {} from {} edits", d, edits);
    }

    #[test]
    fn greedy_frontier_rows_never_retreat(
        xs in vec(0u8..4, 0..32),
        ys in vec(0u8..4, 0..32),
        k in 0usize..5,
        seed in any::<u64>(),
    ) {
        let (x, y) = (Text::new(xs), Text::new(ys));
        let got = gap_quadratic(&x, &y, k, RateConfig::default(), Seed::new(seed));
        let rows = got.frontier.expect("the greedy tester always reports rows");
        let reached: Vec<i64> = rows.iter().flatten().copied().collect();
        prop_assert!(reached.windows(2).all(|w| w[0] <= w[1]), "rows {:?}", rows);
        prop_assert!(reached.iter().all(|&v| 0 <= v && v <= x.len() as i64), "rows {:?}", rows);
    }

    #[test]
    fn decompositions_partition_both_strings(
        xs in vec(0u8..4, 0..40),
        ys in vec(0u8..4, 0..40),
        k in 1usize..5,
        window in 1usize..9,
        seed in any::<u64>(),
    ) {
        let (x, y) = (Text::new(xs), Text::new(ys));
        // tiny alphabets often break the anchor uniqueness preconditions;
        // the partition shape is only promised on Ok returns
        let Ok(parts) = decompose(&x, &y, k, window, 0.5, Seed::new(seed)) else { return Ok(()) };
        let (xb, yb) = (&parts.x_bounds, &parts.y_bounds);
        prop_assert_eq!(xb.len(), yb.len());
        prop_assert_eq!(*xb.first().unwrap(), 0);
        prop_assert_eq!(*xb.last().unwrap(), x.len());
        prop_assert_eq!(*yb.first().unwrap(), 0);
        prop_assert_eq!(*yb.last().unwrap(), y.len());
        if x.len() > 0 {
            prop_assert!(xb.windows(2).all(|w| w[0] < w[1]), "x cuts {:?}", xb);
        }
        prop_assert!(yb.windows(2).all(|w| w[0] <= w[1]), "y cuts {:?}", yb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bench_rows_survive_the_csv(
        rows in vec(
            (0usize..100_000, 0usize..200, 0u8..4, any::<u64>(), any::<bool>(), any::<u64>(), 0u128..1_000_000)
                .prop_map(|(n, k, mode, seed, accept, probes, wall_ms)| BenchRow {
                    n,
                    k,
                    mode: match mode {
                        0 => TesterMode::Quadratic,
                        1 => TesterMode::Alpha,
                        2 => TesterMode::Ptas,
                        _ => TesterMode::Walk,
                    },
                    seed,
                    verdict: if accept { Verdict::Accept } else { Verdict::Reject },
                    probes,
                    wall_ms,
                }),
            0..20,
        ),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        let split = rows.len() / 2;
        append_bench_csv(&path, &rows[..split]).unwrap();
        append_bench_csv(&path, &rows[split..]).unwrap();
        prop_assert_eq!(read_bench_csv(&path).unwrap(), rows);
    }
}
