//! Grid benchmark over (n, k): probe counts scale linearly in n and shrink
//! as k grows, the signature of the 1/(k+1) extension sampling. Writes the
//! same CSV the `gapshear bench` subcommand produces.

use gapshear::{append_bench_csv, bench_grid, BenchOptions, BenchRow, RateConfig, Seed, TesterMode};

fn mean_probes(rows: &[BenchRow], n: usize, k: usize) -> f64 {
    let cell: Vec<u64> = rows.iter().filter(|r| r.n == n && r.k == k).map(|r| r.probes).collect();
    cell.iter().sum::<u64>() as f64 / cell.len().max(1) as f64
}

fn main() {
    let ns = [8192usize, 16384, 32768, 65536];
    let ks = [16usize, 32, 64];
    let trials = 10;
    // trimmed sampling constants, as in the quadratic_gap example: the
    // defaults saturate to full scans at these sizes and hide the scaling
    let opts = BenchOptions {
        rates: RateConfig::new(0.65, 1.0).expect("positive constants"),
        ..BenchOptions::default()
    };
    let rows = bench_grid(&ns, &ks, TesterMode::Quadratic, trials, &opts, Seed::new(1))
        .expect("nonempty grid");

    println!("mean probes over {trials} seeded trials per cell (quadratic tester)");
    print!("{:>8}", "n \\ k");
    for &k in &ks {
        print!("{k:>12}");
    }
    println!();
    for &n in &ns {
        print!("{n:>8}");
        for &k in &ks {
            print!("{:>12.0}", mean_probes(&rows, n, k));
        }
        println!();
    }

    let path = std::env::temp_dir().join("gapshear-probe-benchmark.csv");
    append_bench_csv(&path, &rows).expect("writable temp file");
    println!("\nwrote {} rows to {}", rows.len(), path.display());
    println!("rerunning appends identical rows (wall_ms aside): the seed schedule is pinned");
}
