//! Decide "edit distance at most k" versus "far" on generated pairs while
//! counting every character the tester actually reads.

use gapshear::{gap_quadratic, generate, CorpusSpec, GeneratorKind, RateConfig, Seed, Text};

fn main() {
    // the default constants oversample enough to saturate at these sizes;
    // trim them so the 1/(k+1) extension thinning is visible
    let rates = RateConfig::new(0.65, 1.0).expect("positive constants");
    println!("{:>8} {:>4} {:>8} {:>8} {:>9}", "n", "k", "planted", "verdict", "probes");
    for &n in &[16384usize, 65536] {
        for &k in &[16usize, 32, 64] {
            for &edits in &[k, 8 * k + 64] {
                let spec = CorpusSpec {
                    n,
                    sigma: 26,
                    kind: GeneratorKind::UniformRandom,
                    edits,
                    verify: None,
                    seed: Seed::new(n as u64 ^ (edits as u64) << 20),
                };
                let (xv, yv) = generate(&spec).expect("uniform corpus");
                let (x, y) = (Text::new(xv), Text::new(yv));
                let got = gap_quadratic(&x, &y, k, rates, Seed::new(7));
                println!(
                    "{:>8} {:>4} {:>8} {:>8} {:>9}",
                    n,
                    k,
                    edits,
                    got.verdict.label(),
                    got.probes
                );
            }
        }
    }
    println!();
    println!("accepting runs read ~n/(k+1) scaled characters; rejections stop early");
}
