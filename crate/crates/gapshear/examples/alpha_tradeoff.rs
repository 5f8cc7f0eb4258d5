//! The wide-diagonal tester trades gap sharpness for probes: larger alpha
//! widens the accepted band k versus k + 3(k+1)(alpha-1) but groups more
//! diagonals per extension, so the same pair costs fewer reads.

use gapshear::{gap_alpha, generate, CorpusSpec, GeneratorKind, RateConfig, Seed, Text};

fn main() {
    let n = 32768usize;
    let k = 12usize;
    let spec = CorpusSpec {
        n,
        sigma: 26,
        kind: GeneratorKind::UniformRandom,
        edits: k,
        verify: None,
        seed: Seed::new(2),
    };
    let (xv, yv) = generate(&spec).expect("uniform corpus");
    let (x, y) = (Text::new(xv), Text::new(yv));

    println!("one pair, n = {n}, planted edits = {k}");
    println!("{:>6} {:>9} {:>9} {:>10}", "alpha", "far bound", "verdict", "probes");
    for alpha in [1usize, 2, 3, 4, 6] {
        let far = k + 3 * (k + 1) * (alpha - 1);
        let got = gap_alpha(&x, &y, k, alpha, None, RateConfig::default(), Seed::new(40))
            .expect("valid parameters");
        println!("{:>6} {:>9} {:>9} {:>10}", alpha, far, got.verdict.label(), got.probes);
    }
    println!();
    println!("alpha = 1 collapses the band to a point: the answer is exact at distance {k}");
}
