//! Embed strings one at a time into Hamming space with shared randomness.
//! The Hamming distance of two images brackets the edit distance of the
//! originals, and each image touches far fewer than |X| positions.

use gapshear::text::edit_distance_full;
use gapshear::{
    cgk_embed_baseline, embed_distortion_check, make_shared_randomness, plant_edits,
    sublinear_embed, EmbedMode, Seed, Text,
};

fn main() {
    let n = 2048usize;
    let p = 16usize;
    let mut rng = Seed::new(5).rng();
    let xv: Vec<u8> = (0..n).map(|i| (i as u8 ^ (i >> 3) as u8) & 1).collect();
    let yv = plant_edits(&mut rng, &xv, 3, 2);
    let (x, y) = (Text::new(xv), Text::new(yv));
    let ed = edit_distance_full(&x, &y);

    let r = make_shared_randomness(x.len().max(y.len()), p, EmbedMode::Binary, Seed::new(77))
        .expect("p is above the 2 ln n floor");
    println!("sampled {} of the 3n = {} walk steps (period p = {p})", r.sample_count(), 3 * n);

    let ex = sublinear_embed(&x, &r).expect("fits the randomness context");
    let probes_x = x.probes();
    let ey = sublinear_embed(&y, &r).expect("fits the randomness context");
    let hd = ex.output.iter().zip(&ey.output).filter(|(a, b)| a != b).count();
    println!("edit distance {ed}, image Hamming distance {hd}, probes per side ~ {probes_x}");
    println!("guarantee: (ED - p + 1)/(p + 1) <= HD <= 1296 ED^2, here {:.2} <= {hd} <= {}",
        (ed as f64 - p as f64 + 1.0) / (p as f64 + 1.0), 1296 * ed * ed);

    let stats = embed_distortion_check(&x, &y, p, 200, Seed::new(99)).expect("valid parameters");
    println!(
        "over {} fresh draws of R the joint bound held {:.0}% of the time",
        stats.trials,
        100.0 * stats.joint_fraction
    );
    let (lo, hi) = (
        stats.histogram.keys().next().copied().unwrap_or(0),
        stats.histogram.keys().last().copied().unwrap_or(0),
    );
    println!("observed image distances ranged {lo}..={hi}");

    // the dense baseline reads every step and emits 3n symbols
    let dense = cgk_embed_baseline(&x, Seed::new(123));
    println!(
        "dense baseline image: {} symbols versus {} sampled here",
        dense.len(),
        ex.output.len()
    );
}
