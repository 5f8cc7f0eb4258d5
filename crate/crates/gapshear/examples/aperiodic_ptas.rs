//! On strings without short-period windows, the decomposition tester
//! narrows the accept/reject gap to any (1+eps) factor.

use gapshear::{
    check_aperiodicity, gap_ptas, generate, plant_edits, AperiodicityParams, CorpusSpec,
    GeneratorKind, RateConfig, Seed, Text,
};

fn main() {
    let (n, k, window) = (8192usize, 8usize, 64usize);
    let spec = CorpusSpec {
        n,
        sigma: 26,
        kind: GeneratorKind::AperiodicVerified,
        edits: 0,
        verify: Some(AperiodicityParams { window, k }),
        seed: Seed::new(12),
    };
    let (base, _) = generate(&spec).expect("aperiodic corpus");
    let x = Text::new(base.clone());
    assert!(check_aperiodicity(&x, window, k).is_none(), "generator verified this");
    println!("base string: n = {n}, every {window}-window has period > {}", 2 * k);

    for eps in [0.25f64, 0.5] {
        println!("\neps = {eps}: accept <= {k} edits, reject >= {} edits", ((1.0 + eps) * k as f64).ceil());
        for edits in [k / 2, k, 3 * k, 6 * k] {
            let mut rng = Seed::new(edits as u64).rng();
            let y = Text::new(plant_edits(&mut rng, &base, edits, 26));
            let got = gap_ptas(&x, &y, k, window, eps, RateConfig::default(), Seed::new(90))
                .expect("valid parameters");
            println!(
                "  planted {:>2} edits -> {:>6}  ({} probes)",
                edits,
                got.verdict.label(),
                got.probes
            );
        }
    }
}
