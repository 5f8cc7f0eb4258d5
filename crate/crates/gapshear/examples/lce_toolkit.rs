//! The sampled longest-common-extension layer underneath the testers:
//! single extensions, batched shifts, the composable index, and the two
//! period-break hunts.

use gapshear::text::{lce_exact, shortest_period};
use gapshear::{
    apx_lce_max, bar_lce_single, batch_bar_lce, build_lce_index, find_break, find_break2,
    query_lce_index, BreakOutcome, RateConfig, Seed, Text,
};

fn main() {
    // X disagrees with Y once every 100 positions; a sampled extension at
    // scale r notices each mismatch with probability 1/r, so it walks past
    // about r of them before stopping
    let mut xv: Vec<u8> =
        (0..1024u32).map(|i| (i.wrapping_mul(2654435761) >> 24) as u8 % 26 + b'a').collect();
    let yv = xv.clone();
    for pos in (99..1024).step_by(100) {
        xv[pos] ^= 1;
    }
    let (x, y) = (Text::new(xv), Text::new(yv));

    let exact = lce_exact(&x, &y, 0, 0, 0);
    println!("first real mismatch from (0, 0) is at {exact}, then one every 100 positions");
    for r in [2.0f64, 8.0, 32.0] {
        let ell = bar_lce_single(&x.whole(), &y.whole(), r, 0, Seed::new(3));
        println!("  sampled at scale r = {r:>4}: stopped at {ell} (expect roughly 100 r)");
    }

    let k = 4usize;
    let best = apx_lce_max(&x, &y, 0, -4i64..=4, k, RateConfig::default(), Seed::new(8));
    println!(
        "max extension over shifts -4..=4: {best}, inside the promised [{}, {}] sandwich",
        lce_exact(&x, &y, 0, 0, 0),
        lce_exact(&x, &y, k, 0, 0)
    );

    let batch = batch_bar_lce(&x.whole(), &y.whole(), 8.0, -4i64..=4, Seed::new(9));
    println!("batched per-shift extensions: {batch:?}");

    let index = build_lce_index(&x.whole(), &y.whole(), 8.0, -2i64..=2, Seed::new(10));
    for xq in [0i64, 128, 512] {
        println!("  index row at x = {xq}: {:?}", query_lce_index(&index, xq, Seed::new(11)));
    }

    // break hunts on a string that starts periodic and then decays
    let mut tv: Vec<u8> = b"abcabcabcabcabcabcabcabcabc".to_vec();
    tv.extend_from_slice(b"qwfpgjluyarstneiozxcdvbkmhq");
    let t = Text::new(tv);
    let q = 5usize;
    match find_break(&t.whole(), q, 2, RateConfig::default(), Seed::new(12)).expect("q fits") {
        BreakOutcome::Break(w) => {
            let per = shortest_period(&w).expect("nonempty window");
            println!(
                "find_break: window [{}, {}) has period {per} > q = {q}",
                w.start(),
                w.end()
            );
        }
        BreakOutcome::Periodic(p) => println!("find_break: whole string near-period {p}"),
    }
    let ell = find_break2(&t.whole(), 2.0, q, Seed::new(13)).expect("leading window is periodic");
    println!("find_break2: certified break by position {ell} of {}", t.len());
}
