//! Probe-counted strings and exact string primitives.
//!
//! [`Text`] owns an immutable byte string plus an atomic probe counter that
//! every indexed read increments, including out-of-bounds reads. Probes are
//! the unit of query complexity for everything above this module: all
//! sublinear-time claims are stated in terms of this counter.
//!
//! Out-of-bounds semantics: a read at a negative index or past the end
//! returns `None`, and `None` matches nothing, not even another `None`. Use
//! [`symbols_match`] rather than `==` when comparing two reads.
//!
//! The distance oracles at the bottom of this module (`lce_exact`,
//! `edit_distance_full`, `indel_distance`) read the underlying bytes
//! without counting probes: they exist to validate the instrumented
//! algorithms, and charging them against the probe budget would make the
//! counts meaningless. `landau_vishkin` is an actual component of the
//! testers, so it probes.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matching::{self, HoleGen, Sym};

/// An immutable byte string with a shared probe counter.
///
/// Cloning is cheap and shares both the bytes and the counter, so fragments
/// and clones all bill reads to the same account.
#[derive(Clone)]
pub struct Text {
    data: Arc<[u8]>,
    probes: Arc<AtomicU64>,
}

impl Text {
    pub fn new(data: impl Into<Vec<u8>>) -> Self {
        Text {
            data: data.into().into(),
            probes: Arc::new(AtomicU64::new(0)),
        }
    }

    /// A copy backed by the same bytes but a fresh counter. Reference runs
    /// (oracles, differential tests) use detached copies so they do not
    /// disturb the measured algorithm's probe count.
    pub fn detached(&self) -> Text {
        Text {
            data: Arc::clone(&self.data),
            probes: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Indexed read. Counts one probe per call, whether or not `i` is in
    /// bounds; out-of-bounds reads return `None`.
    pub fn get(&self, i: i64) -> Option<u8> {
        self.probes.fetch_add(1, Ordering::Relaxed);
        if i < 0 || i as u64 >= self.data.len() as u64 {
            None
        } else {
            Some(self.data[i as usize])
        }
    }

    /// Total probes charged so far to this string (shared by all clones).
    pub fn probes(&self) -> u64 {
        self.probes.load(Ordering::Relaxed)
    }

    /// Uncounted access to the raw bytes, for oracles and tests.
    pub fn raw(&self) -> &[u8] {
        &self.data
    }

    /// View of `[lo, hi)`. Panics if the range is invalid; fragments are
    /// built from indices the caller already owns.
    pub fn fragment(&self, lo: usize, hi: usize) -> Fragment {
        assert!(lo <= hi && hi <= self.data.len(), "fragment {lo}..{hi} out of range");
        Fragment { text: self.clone(), lo, hi }
    }

    /// The whole string as a fragment.
    pub fn whole(&self) -> Fragment {
        self.fragment(0, self.len())
    }

    /// Standalone copy of `[lo, hi)` that keeps billing reads to this
    /// string's counter, so whole-string algorithms can run on a piece
    /// without losing probe accounting.
    pub(crate) fn carved(&self, lo: usize, hi: usize) -> Text {
        assert!(lo <= hi && hi <= self.data.len(), "carve {lo}..{hi} out of range");
        Text {
            data: self.data[lo..hi].into(),
            probes: Arc::clone(&self.probes),
        }
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({} bytes)", self.data.len())
    }
}

/// A half-open window `[lo, hi)` into a [`Text`].
///
/// Reads are relative to the window and out-of-bounds relative to the
/// window, even where the parent has data: a fragment behaves exactly like
/// a string of its own length.
#[derive(Clone)]
pub struct Fragment {
    text: Text,
    lo: usize,
    hi: usize,
}

impl Fragment {
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Start of the window in the parent text.
    pub fn start(&self) -> usize {
        self.lo
    }

    /// End of the window in the parent text.
    pub fn end(&self) -> usize {
        self.hi
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    /// Indexed read relative to the window; counts one probe per call.
    pub fn get(&self, i: i64) -> Option<u8> {
        if i < 0 || i as u64 >= self.len() as u64 {
            // Still bill the attempted read.
            self.text.probes.fetch_add(1, Ordering::Relaxed);
            None
        } else {
            self.text.get(self.lo as i64 + i)
        }
    }

    /// Sub-window with bounds relative to this fragment.
    pub fn sub(&self, lo: usize, hi: usize) -> Fragment {
        assert!(lo <= hi && hi <= self.len(), "sub-fragment {lo}..{hi} out of range");
        Fragment {
            text: self.text.clone(),
            lo: self.lo + lo,
            hi: self.lo + hi,
        }
    }

    /// Uncounted raw view, for oracles and tests.
    pub fn raw(&self) -> &[u8] {
        &self.text.raw()[self.lo..self.hi]
    }

    /// Read the whole window into comparison symbols (counts probes).
    pub(crate) fn syms(&self, holes: &mut HoleGen) -> Vec<Sym> {
        (0..self.len() as i64)
            .map(|i| matching::to_sym(self.get(i), holes))
            .collect()
    }
}

impl fmt::Debug for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fragment[{}..{})", self.lo, self.hi)
    }
}

/// True when both reads landed in bounds and saw the same byte.
///
/// Two out-of-bounds reads do not match each other.
pub fn symbols_match(a: Option<u8>, b: Option<u8>) -> bool {
    matches!((a, b), (Some(x), Some(y)) if x == y)
}

/// A [`Text`] plus a read memo: the first read of each position is billed
/// to the probe counter, repeats are free. One run of a sublinear algorithm
/// owns one cache per input string, so its probe count measures distinct
/// positions inspected rather than raw read instructions.
pub(crate) struct CachedText {
    text: Text,
    seen: std::collections::HashMap<i64, Option<u8>>,
}

impl CachedText {
    pub(crate) fn new(text: &Text) -> CachedText {
        CachedText { text: text.clone(), seen: std::collections::HashMap::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.text.len()
    }

    pub(crate) fn get(&mut self, i: i64) -> Option<u8> {
        *self.seen.entry(i).or_insert_with(|| self.text.get(i))
    }
}

/// Shortest period and the length of the prefix it was measured on.
///
/// `period` is the smallest `p >= 1` with `s[i] == s[i + p]` for all valid
/// `i`; it always satisfies `1 <= period <= prefix_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodInfo {
    pub period: usize,
    pub prefix_len: usize,
}

/// Accept/reject outcome of a distance tester.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        matches!(self, Verdict::Accept)
    }

    /// Uppercase name used by reports and the CSV schema.
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Accept => "ACCEPT",
            Verdict::Reject => "REJECT",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => write!(f, "ACCEPT"),
            Verdict::Reject => write!(f, "REJECT"),
        }
    }
}

/// Smallest period of a nonempty fragment, via the border table.
///
/// Errors on an empty fragment: the period of the empty string is
/// undefined.
pub fn shortest_period(s: &Fragment) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::parameter("shortest_period: empty string has no period"));
    }
    let mut holes = HoleGen::default();
    let syms = s.syms(&mut holes);
    Ok(matching::period_of(&syms))
}

/// [`shortest_period`] packaged with the measured length.
pub fn period_info(s: &Fragment) -> Result<PeriodInfo> {
    Ok(PeriodInfo {
        period: shortest_period(s)?,
        prefix_len: s.len(),
    })
}

/// Starting offsets (relative to `window`) of all exact occurrences of
/// `pattern` in `window`, in increasing order. An empty pattern yields no
/// occurrences.
pub fn occurrences(pattern: &Fragment, window: &Fragment) -> Vec<usize> {
    if pattern.is_empty() || window.len() < pattern.len() {
        return Vec::new();
    }
    let mut holes = HoleGen::default();
    let p = pattern.syms(&mut holes);
    let w = window.syms(&mut holes);
    matching::occurrences_in(&p, &w)
}

/// Prefix table: entry `t` is the longest common prefix of `s` and
/// `s[t..]`, for `t` in `0..=|s|`. Entry 0 is `|s|` and entry `|s|` is 0.
pub fn pref_table(s: &Fragment) -> Vec<usize> {
    let mut holes = HoleGen::default();
    let syms = s.syms(&mut holes);
    let mut z = matching::z_array(&syms);
    z.push(0);
    z
}

/// Longest common extension with at most `k` mismatches: the largest `l`
/// such that `X[x..x+l)` and `Y[y..y+l)` differ in at most `k` aligned
/// positions. Out-of-range starts give 0. Reference oracle; does not probe.
pub fn lce_exact(x: &Text, y: &Text, k: usize, x0: i64, y0: i64) -> usize {
    let (xs, ys) = (x.raw(), y.raw());
    if x0 < 0 || y0 < 0 || x0 as usize > xs.len() || y0 as usize > ys.len() {
        return 0;
    }
    let (x0, y0) = (x0 as usize, y0 as usize);
    let max = (xs.len() - x0).min(ys.len() - y0);
    let mut mismatches = 0usize;
    for l in 0..max {
        if xs[x0 + l] != ys[y0 + l] {
            mismatches += 1;
            if mismatches > k {
                return l;
            }
        }
    }
    max
}

/// Unit-cost edit distance by full dynamic programming. Reference oracle;
/// does not probe.
pub fn edit_distance_full(x: &Text, y: &Text) -> usize {
    let (xs, ys) = (x.raw(), y.raw());
    let m = ys.len();
    let mut prev: Vec<u32> = (0..=m as u32).collect();
    let mut cur = vec![0u32; m + 1];
    for (i, &xc) in xs.iter().enumerate() {
        cur[0] = i as u32 + 1;
        for j in 0..m {
            let sub = prev[j] + u32::from(xc != ys[j]);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m] as usize
}

/// Edit distance where substitutions cost 2 (equivalently: insertions and
/// deletions only). Satisfies `ed <= indel <= 2 * ed`. Reference oracle;
/// does not probe.
pub fn indel_distance(x: &Text, y: &Text) -> usize {
    let (xs, ys) = (x.raw(), y.raw());
    let m = ys.len();
    let mut prev: Vec<u32> = (0..=m as u32).collect();
    let mut cur = vec![0u32; m + 1];
    for (i, &xc) in xs.iter().enumerate() {
        cur[0] = i as u32 + 1;
        for j in 0..m {
            let sub = prev[j] + 2 * u32::from(xc != ys[j]);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m] as usize
}

/// Banded tester: accepts exactly when the edit distance is at most `k`.
///
/// This is the instrumented exact component the randomized testers degrade
/// to; it probes both strings.
pub fn landau_vishkin(x: &Text, y: &Text, k: usize) -> Verdict {
    if landau_vishkin_bounded(x, y, k).is_some() {
        Verdict::Accept
    } else {
        Verdict::Reject
    }
}

/// Exact edit distance if it is at most `budget`, else `None`.
///
/// Runs the banded frontier row by row and stops at the first row whose
/// frontier covers all of `X` on the length-difference diagonal; that row
/// index is the distance.
pub fn landau_vishkin_bounded(x: &Text, y: &Text, budget: usize) -> Option<usize> {
    lv_run(x, y, budget).0
}

/// [`landau_vishkin`] plus the final frontier row, indexed by diagonal
/// `-k..=k` (entry `j + k`); `None` marks unreachable diagonals.
pub fn landau_vishkin_frontier(x: &Text, y: &Text, k: usize) -> (Verdict, Vec<Option<usize>>) {
    let (dist, frontier) = lv_run(x, y, k);
    let verdict = if dist.is_some() { Verdict::Accept } else { Verdict::Reject };
    (verdict, frontier)
}

fn lv_run(x: &Text, y: &Text, budget: usize) -> (Option<usize>, Vec<Option<usize>>) {
    let (nx, ny) = (x.len() as i64, y.len() as i64);
    let k = budget as i64;
    let target_diag = ny - nx;
    // One slot per diagonal in [-k, k], plus a sentinel on each side so the
    // frontier update needs no bounds checks.
    let width = (2 * k + 3) as usize;
    let idx = |j: i64| (j + k + 1) as usize;
    let mut reach: Vec<Option<i64>> = vec![None; width];
    let mut base: Vec<Option<i64>> = vec![None; width];
    base[idx(0)] = Some(0);
    let mut frontier = vec![None; (2 * k + 1) as usize];
    for i in 0..=k {
        for j in -k..=k {
            reach[idx(j)] = base[idx(j)].map(|b| {
                let mut l = 0i64;
                while b + l < nx
                    && b + j + l >= 0
                    && b + j + l < ny
                    && symbols_match(x.get(b + l), y.get(b + j + l))
                {
                    l += 1;
                }
                b + l
            });
        }
        if target_diag.abs() <= k && reach[idx(target_diag)] == Some(nx) {
            for j in -k..=k {
                frontier[(j + k) as usize] = reach[idx(j)].map(|v| v as usize);
            }
            return (Some(i as usize), frontier);
        }
        if i == k {
            break;
        }
        for j in -k..=k {
            let candidates = [
                reach[idx(j) - 1],
                reach[idx(j)].map(|v| v + 1),
                reach[idx(j) + 1].map(|v| v + 1),
            ];
            base[idx(j)] = candidates.into_iter().flatten().max().map(|v| v.min(nx));
        }
    }
    for j in -k..=k {
        frontier[(j + k) as usize] = reach[idx(j)].map(|v| v as usize);
    }
    (None, frontier)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Text {
        Text::new(s.as_bytes().to_vec())
    }

    #[test]
    fn probe_counting_is_exact() {
        let x = t("hello");
        assert_eq!(x.probes(), 0);
        x.get(0);
        x.get(4);
        x.get(-1);
        x.get(5);
        assert_eq!(x.probes(), 4, "every indexed read counts, in bounds or not");
        let f = x.fragment(1, 3);
        f.get(0);
        f.get(2); // out of the window, still counted
        assert_eq!(x.probes(), 6);
        let clone = x.clone();
        clone.get(0);
        assert_eq!(x.probes(), 7, "clones share the counter");
        let detached = x.detached();
        detached.get(0);
        assert_eq!(x.probes(), 7, "detached copies do not");
        assert_eq!(detached.probes(), 1);
    }

    #[test]
    fn oob_reads_match_nothing() {
        let x = t("ab");
        assert!(symbols_match(x.get(0), x.get(0)));
        assert!(!symbols_match(x.get(0), x.get(1)));
        assert!(!symbols_match(x.get(-1), x.get(0)));
        assert!(!symbols_match(x.get(-1), x.get(5)), "two OOB reads also mismatch");
    }

    #[test]
    fn fragment_views_reindex() {
        let x = t("abcdef");
        let f = x.fragment(2, 5);
        assert_eq!(f.len(), 3);
        assert_eq!(f.get(0), Some(b'c'));
        assert_eq!(f.get(2), Some(b'e'));
        assert_eq!(f.get(3), None, "fragment bounds clip the parent");
        assert_eq!(f.get(-1), None);
        assert_eq!(f.sub(1, 3).raw(), b"de");
    }

    #[test]
    fn shortest_period_examples() {
        let cases: &[(&str, usize)] = &[("aaaa", 1), ("abaab", 3), ("abcd", 4), ("abab", 2), ("a", 1)];
        for &(s, want) in cases {
            let x = t(s);
            assert_eq!(shortest_period(&x.whole()).unwrap(), want, "{s}");
        }
        assert!(shortest_period(&t("").whole()).is_err());
    }

    #[test]
    fn shortest_period_matches_brute_force() {
        // Exhaustive over binary strings up to length 12.
        for len in 1..=12usize {
            for m in 0u32..1 << len {
                let s: Vec<u8> = (0..len).map(|i| b'a' + ((m >> i) & 1) as u8).collect();
                let brute = (1..=len)
                    .find(|&p| (0..len - p).all(|i| s[i] == s[i + p]))
                    .unwrap();
                let x = Text::new(s);
                assert_eq!(shortest_period(&x.whole()).unwrap(), brute);
            }
        }
    }

    #[test]
    fn period_info_invariant() {
        let x = t("abaab");
        let info = period_info(&x.whole()).unwrap();
        assert_eq!(info, PeriodInfo { period: 3, prefix_len: 5 });
        assert!(1 <= info.period && info.period <= info.prefix_len);
    }

    #[test]
    fn occurrences_examples() {
        let y = t("ababab");
        assert_eq!(occurrences(&t("ab").whole(), &y.whole()), vec![0, 2, 4]);
        let y2 = t("ababa");
        assert_eq!(occurrences(&t("aba").whole(), &y2.whole()), vec![0, 2]);
        assert_eq!(occurrences(&t("zz").whole(), &y.whole()), Vec::<usize>::new());
        assert_eq!(occurrences(&t("").whole(), &y.whole()), Vec::<usize>::new());
    }

    #[test]
    fn occurrence_progression_in_short_windows() {
        // When the window is at most 1.5 times the pattern, occurrences form
        // an arithmetic progression with difference per(pattern).
        let pats = ["abaaba", "ababab", "aabaab", "abcabc"];
        for p in pats {
            let pat = t(p);
            let win = t(&format!("{p}{}", &p[..p.len() / 2]));
            let occ = occurrences(&pat.whole(), &win.whole());
            assert!(win.len() <= pat.len() * 3 / 2);
            if occ.len() >= 2 {
                let per = shortest_period(&pat.whole()).unwrap();
                for w in occ.windows(2) {
                    assert_eq!(w[1] - w[0], per, "pattern {p}");
                }
            }
        }
    }

    #[test]
    fn pref_table_examples() {
        assert_eq!(pref_table(&t("aaaa").whole()), vec![4, 3, 2, 1, 0]);
        assert_eq!(pref_table(&t("abab").whole()), vec![4, 0, 2, 0, 0]);
        assert_eq!(pref_table(&t("").whole()), vec![0]);
    }

    #[test]
    fn lce_exact_examples_and_bounds() {
        let x = t("abcde");
        let y = t("abxde");
        assert_eq!(lce_exact(&x, &y, 0, 0, 0), 2);
        assert_eq!(lce_exact(&x, &y, 1, 0, 0), 5);
        assert_eq!(lce_exact(&x, &y, 0, -1, 0), 0, "out-of-range start");
        assert_eq!(lce_exact(&x, &y, 3, 9, 0), 0);
        assert_eq!(lce_exact(&x, &y, 0, 5, 5), 0, "one-past-end start is legal and empty");
    }

    #[test]
    fn lce_exact_is_monotone_and_tight() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let nx = rng.gen_range(0..=64);
            let ny = rng.gen_range(0..=64);
            let xs: Vec<u8> = (0..nx).map(|_| rng.gen_range(b'a'..=b'c')).collect();
            let ys: Vec<u8> = (0..ny).map(|_| rng.gen_range(b'a'..=b'c')).collect();
            let (x, y) = (Text::new(xs.clone()), Text::new(ys.clone()));
            let x0 = rng.gen_range(-1..=nx as i64 + 1);
            let y0 = rng.gen_range(-1..=ny as i64 + 1);
            let k = rng.gen_range(0..=8usize);
            let l = lce_exact(&x, &y, k, x0, y0);
            if k > 0 {
                assert!(lce_exact(&x, &y, k - 1, x0, y0) <= l, "monotone in k");
            }
            if x0 >= 0 && y0 >= 0 && (x0 as usize) <= nx as usize && (y0 as usize) <= ny as usize {
                let hd = |len: usize| -> usize {
                    (0..len)
                        .filter(|&i| xs[x0 as usize + i] != ys[y0 as usize + i])
                        .count()
                };
                assert!(hd(l) <= k);
                let max = (nx as usize - x0 as usize).min(ny as usize - y0 as usize);
                if l < max {
                    assert!(hd(l + 1) > k, "extension would exceed the mismatch budget");
                }
            } else {
                assert_eq!(l, 0);
            }
        }
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance_full(&t("kitten"), &t("sitting")), 3);
        assert_eq!(edit_distance_full(&t(""), &t("abc")), 3);
        assert_eq!(edit_distance_full(&t("abc"), &t("abc")), 0);
    }

    #[test]
    fn indel_distance_examples() {
        assert_eq!(indel_distance(&t("ab"), &t("ba")), 2);
        assert_eq!(indel_distance(&t("a"), &t("b")), 2);
        assert_eq!(indel_distance(&t("abc"), &t("abc")), 0);
    }

    #[test]
    fn indel_sandwiches_edit_distance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let nx = rng.gen_range(0..=24);
            let ny = rng.gen_range(0..=24);
            let x = Text::new((0..nx).map(|_| rng.gen_range(b'a'..=b'b')).collect::<Vec<_>>());
            let y = Text::new((0..ny).map(|_| rng.gen_range(b'a'..=b'b')).collect::<Vec<_>>());
            let ed = edit_distance_full(&x, &y);
            let idd = indel_distance(&x, &y);
            assert!(ed <= idd && idd <= 2 * ed || (ed == 0 && idd == 0));
        }
    }

    #[test]
    fn landau_vishkin_examples() {
        assert!(landau_vishkin(&t("kitten"), &t("sitting"), 3).is_accept());
        assert!(!landau_vishkin(&t("kitten"), &t("sitting"), 2).is_accept());
        assert!(landau_vishkin(&t(""), &t(""), 0).is_accept());
        assert_eq!(landau_vishkin_bounded(&t("kitten"), &t("sitting"), 10), Some(3));
        assert_eq!(landau_vishkin_bounded(&t("kitten"), &t("sitting"), 2), None);
        assert_eq!(landau_vishkin_bounded(&t("abc"), &t("abc"), 0), Some(0));
    }

    #[test]
    fn landau_vishkin_agrees_with_full_dp_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let nx = rng.gen_range(0..=10);
            let ny = rng.gen_range(0..=10);
            let x = Text::new((0..nx).map(|_| rng.gen_range(b'a'..=b'b')).collect::<Vec<_>>());
            let y = Text::new((0..ny).map(|_| rng.gen_range(b'a'..=b'b')).collect::<Vec<_>>());
            let ed = edit_distance_full(&x, &y);
            for k in 0..=6 {
                assert_eq!(landau_vishkin(&x, &y, k).is_accept(), ed <= k);
            }
            assert_eq!(landau_vishkin_bounded(&x, &y, 10), Some(ed));
        }
    }

    #[test]
    fn landau_vishkin_frontier_is_monotone_across_diagonals_reach() {
        let x = t("abcabcabc");
        let y = t("abcaxcabc");
        let (verdict, frontier) = landau_vishkin_frontier(&x, &y, 2);
        assert!(verdict.is_accept());
        assert_eq!(frontier.len(), 5);
        for v in frontier.into_iter().flatten() {
            assert!(v <= x.len());
        }
    }
}
