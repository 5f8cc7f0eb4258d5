//! Exact matching primitives, generic over the symbol type.
//!
//! Algorithms here require genuine equality (reflexive and transitive).
//! Out-of-bounds reads are modeled upstream as `Sym::Hole` values with
//! unique ids, so a hole never compares equal to anything else and equality
//! stays transitive.

/// A comparison symbol: a real byte, or a placeholder that matches nothing.
///
/// Holes carry a unique id so two holes taken from different positions are
/// unequal; the uniqueness is what lets classic matching algorithms run
/// unmodified over strings containing out-of-bounds reads or separators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Sym {
    Byte(u8),
    Hole(u64),
}

/// Hands out hole ids that are unique within one assembly of symbol arrays.
#[derive(Debug, Default)]
pub(crate) struct HoleGen {
    next: u64,
}

impl HoleGen {
    pub(crate) fn fresh(&mut self) -> Sym {
        let id = self.next;
        self.next += 1;
        Sym::Hole(id)
    }
}

pub(crate) fn to_sym(v: Option<u8>, holes: &mut HoleGen) -> Sym {
    match v {
        Some(b) => Sym::Byte(b),
        None => holes.fresh(),
    }
}

/// Z array: `z[i]` is the length of the longest common prefix of `s` and
/// `s[i..]`, with `z[0] = |s|`.
pub(crate) fn z_array<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0usize; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0usize, 0usize);
    for i in 1..n {
        let mut zi = 0usize;
        if i < r {
            zi = (r - i).min(z[i - l]);
        }
        while i + zi < n && s[zi] == s[i + zi] {
            zi += 1;
        }
        z[i] = zi;
        if i + zi > r {
            l = i;
            r = i + zi;
        }
    }
    z
}

/// Longest-proper-border table: `b[i]` is the length of the longest border
/// of `s[..=i]`.
pub(crate) fn border_table<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut b = vec![0usize; n];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = b[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        b[i] = k;
    }
    b
}

/// Shortest period of a nonempty string: `|s| - border(|s|)`.
pub(crate) fn period_of<T: Eq>(s: &[T]) -> usize {
    debug_assert!(!s.is_empty());
    let b = border_table(s);
    s.len() - b[s.len() - 1]
}

/// Starting positions of exact occurrences of `pattern` in `window`,
/// by streaming the window through the pattern's border automaton.
pub(crate) fn occurrences_in<T: Eq>(pattern: &[T], window: &[T]) -> Vec<usize> {
    let m = pattern.len();
    let mut out = Vec::new();
    if m == 0 || window.len() < m {
        return out;
    }
    let b = border_table(pattern);
    let mut k = 0usize;
    for (i, c) in window.iter().enumerate() {
        while k > 0 && *c != pattern[k] {
            k = b[k - 1];
        }
        if *c == pattern[k] {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = b[k - 1];
        }
    }
    out
}
