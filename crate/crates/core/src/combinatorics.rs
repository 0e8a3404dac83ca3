//! Lexicographic k-subset walks.

/// Advances `c` (strictly increasing indices below `n`) to the next
/// k-subset in lexicographic order; returns false after the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for t in i + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `visit` on every k-subset of `0..n` in lexicographic order until it
/// returns `false`. Returns false if the walk was stopped early.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&c) {
            return false;
        }
        if k == 0 || !next_combination(&mut c, n) {
            return true;
        }
    }
}
