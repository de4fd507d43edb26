#![allow(dead_code)]

use gendiag::model::Pattern;
use proptest::prelude::*;

/// Pattern with exactly the given shape, each entry free with
/// probability about one third.
pub fn pattern(rows: usize, cols: usize) -> impl Strategy<Value = Pattern> {
    proptest::collection::vec(prop::bool::weighted(0.33), rows * cols).prop_map(move |bits| {
        Pattern::from_entries(
            rows,
            cols,
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| (k / cols + 1, k % cols + 1)),
        )
        .unwrap()
    })
}

pub fn square(max_n: usize) -> impl Strategy<Value = Pattern> {
    (1..=max_n).prop_flat_map(|n| pattern(n, n))
}

/// `(A, C)` with `A` of order `n <= max_n` and up to `max_p` output rows.
pub fn pair(max_n: usize, max_p: usize) -> impl Strategy<Value = (Pattern, Pattern)> {
    (1..=max_n, 0..=max_p).prop_flat_map(|(n, p)| (pattern(n, n), pattern(p, n)))
}

/// `(A, C, F)` with a nonempty functional pattern.
pub fn triple(max_n: usize, max_p: usize) -> impl Strategy<Value = (Pattern, Pattern, Pattern)> {
    (1..=max_n, 0..=max_p, 1..=3usize, any::<u64>()).prop_flat_map(|(n, p, r, seed)| {
        (pattern(n, n), pattern(p, n), pattern(r, n)).prop_map(move |(a, c, mut f)| {
            f.insert(1, (seed % n as u64) as usize + 1).unwrap();
            (a, c, f)
        })
    })
}

/// Relabels states by the permutation `perm` (0-based images).
pub fn permute(m: &Pattern, row_perm: Option<&[usize]>, col_perm: Option<&[usize]>) -> Pattern {
    Pattern::from_entries(
        m.rows(),
        m.cols(),
        m.entries().map(|(i, j)| {
            (
                row_perm.map_or(i, |p| p[i - 1] + 1),
                col_perm.map_or(j, |p| p[j - 1] + 1),
            )
        }),
    )
    .unwrap()
}
