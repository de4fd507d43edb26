//! Random pattern generators for the test corpus.

use rand::Rng;

use crate::diag::is_generically_diagonalizable;
use crate::model::Pattern;

/// Each entry free independently with probability `density`.
pub fn random_pattern<R: Rng + ?Sized>(rows: usize, cols: usize, density: f64, rng: &mut R) -> Pattern {
    let mut p = Pattern::zeros(rows, cols);
    for i in 1..=rows {
        for j in 1..=cols {
            if rng.random_bool(density) {
                p.insert(i, j).expect("indices in range");
            }
        }
    }
    p
}

/// Random square pattern with a density drawn from `[0.1, 0.6]`.
pub fn random_square<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Pattern {
    let density = rng.random_range(0.1..=0.6);
    random_pattern(n, n, density, rng)
}

/// All `2^(n^2)` square patterns of order `n` in mask order. Only sensible
/// for `n <= 4`.
pub fn all_square_patterns(n: usize) -> impl Iterator<Item = Pattern> {
    assert!(n <= 4, "exhaustive enumeration is limited to n <= 4");
    (0u64..1 << (n * n)).map(move |mask| {
        Pattern::from_entries(
            n,
            n,
            (0..n * n)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| (k / n + 1, k % n + 1)),
        )
        .expect("indices in range")
    })
}

/// Rejection sampling of a generically diagonalizable square pattern.
/// Half of the draws get extra self-loops, which keeps the acceptance
/// rate high without making every instance trivial.
pub fn random_gen_diag<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Pattern {
    loop {
        let mut a = random_square(n, rng);
        if rng.random_bool(0.5) {
            for i in 1..=n {
                if rng.random_bool(0.4) {
                    a.insert(i, i).expect("indices in range");
                }
            }
        }
        if is_generically_diagonalizable(&a).expect("square").verdict {
            return a;
        }
    }
}

/// Random nonempty functional pattern: `r` rows, each nonzero somewhere.
pub fn random_functional<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Pattern {
    let r = rng.random_range(1..=n.min(3));
    let mut f = random_pattern(r, n, 0.3, rng);
    for row in 1..=r {
        let j = rng.random_range(1..=n);
        f.insert(row, j).expect("indices in range");
    }
    f
}
