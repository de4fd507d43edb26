//! Floating-point eigenstructure tests on real realizations.

use nalgebra::{DMatrix, Schur, SVD};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::Pattern;

const MAX_ITER: usize = 10_000;

/// Realization with every free entry drawn as `±u`, `u` uniform on
/// `[0.5, 2]`, so no entry is close to zero.
pub fn random_real<R: Rng + ?Sized>(pattern: &Pattern, rng: &mut R) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(pattern.rows(), pattern.cols());
    for (i, j) in pattern.entries() {
        let mag: f64 = rng.random_range(0.5..=2.0);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        m[(i - 1, j - 1)] = sign * mag;
    }
    m
}

/// Largest singular value, or 1 for an empty or zero matrix.
pub fn norm_scale(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 1.0;
    }
    let s = m.clone().singular_values().max();
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

fn complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Numeric rank: singular values above `threshold`.
pub fn complex_rank(m: &DMatrix<Complex64>, threshold: f64) -> Result<usize> {
    if m.is_empty() {
        return Ok(0);
    }
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::Invalid("singular value iteration did not converge".into()))?;
    Ok(svd.singular_values.iter().filter(|&&s| s > threshold).count())
}

/// A group of computed eigenvalues treated as one multiple eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub centroid: Complex64,
    pub size: usize,
}

/// Eigenvalues of `a` grouped by single linkage.
///
/// A defective eigenvalue of multiplicity `k` is split by rounding into a
/// ring of radius about `(eps * |A|)^(1/k)`, so the linkage distance is
/// `|A| * max(tol, (64 eps)^(1/n))`.
pub fn eigen_clusters(a: &DMatrix<f64>, tol: f64) -> Result<Vec<Cluster>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = norm_scale(a);
    let schur = Schur::try_new(a.clone(), f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::Invalid("Schur iteration did not converge".into()))?;
    let eig: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    let link = scale * tol.max((64.0 * f64::EPSILON).powf(1.0 / n as f64));

    // Union-find over eigenvalue indices.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eig[i] - eig[j]).norm() <= link {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut out: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, &z) in eig.iter().enumerate().take(n) {
        let r = find(&mut parent, i);
        match out.iter_mut().find(|(root, _, _)| *root == r) {
            Some(entry) => {
                entry.1 += z;
                entry.2 += 1;
            }
            None => out.push((r, z, 1)),
        }
    }
    Ok(out
        .into_iter()
        .map(|(_, sum, size)| Cluster {
            centroid: sum / size as f64,
            size,
        })
        .collect())
}

/// True when every eigenvalue cluster has geometric multiplicity equal to
/// its size. Ranks use the threshold `tol * |A|`.
pub fn numeric_diagonalizable(a: &DMatrix<f64>, tol: f64) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::dim("numeric_diagonalizable", "matrix must be square"));
    }
    let n = a.nrows();
    let threshold = tol * norm_scale(a);
    let ac = complex(a);
    for cl in eigen_clusters(a, tol)? {
        let shifted = &ac - DMatrix::<Complex64>::identity(n, n) * cl.centroid;
        let geometric = n - complex_rank(&shifted, threshold)?;
        if geometric != cl.size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the eigenvalue-wise rank test for functional observability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PbhOutcome {
    /// `rank [A - λI; C; F] == rank [A - λI; C]` at every eigenvalue.
    pub holds: bool,
    /// The test is only sufficient when `A` is diagonalizable; otherwise
    /// `holds` is a necessary condition.
    pub exact: bool,
}

/// Evaluates the rank condition at every eigenvalue cluster centroid of
/// `a`. Off the spectrum `A - λI` is invertible and the condition holds
/// trivially, so only eigenvalues are checked.
pub fn numeric_pbh_functional(a: &DMatrix<f64>, c: &DMatrix<f64>, f: &DMatrix<f64>, tol: f64) -> Result<PbhOutcome> {
    let n = a.nrows();
    if !a.is_square() || c.ncols() != n || f.ncols() != n {
        return Err(Error::dim("numeric_pbh_functional", "C and F need n columns"));
    }
    let exact = numeric_diagonalizable(a, tol)?;
    let scale = [norm_scale(a), norm_scale(c), norm_scale(f)]
        .into_iter()
        .fold(0.0, f64::max);
    let threshold = tol * scale;
    let ac = complex(a);
    let cc = complex(c);
    let fc = complex(f);
    for cl in eigen_clusters(a, tol)? {
        let shifted = &ac - DMatrix::<Complex64>::identity(n, n) * cl.centroid;
        let base = vstack(&shifted, &cc);
        let with_f = vstack(&base, &fc);
        if complex_rank(&with_f, threshold)? != complex_rank(&base, threshold)? {
            return Ok(PbhOutcome { holds: false, exact });
        }
    }
    Ok(PbhOutcome { holds: true, exact })
}

fn vstack(top: &DMatrix<Complex64>, bottom: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(top.nrows() + bottom.nrows(), top.ncols());
    m.rows_mut(0, top.nrows()).copy_from(top);
    m.rows_mut(top.nrows(), bottom.nrows()).copy_from(bottom);
    m
}
