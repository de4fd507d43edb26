//! Exact linear algebra over a prime field `Z/pZ`, `p < 2^63`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::Pattern;

/// `2^31 - 1`.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Dense matrix over `Z/pZ`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Realization of `pattern` with every free entry drawn uniformly from
    /// the nonzero residues.
    pub fn random<R: Rng + ?Sized>(pattern: &Pattern, modulus: u64, rng: &mut R) -> Self {
        let mut m = Self::zeros(pattern.rows(), pattern.cols(), modulus);
        for (i, j) in pattern.entries() {
            m.data[(i - 1) * m.cols + (j - 1)] = rng.random_range(1..modulus);
        }
        m
    }

    /// Reduces integer entries into the field.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c, modulus);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = v.rem_euclid(modulus as i64) as u64;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != rhs.rows || self.modulus != rhs.modulus {
            return Err(Error::dim(
                "field product",
                format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            ));
        }
        let p = self.modulus;
        let mut out = FieldMatrix::zeros(self.rows, rhs.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = (out.data[idx] + mul_mod(a, rhs.get(k, j), p)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, bottom: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != bottom.cols {
            return Err(Error::dim("field vstack", "column counts differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(FieldMatrix {
            rows: self.rows + bottom.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        })
    }

    pub fn hstack(&self, right: &FieldMatrix) -> Result<FieldMatrix> {
        if self.rows != right.rows {
            return Err(Error::dim("field hstack", "row counts differ"));
        }
        let cols = self.cols + right.cols;
        let mut out = FieldMatrix::zeros(self.rows, cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j);
            }
            for j in 0..right.cols {
                out.data[i * cols + self.cols + j] = right.get(i, j);
            }
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let p = self.modulus;
        let (r, c) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..c {
            let Some(piv) = (rank..r).find(|&i| m[i * c + col] != 0) else {
                continue;
            };
            for j in 0..c {
                m.swap(rank * c + j, piv * c + j);
            }
            let inv = pow_mod(m[rank * c + col], p - 2, p);
            for i in rank + 1..r {
                let factor = mul_mod(m[i * c + col], inv, p);
                if factor == 0 {
                    continue;
                }
                for j in col..c {
                    let sub = mul_mod(factor, m[rank * c + j], p);
                    m[i * c + j] = (m[i * c + j] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        rank
    }
}

/// `[C; CA; ...; CA^{n-1}]`.
pub fn observability_matrix(a: &FieldMatrix, c: &FieldMatrix) -> Result<FieldMatrix> {
    let n = a.rows;
    let mut out = FieldMatrix::zeros(0, n, a.modulus);
    let mut block = c.clone();
    for _ in 0..n {
        out = out.vstack(&block)?;
        block = block.mul(a)?;
    }
    Ok(out)
}

/// `[B, AB, ..., A^{n-1} B]`.
pub fn controllability_matrix(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix> {
    let n = a.rows;
    let mut out = FieldMatrix::zeros(n, 0, a.modulus);
    let mut block = b.clone();
    for _ in 0..n {
        out = out.hstack(&block)?;
        block = a.mul(&block)?;
    }
    Ok(out)
}
