use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparsity pattern of a structured matrix.
///
/// Each position is either a fixed zero or an independent free parameter.
/// Positions are 1-based `(row, col)` pairs. Zero-row and zero-column
/// patterns are legal and stand for absent matrices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PatternRepr", try_from = "PatternRepr")]
pub struct Pattern {
    rows: usize,
    cols: usize,
    nonzeros: BTreeSet<(usize, usize)>,
}

/// Serialized form; positions are checked against the shape when read.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize)>,
}

impl From<Pattern> for PatternRepr {
    fn from(p: Pattern) -> Self {
        Self {
            rows: p.rows,
            cols: p.cols,
            entries: p.nonzeros.into_iter().collect(),
        }
    }
}

impl TryFrom<PatternRepr> for Pattern {
    type Error = Error;

    fn try_from(r: PatternRepr) -> Result<Self> {
        Pattern::from_entries(r.rows, r.cols, r.entries)
    }
}

impl Pattern {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            nonzeros: BTreeSet::new(),
        }
    }

    /// Builds a pattern from 1-based positions. Repeated positions collapse.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = Self::zeros(rows, cols);
        for (i, j) in entries {
            p.insert(i, j)?;
        }
        Ok(p)
    }

    /// `n x n` pattern with free diagonal entries.
    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            nonzeros: (1..=n).map(|i| (i, i)).collect(),
        }
    }

    /// The row pattern with a single free entry in column `i`.
    pub fn unit_row(n: usize, i: usize) -> Result<Self> {
        Self::from_entries(1, n, [(1, i)])
    }

    /// Dedicated-sensor pattern: one row per listed state, in ascending order.
    pub fn selector(n: usize, states: &BTreeSet<usize>) -> Result<Self> {
        Self::from_entries(states.len(), n, states.iter().enumerate().map(|(k, &i)| (k + 1, i)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzeros.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.nonzeros.contains(&(i, j))
    }

    /// Nonzero positions in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nonzeros.iter().copied()
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == 0 || i > self.rows {
            return Err(Error::IndexOutOfRange {
                what: "row",
                index: i,
                bound: self.rows,
            });
        }
        if j == 0 || j > self.cols {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: j,
                bound: self.cols,
            });
        }
        Ok(self.nonzeros.insert((i, j)))
    }

    pub fn remove(&mut self, i: usize, j: usize) -> bool {
        self.nonzeros.remove(&(i, j))
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            nonzeros: self.nonzeros.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// Vertical stacking `[self; bottom]`.
    pub fn stack(&self, bottom: &Pattern) -> Result<Self> {
        if self.cols != bottom.cols {
            return Err(Error::dim(
                "stack",
                format!("top has {} columns, bottom has {}", self.cols, bottom.cols),
            ));
        }
        let mut nonzeros = self.nonzeros.clone();
        nonzeros.extend(bottom.entries().map(|(i, j)| (i + self.rows, j)));
        Ok(Self {
            rows: self.rows + bottom.rows,
            cols: self.cols,
            nonzeros,
        })
    }

    /// Horizontal concatenation `[self, right]`.
    pub fn concat_cols(&self, right: &Pattern) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::dim(
                "concat_cols",
                format!("left has {} rows, right has {}", self.rows, right.rows),
            ));
        }
        let mut nonzeros = self.nonzeros.clone();
        nonzeros.extend(right.entries().map(|(i, j)| (i, j + self.cols)));
        Ok(Self {
            rows: self.rows,
            cols: self.cols + right.cols,
            nonzeros,
        })
    }

    /// Indices of columns holding at least one nonzero.
    pub fn nonzero_columns(&self) -> BTreeSet<usize> {
        self.nonzeros.iter().map(|&(_, j)| j).collect()
    }

    pub fn nonzero_rows(&self) -> BTreeSet<usize> {
        self.nonzeros.iter().map(|&(i, _)| i).collect()
    }

    /// Square subpattern on the listed indices, renumbered `1..=k` in the
    /// order of `keep`.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        let mut pos = vec![0usize; self.rows.max(self.cols) + 1];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k + 1;
        }
        let nonzeros = self
            .nonzeros
            .iter()
            .filter(|&&(i, j)| pos[i] != 0 && pos[j] != 0)
            .map(|&(i, j)| (pos[i], pos[j]))
            .collect();
        Self {
            rows: keep.len(),
            cols: keep.len(),
            nonzeros,
        }
    }

    /// Same dimensions, rows and columns outside `keep` zeroed.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            nonzeros: self
                .nonzeros
                .iter()
                .filter(|(i, j)| keep.contains(i) && keep.contains(j))
                .copied()
                .collect(),
        }
    }

    /// Dense boolean view, row-major, 0-based.
    pub fn to_dense(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.cols]; self.rows];
        for &(i, j) in &self.nonzeros {
            m[i - 1][j - 1] = true;
        }
        m
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({}x{}, {:?})", self.rows, self.cols, self.nonzeros)
    }
}

/// Renders the pattern as rows of `*` and `0`.
impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let line: Vec<&str> = (1..=self.cols)
                .map(|j| if self.contains(i, j) { "*" } else { "0" })
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
