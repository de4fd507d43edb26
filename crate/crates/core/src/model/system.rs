use serde::{Deserialize, Serialize};

use super::Pattern;
use crate::error::{Error, Result};

/// Structured system `(A, B, C, F)` with `n` states, `m` inputs, `p` outputs
/// and `r` functionals. Absent matrices are stored as zero-sized patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr")]
pub struct SystemPattern {
    a: Pattern,
    b: Pattern,
    c: Pattern,
    f: Pattern,
}

#[derive(Deserialize)]
struct SystemRepr {
    a: Pattern,
    b: Pattern,
    c: Pattern,
    f: Pattern,
}

impl TryFrom<SystemRepr> for SystemPattern {
    type Error = Error;

    fn try_from(r: SystemRepr) -> Result<Self> {
        SystemPattern::new(r.a, Some(r.b), Some(r.c), Some(r.f))
    }
}

impl SystemPattern {
    pub fn new(a: Pattern, b: Option<Pattern>, c: Option<Pattern>, f: Option<Pattern>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::dim(
                "A",
                format!("expected a square pattern, got {}x{}", a.rows(), a.cols()),
            ));
        }
        let n = a.rows();
        if n == 0 {
            return Err(Error::dim("A", "a system needs at least one state"));
        }
        let b = b.unwrap_or_else(|| Pattern::zeros(n, 0));
        let c = c.unwrap_or_else(|| Pattern::zeros(0, n));
        let f = f.unwrap_or_else(|| Pattern::zeros(0, n));
        if b.rows() != n {
            return Err(Error::dim("B", format!("expected {n} rows, got {}", b.rows())));
        }
        if c.cols() != n {
            return Err(Error::dim("C", format!("expected {n} columns, got {}", c.cols())));
        }
        if f.cols() != n {
            return Err(Error::dim("F", format!("expected {n} columns, got {}", f.cols())));
        }
        Ok(Self { a, b, c, f })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn p(&self) -> usize {
        self.c.rows()
    }

    pub fn r(&self) -> usize {
        self.f.rows()
    }

    pub fn a(&self) -> &Pattern {
        &self.a
    }

    pub fn b(&self) -> &Pattern {
        &self.b
    }

    pub fn c(&self) -> &Pattern {
        &self.c
    }

    pub fn f(&self) -> &Pattern {
        &self.f
    }
}
