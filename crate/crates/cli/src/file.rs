//! The JSON system file: dimensions plus 1-based nonzero positions.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, Context, Result};
use gendiag::model::{Pattern, SystemPattern};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub r: usize,
    #[serde(rename = "A")]
    pub a: Vec<[usize; 2]>,
    #[serde(rename = "B")]
    pub b: Vec<[usize; 2]>,
    #[serde(rename = "C")]
    pub c: Vec<[usize; 2]>,
    #[serde(rename = "F")]
    pub f: Vec<[usize; 2]>,
}

fn pattern(name: &str, rows: usize, cols: usize, entries: &[[usize; 2]]) -> Result<Pattern> {
    let mut seen = BTreeSet::new();
    for &[i, j] in entries {
        if i == 0 || j == 0 || i > rows || j > cols {
            bail!("field {name}: position [{i}, {j}] is outside the {rows}x{cols} matrix (indices are 1-based)");
        }
        if !seen.insert((i, j)) {
            bail!("field {name}: position [{i}, {j}] is listed twice");
        }
    }
    Ok(Pattern::from_entries(rows, cols, entries.iter().map(|&[i, j]| (i, j)))?)
}

fn positions(p: &Pattern) -> Vec<[usize; 2]> {
    p.entries().map(|(i, j)| [i, j]).collect()
}

impl SystemFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_system(&self) -> Result<SystemPattern> {
        if self.n == 0 {
            bail!("field n: a system needs at least one state");
        }
        let n = self.n;
        let a = pattern("A", n, n, &self.a)?;
        let b = pattern("B", n, self.m, &self.b)?;
        let c = pattern("C", self.p, n, &self.c)?;
        let f = pattern("F", self.r, n, &self.f)?;
        Ok(SystemPattern::new(a, Some(b), Some(c), Some(f))?)
    }

    pub fn from_system(sys: &SystemPattern) -> Self {
        Self {
            n: sys.n(),
            m: sys.m(),
            p: sys.p(),
            r: sys.r(),
            a: positions(sys.a()),
            b: positions(sys.b()),
            c: positions(sys.c()),
            f: positions(sys.f()),
        }
    }
}
