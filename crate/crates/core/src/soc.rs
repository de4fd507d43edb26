//! Structural output controllability.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinat::{reachable, Direction};
use crate::diag::is_generically_diagonalizable;
use crate::error::{Error, Result};
use crate::grank::{grank, input_cactus_size, linking, LinkPath};
use crate::model::{system_digraph, Pattern, SystemPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SocVerdict {
    Soc,
    NotSoc,
    /// The rank precondition fails and `A` is not generically
    /// diagonalizable, so the linking test is not known to be exact.
    Undecidable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocReport {
    pub verdict: SocVerdict,
    pub precondition_holds: bool,
    pub diagonalizable: bool,
    /// `grank [A_r, B]`.
    pub grank_arb: usize,
    /// `grank Q(A, B)`.
    pub grank_qab: usize,
    pub linking: usize,
    pub p: usize,
    /// Certificate for `linking`.
    pub linking_paths: Vec<LinkPath>,
    /// States not reachable from any input, 1-based.
    pub input_unreachable: BTreeSet<usize>,
}

/// Input-reachable states of `G(A, B)`, 1-based.
pub fn input_reachable_states(a: &Pattern, b: &Pattern) -> Result<BTreeSet<usize>> {
    let sys = SystemPattern::new(a.clone(), Some(b.clone()), None, None)?;
    let n = sys.n();
    let g = system_digraph(&sys);
    let inputs: BTreeSet<usize> = (n..n + sys.m()).collect();
    Ok(reachable(&g, &inputs, Direction::Forward)
        .into_iter()
        .filter(|&v| v < n)
        .map(|v| v + 1)
        .collect())
}

/// `A` with the rows and columns of input-unreachable states zeroed.
pub fn input_reachable_restriction(a: &Pattern, b: &Pattern) -> Result<Pattern> {
    Ok(a.restrict(&input_reachable_states(a, b)?))
}

/// Decides SOC where the linking criterion is exact: whenever
/// `grank [A_r, B] == grank Q(A, B)`, which always holds for generically
/// diagonalizable `A`.
pub fn is_soc(a: &Pattern, b: &Pattern, c: &Pattern) -> Result<SocReport> {
    let sys = SystemPattern::new(a.clone(), Some(b.clone()), Some(c.clone()), None)?;
    let p = sys.p();
    if p == 0 {
        return Err(Error::NoOutputs);
    }
    let xr = input_reachable_states(a, b)?;
    let a_r = a.restrict(&xr);
    let grank_arb = grank(&a_r.concat_cols(b)?);
    let grank_qab = input_cactus_size(a, b)?;
    let precondition_holds = grank_arb == grank_qab;
    let diagonalizable = is_generically_diagonalizable(a)?.verdict;
    let paths = linking(&a_r, b, c)?;
    let verdict = if precondition_holds || diagonalizable {
        if paths.len() == p {
            SocVerdict::Soc
        } else {
            SocVerdict::NotSoc
        }
    } else {
        SocVerdict::Undecidable
    };
    Ok(SocReport {
        verdict,
        precondition_holds,
        diagonalizable,
        grank_arb,
        grank_qab,
        linking: paths.len(),
        p,
        linking_paths: paths,
        input_unreachable: (1..=sys.n()).filter(|i| !xr.contains(i)).collect(),
    })
}
