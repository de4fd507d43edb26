//! Structural functional observability.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::combinat::max_matching;
use crate::diag::is_generically_diagonalizable;
use crate::error::{Error, Result};
use crate::grank::{cactus_size, grank, output_reachable};
use crate::model::{pattern_bigraph, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SfoMethod {
    /// Cactus sizes with and without `F`; valid for every `A`.
    GeneralCactus,
    /// `grank [A; C] == grank [A; C; F]`.
    DiagRank,
    /// `grank [A; C; e_i] == grank [A; C]` for each functional state.
    DiagPerState,
    /// No functional state lies in a minimal dilation of `[A; C]`.
    DiagDilation,
}

/// Which condition [`is_sfo_diag`] should test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagCondition {
    B,
    C,
    D,
}

impl DiagCondition {
    fn method(self) -> SfoMethod {
        match self {
            DiagCondition::B => SfoMethod::DiagRank,
            DiagCondition::C => SfoMethod::DiagPerState,
            DiagCondition::D => SfoMethod::DiagDilation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfoReport {
    pub verdict: bool,
    pub method: SfoMethod,
    pub functional_states: BTreeSet<usize>,
    pub unreachable_functional_states: BTreeSet<usize>,
    /// `d(G(A, C))`, general method only.
    pub d_ac: Option<usize>,
    /// `d(G(A, [C; F]))`, general method only.
    pub d_acf: Option<usize>,
    /// `grank [A; C]`, diagonalizable methods only.
    pub grank_ac: Option<usize>,
    /// `grank [A; C; F]`, condition (b) only.
    pub grank_acf: Option<usize>,
    /// Functional states whose own dedicated sensor would add information.
    pub failing_states: BTreeSet<usize>,
}

/// States with a nonzero column in `F`, 1-based.
pub fn functional_states(f: &Pattern) -> BTreeSet<usize> {
    f.nonzero_columns()
}

fn check_dims(a: &Pattern, c: &Pattern, f: &Pattern) -> Result<()> {
    if !a.is_square() {
        return Err(Error::dim("sfo", "A must be square"));
    }
    let n = a.rows();
    if c.cols() != n {
        return Err(Error::dim("C", format!("expected {n} columns, got {}", c.cols())));
    }
    if f.cols() != n {
        return Err(Error::dim("F", format!("expected {n} columns, got {}", f.cols())));
    }
    Ok(())
}

/// Structural functional observability for an arbitrary state pattern.
///
/// True when `X_F` is empty, or every functional state is output-reachable
/// and appending `F` to `C` leaves the cactus size unchanged.
pub fn is_sfo(a: &Pattern, c: &Pattern, f: &Pattern) -> Result<SfoReport> {
    check_dims(a, c, f)?;
    let xf = functional_states(f);
    let reach = output_reachable(a, c)?;
    let unreachable: BTreeSet<usize> = xf.difference(&reach).copied().collect();
    let d_ac = cactus_size(a, c)?.size;
    let d_acf = cactus_size(a, &c.stack(f)?)?.size;
    let mut failing = BTreeSet::new();
    for &i in &xf {
        let ci = c.stack(&Pattern::unit_row(a.rows(), i)?)?;
        if unreachable.contains(&i) || cactus_size(a, &ci)?.size > d_ac {
            failing.insert(i);
        }
    }
    let verdict = xf.is_empty() || (unreachable.is_empty() && d_ac == d_acf);
    Ok(SfoReport {
        verdict,
        method: SfoMethod::GeneralCactus,
        functional_states: xf,
        unreachable_functional_states: unreachable,
        d_ac: Some(d_ac),
        d_acf: Some(d_acf),
        grank_ac: None,
        grank_acf: None,
        failing_states: failing,
    })
}

/// Verdict of [`is_sfo`] without the per-state diagnostics.
pub fn sfo_verdict(a: &Pattern, c: &Pattern, f: &Pattern) -> Result<bool> {
    check_dims(a, c, f)?;
    let xf = functional_states(f);
    if xf.is_empty() {
        return Ok(true);
    }
    if !xf.is_subset(&output_reachable(a, c)?) {
        return Ok(false);
    }
    Ok(cactus_size(a, c)?.size == cactus_size(a, &c.stack(f)?)?.size)
}

/// The simplified criteria that hold when `A` is generically
/// diagonalizable. Rejects other `A` with [`Error::NotDiagonalizable`].
pub fn is_sfo_diag(a: &Pattern, c: &Pattern, f: &Pattern, cond: DiagCondition) -> Result<SfoReport> {
    check_dims(a, c, f)?;
    if !is_generically_diagonalizable(a)?.verdict {
        return Err(Error::NotDiagonalizable);
    }
    let xf = functional_states(f);
    let reach = output_reachable(a, c)?;
    let unreachable: BTreeSet<usize> = xf.difference(&reach).copied().collect();
    let ac = a.stack(c)?;
    let grank_ac = grank(&ac);
    let mut grank_acf = None;
    let failing: BTreeSet<usize> = match cond {
        DiagCondition::B => {
            let g = grank(&ac.stack(f)?);
            grank_acf = Some(g);
            // The rank test is global; report per-state failures as well so
            // the field means the same thing for every method.
            if g > grank_ac {
                per_state_failures(&ac, grank_ac, &xf)?
            } else {
                BTreeSet::new()
            }
        }
        DiagCondition::C => per_state_failures(&ac, grank_ac, &xf)?,
        DiagCondition::D => {
            let dil = dilation_states(&ac);
            xf.iter().copied().filter(|i| dil.contains(i)).collect()
        }
    };
    let rank_ok = match cond {
        DiagCondition::B => grank_acf == Some(grank_ac),
        _ => failing.is_empty(),
    };
    let verdict = xf.is_empty() || (unreachable.is_empty() && rank_ok);
    Ok(SfoReport {
        verdict,
        method: cond.method(),
        functional_states: xf,
        unreachable_functional_states: unreachable,
        d_ac: None,
        d_acf: None,
        grank_ac: Some(grank_ac),
        grank_acf,
        failing_states: failing,
    })
}

fn per_state_failures(ac: &Pattern, grank_ac: usize, xf: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for &i in xf {
        if grank(&ac.stack(&Pattern::unit_row(ac.cols(), i)?)?) > grank_ac {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Columns of `m` that are left unmatched by at least one maximum matching,
/// 1-based.
///
/// Found by alternating search from the columns a fixed maximum matching
/// leaves free: free column, any row edge, the row's matched column, and
/// so on. These columns are exactly the union of the minimal dilations.
pub fn dilation_states(m: &Pattern) -> BTreeSet<usize> {
    let g = pattern_bigraph(m);
    let mm = max_matching(&g);
    let col_mate = mm.right_to_left(m.cols());
    let row_mate = mm.left_to_right(m.rows());
    let mut row_adj = vec![Vec::new(); m.cols()];
    for e in g.edges() {
        row_adj[e.right].push(e.left);
    }
    let mut seen = vec![false; m.cols()];
    let mut queue: VecDeque<usize> = (0..m.cols()).filter(|&c| col_mate[c].is_none()).collect();
    for &c in &queue {
        seen[c] = true;
    }
    while let Some(c) = queue.pop_front() {
        for &r in &row_adj[c] {
            if let Some(c2) = row_mate[r] {
                if !seen[c2] {
                    seen[c2] = true;
                    queue.push_back(c2);
                }
            }
        }
    }
    (0..m.cols()).filter(|&c| seen[c]).map(|c| c + 1).collect()
}

/// Whether state `i` lies in a minimal dilation of `[A; C]`, equivalently
/// whether a dedicated sensor on `x_i` raises `grank [A; C]`.
pub fn in_minimal_dilation(a: &Pattern, c: &Pattern, i: usize) -> Result<bool> {
    check_dims(a, c, &Pattern::zeros(0, a.cols()))?;
    if i == 0 || i > a.rows() {
        return Err(Error::IndexOutOfRange {
            what: "state",
            index: i,
            bound: a.rows(),
        });
    }
    Ok(dilation_states(&a.stack(c)?).contains(&i))
}

/// Adds the sensor edges `x_i -> y_j` (pairs `(i, j)`, 1-based) to `C` and
/// re-checks SFO. Every edge must start in `X_F`; edges already present are
/// no-ops. The input triple must be SFO.
pub fn sfo_preserved_under_functional_edge_addition(
    a: &Pattern,
    c: &Pattern,
    f: &Pattern,
    added_edges: &[(usize, usize)],
) -> Result<bool> {
    if !is_sfo(a, c, f)?.verdict {
        return Err(Error::NotSfo);
    }
    let xf = functional_states(f);
    let mut c2 = c.clone();
    for &(state, row) in added_edges {
        if !xf.contains(&state) {
            return Err(Error::EdgeOutsideFunctionalSet { state });
        }
        c2.insert(row, state)?;
    }
    Ok(is_sfo(a, &c2, f)?.verdict)
}
