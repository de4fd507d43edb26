use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diag::{is_generically_diagonalizable, state_sccs};
use crate::error::{Error, Result};
use crate::grank::{grank, linking_size, LinkPath, LinkingNetwork};
use crate::model::Pattern;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccConnection {
    /// 1-based position in [`state_sccs`].
    pub scc: usize,
    pub state: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActuatorPlacement {
    pub b_out: Pattern,
    pub m_star: usize,
    /// States fed by their own candidate input in the optimal flow.
    pub x_f1: BTreeSet<usize>,
    /// States whose source copy carries flow.
    pub x_f2: BTreeSet<usize>,
    pub scc_connections: Vec<SccConnection>,
    /// `max{1, p - grank CA}`.
    pub lower_bound: usize,
    pub flow_value: u64,
    pub flow_cost: u64,
    /// The optimal flow decoded into paths.
    pub paths: Vec<LinkPath>,
}

/// Minimum actuators for SOC when `A` is generically diagonalizable and
/// `C` has full generic row rank.
///
/// A min-cost max-flow through the split layered graph of `(A, I_n, C)`,
/// with unit cost on every candidate-input arc, picks the states that need
/// a dedicated actuator. Each SCC of `G(A)` holding a state-sourced path is
/// then wired to column 1 through its smallest-index state.
pub fn min_actuators_diag(a: &Pattern, c: &Pattern) -> Result<ActuatorPlacement> {
    if !a.is_square() {
        return Err(Error::dim("A", "A must be square"));
    }
    let n = a.rows();
    if c.cols() != n {
        return Err(Error::dim("C", format!("expected {n} columns, got {}", c.cols())));
    }
    let p = c.rows();
    if p == 0 {
        return Err(Error::NoOutputs);
    }
    if !is_generically_diagonalizable(a)?.verdict {
        return Err(Error::NotDiagonalizable);
    }
    let grank_c = grank(c);
    if grank_c < p {
        return Err(Error::RankDeficientOutput { grank: grank_c, p });
    }
    let ln = LinkingNetwork::build(a, &Pattern::identity(n), c, 1)?;
    let flow = ln.solve();
    let x_f1: BTreeSet<usize> = (0..n)
        .filter(|&i| flow.arc_flow[ln.input_source_arc[i]] == 1)
        .map(|i| i + 1)
        .collect();
    let x_f2: BTreeSet<usize> = (0..n)
        .filter(|&i| flow.arc_flow[ln.state_source_arc[i]] == 1)
        .map(|i| i + 1)
        .collect();
    let m_star = x_f1.len().max(1);
    let mut b = Pattern::zeros(n, m_star);
    for (k, &j) in x_f1.iter().enumerate() {
        b.insert(j, k + 1)?;
    }
    let mut scc_connections = Vec::new();
    for (k, comp) in state_sccs(a).iter().enumerate() {
        if comp.iter().any(|x| x_f2.contains(x)) {
            let state = comp[0];
            b.insert(state, 1)?;
            scc_connections.push(SccConnection {
                scc: k + 1,
                state,
                column: 1,
            });
        }
    }
    let ca = grank_product(c, a)?;
    Ok(ActuatorPlacement {
        b_out: b,
        m_star,
        x_f1,
        x_f2,
        scc_connections,
        lower_bound: p.saturating_sub(ca).max(1),
        flow_value: flow.value,
        flow_cost: flow.cost,
        paths: ln.paths(&flow),
    })
}

/// Generic rank of the product `C A` with `C` and `A` independent, equal
/// to the largest linking from `X^2` to `Y^0`.
///
/// This is generally smaller than the generic rank of the product's
/// pattern: when two columns of `A` are free only in the same row, `CA`
/// has rank one whatever its pattern looks like.
pub fn grank_product(c: &Pattern, a: &Pattern) -> Result<usize> {
    linking_size(a, &Pattern::zeros(a.rows(), 0), c)
}
