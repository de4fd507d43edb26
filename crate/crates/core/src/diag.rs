//! Generic diagonalizability of a square pattern.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinat::{max_matching, scc};
use crate::error::{Error, Result};
use crate::grank::{cycle_cover, grank};
use crate::model::{pattern_bigraph, state_digraph, Matching, Pattern};

/// Structural shortcut that settles the verdict without a matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FastPath {
    /// Every state has a self-loop: diagonalizable.
    AllSelfLoops,
    /// `A[i,j] != 0` iff `A[j,i] != 0`: diagonalizable.
    StructurallySymmetric,
    /// Nonzero and acyclic: not diagonalizable.
    AcyclicNonzero,
    General,
}

impl FastPath {
    /// Verdict implied by the shortcut, if any.
    pub fn implied_verdict(self) -> Option<bool> {
        match self {
            FastPath::AllSelfLoops | FastPath::StructurallySymmetric => Some(true),
            FastPath::AcyclicNonzero => Some(false),
            FastPath::General => None,
        }
    }
}

/// Connected piece of the graph spanned by the real edges of a matching:
/// state lists are 1-based and follow edge direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "states", rename_all = "lowercase")]
pub enum Piece {
    Cycle(Vec<usize>),
    Path(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagReport {
    pub verdict: bool,
    pub n: usize,
    pub grank_a: usize,
    pub v_a: usize,
    pub mwmm_weight: u64,
    /// Minimum-weight maximum matching of the loop-augmented bigraph.
    pub certificate: Matching,
    /// Cycles of the certificate once its unit-cost loops are removed.
    /// The certificate is perfect, so no paths occur here.
    pub decomposition: Vec<Piece>,
    /// Cycles and paths of a plain maximum matching of `B(A)`.
    pub max_matching_pieces: Vec<Piece>,
    pub fast_path: FastPath,
}

impl DiagReport {
    /// True when the certificate, stripped of its unit-cost loops, is a
    /// maximum matching of `B(A)` made of cycles only.
    pub fn certificate_is_cycles_only(&self) -> bool {
        let real = self.certificate.edges().iter().filter(|e| e.cost == 0).count();
        real == self.grank_a && self.decomposition.iter().all(|p| matches!(p, Piece::Cycle(_)))
    }
}

/// Decides whether almost all realizations of `a` are diagonalizable, i.e.
/// whether `grank A == v(A)`.
pub fn is_generically_diagonalizable(a: &Pattern) -> Result<DiagReport> {
    let cover = cycle_cover(a)?;
    let n = a.rows();
    let grank_a = grank(a);
    let decomposition = decompose(n, &cover.certificate);
    let max_matching_pieces = decompose(n, &max_matching(&pattern_bigraph(a)));
    Ok(DiagReport {
        verdict: grank_a == cover.value,
        n,
        grank_a,
        v_a: cover.value,
        mwmm_weight: cover.weight,
        certificate: cover.certificate,
        decomposition,
        max_matching_pieces,
        fast_path: fast_path(a),
    })
}

/// Splits the zero-cost edges of a matching on `n` states into directed
/// cycles and maximal paths.
pub fn decompose(n: usize, m: &Matching) -> Vec<Piece> {
    let mut succ = vec![None; n];
    let mut pred = vec![None; n];
    for e in m.edges().iter().filter(|e| e.cost == 0) {
        succ[e.right] = Some(e.left);
        pred[e.left] = Some(e.right);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    // Paths start at states without a predecessor.
    for start in 0..n {
        if pred[start].is_some() || succ[start].is_none() {
            continue;
        }
        let mut states = Vec::new();
        let mut v = Some(start);
        while let Some(x) = v {
            seen[x] = true;
            states.push(x + 1);
            v = succ[x];
        }
        out.push(Piece::Path(states));
    }
    for start in 0..n {
        if seen[start] || succ[start].is_none() {
            continue;
        }
        let mut states = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            states.push(x + 1);
            x = succ[x].expect("every vertex left is on a cycle");
        }
        out.push(Piece::Cycle(states));
    }
    out
}

fn fast_path(a: &Pattern) -> FastPath {
    let n = a.rows();
    if (1..=n).all(|i| a.contains(i, i)) {
        return FastPath::AllSelfLoops;
    }
    if a.entries().all(|(i, j)| a.contains(j, i)) {
        return FastPath::StructurallySymmetric;
    }
    let g = state_digraph(a);
    let acyclic = scc(&g).iter().all(|c| c.len() == 1) && (0..n).all(|v| !g.has_edge(v, v));
    if acyclic && !a.is_zero() {
        return FastPath::AcyclicNonzero;
    }
    FastPath::General
}

/// SCCs of `G(A)` as 1-based state lists, in reverse topological order.
/// Position `k` in the list is SCC id `k + 1`.
pub fn state_sccs(a: &Pattern) -> Vec<Vec<usize>> {
    scc(&state_digraph(a))
        .into_iter()
        .map(|c| c.into_iter().map(|v| v + 1).collect())
        .collect()
}

/// Diagonalizability of the subpattern induced by the union of the chosen
/// SCCs. Ids refer to [`state_sccs`] and are 1-based.
pub fn scc_induced_diagonalizable(a: &Pattern, subset: &BTreeSet<usize>) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::dim("scc_induced_diagonalizable", "A must be square"));
    }
    let sccs = state_sccs(a);
    let mut keep = Vec::new();
    for &k in subset {
        if k == 0 || k > sccs.len() {
            return Err(Error::IndexOutOfRange {
                what: "SCC",
                index: k,
                bound: sccs.len(),
            });
        }
        keep.extend_from_slice(&sccs[k - 1]);
    }
    keep.sort_unstable();
    let sub = a.principal_submatrix(&keep);
    Ok(is_generically_diagonalizable(&sub)?.verdict)
}
