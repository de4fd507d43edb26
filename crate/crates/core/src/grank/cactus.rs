use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinat::{extremal_weight_max_matching, reachable, Direction, Sense};
use crate::error::{Error, Result};
use crate::model::{system_digraph, BiEdge, Bigraph, Matching, Pattern, SystemPattern};

/// Largest output cactus configuration of `G(A, C)`.
///
/// `size` is `d(G(A, C))`, the generic rank of the observability matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusReport {
    pub size: usize,
    pub stems: usize,
    /// Total weight of the certificate, `(q + 1) * size - stems`.
    pub weight: u64,
    /// The cost parameter used in the auxiliary graph.
    pub q: u64,
    pub n: usize,
    pub p: usize,
    /// Perfect matching of the auxiliary graph on `X ∪ Y`; vertex `k < n` is
    /// `x_{k+1}`, vertex `n + j` is `y_{j+1}`.
    pub certificate: Matching,
}

impl CactusReport {
    /// `(state, output)` pairs, 1-based, for each stem end `x_i -> y_j`.
    pub fn stem_ends(&self) -> Vec<(usize, usize)> {
        self.certificate
            .edges()
            .iter()
            .filter(|e| e.right < self.n && e.left >= self.n)
            .map(|e| (e.right + 1, e.left - self.n + 1))
            .collect()
    }

    /// Each stem as its states from root to tip (1-based), followed by the
    /// output index it ends in.
    pub fn stem_paths(&self) -> Vec<(Vec<usize>, usize)> {
        let n = self.n;
        let next = self.certificate.right_to_left(n + self.p);
        let prev = self.certificate.left_to_right(n + self.p);
        let mut out = Vec::new();
        for (tip, y) in self.stem_ends() {
            let mut chain = vec![tip];
            let mut v = tip - 1;
            // Walk back along state edges until the return edge from y.
            while let Some(u) = prev[v] {
                if u >= n || u == v {
                    break;
                }
                chain.push(u + 1);
                v = u;
            }
            chain.reverse();
            debug_assert_eq!(next[tip - 1], Some(n + y - 1));
            out.push((chain, y));
        }
        out
    }

    /// States covered by the configuration (stems plus output-reachable
    /// cycles), 1-based.
    pub fn covered_states(&self) -> BTreeSet<usize> {
        self.certificate
            .edges()
            .iter()
            .filter(|e| self.counts(e))
            .map(|e| e.right + 1)
            .collect()
    }

    fn counts(&self, e: &BiEdge) -> bool {
        e.right < self.n
            && if e.left < self.n {
                e.cost == self.q + 1
            } else {
                e.cost == self.q
            }
    }
}

/// Output-reachable states of `G(A, C)`, 1-based.
pub fn output_reachable(a: &Pattern, c: &Pattern) -> Result<BTreeSet<usize>> {
    let sys = SystemPattern::new(a.clone(), None, Some(c.clone()), None)?;
    let g = system_digraph(&sys);
    let n = sys.n();
    let outputs: BTreeSet<usize> = (n..n + sys.p()).collect();
    Ok(reachable(&g, &outputs, Direction::Backward)
        .into_iter()
        .filter(|&v| v < n)
        .map(|v| v + 1)
        .collect())
}

/// Auxiliary weighted bigraph on `X ∪ Y` whose maximum-weight perfect
/// matchings encode maximum output cactus configurations.
///
/// Edges are the state edges, the state-output edges, a loop on every
/// vertex and a return edge from every output to every state. A state edge
/// whose head is output-reachable costs `q + 1`, a state-output edge costs
/// `q`, everything else costs 0.
pub fn cactus_bigraph(a: &Pattern, c: &Pattern, q: u64) -> Result<Bigraph> {
    let w = output_reachable(a, c)?;
    let n = a.rows();
    let p = c.rows();
    let mut g = Bigraph::new(n + p, n + p);
    for v in 0..n + p {
        g.set_edge(v, v, 0)?;
    }
    for j in 0..p {
        for i in 0..n {
            g.set_edge(n + j, i, 0)?;
        }
    }
    for (head, tail) in a.entries() {
        let cost = if w.contains(&head) { q + 1 } else { 0 };
        g.set_edge(tail - 1, head - 1, cost)?;
    }
    for (j, i) in c.entries() {
        g.set_edge(i - 1, n + j - 1, q)?;
    }
    Ok(g)
}

/// `d(G(A, C))` with its stem count and matching certificate.
pub fn cactus_size(a: &Pattern, c: &Pattern) -> Result<CactusReport> {
    cactus_size_with_q(a, c, c.rows() as u64)
}

/// Same as [`cactus_size`] with an explicit cost parameter. Any `q` no
/// smaller than the number of outputs gives the same `size`.
pub fn cactus_size_with_q(a: &Pattern, c: &Pattern, q: u64) -> Result<CactusReport> {
    if !a.is_square() {
        return Err(Error::dim("cactus_size", "A must be square"));
    }
    if c.cols() != a.rows() {
        return Err(Error::dim(
            "cactus_size",
            format!("C has {} columns, A has {} rows", c.cols(), a.rows()),
        ));
    }
    if (c.rows() as u64) > q {
        return Err(Error::Invalid(format!(
            "cost parameter {q} is below the output count {}",
            c.rows()
        )));
    }
    let n = a.rows();
    let p = c.rows();
    let g = cactus_bigraph(a, c, q)?;
    let m = extremal_weight_max_matching(&g, Sense::Maximize);
    debug_assert_eq!(m.size(), n + p);
    let mut size = 0;
    let mut stems = 0;
    for e in m.edges() {
        if e.right < n && e.left < n && e.cost == q + 1 {
            size += 1;
        } else if e.right < n && e.left >= n && e.cost == q {
            size += 1;
            stems += 1;
        }
    }
    Ok(CactusReport {
        size,
        stems,
        weight: m.weight(),
        q,
        n,
        p,
        certificate: m,
    })
}

/// `grank Q(A, B)`, the input cactus size, by transposition.
pub fn input_cactus_size(a: &Pattern, b: &Pattern) -> Result<usize> {
    if b.rows() != a.rows() {
        return Err(Error::dim(
            "input_cactus_size",
            format!("B has {} rows, A has {}", b.rows(), a.rows()),
        ));
    }
    Ok(cactus_size(&a.transpose(), &b.transpose())?.size)
}
