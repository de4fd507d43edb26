use serde::{Deserialize, Serialize};

use crate::combinat::{min_cost_max_flow, Flow, FlowNetwork};
use crate::error::{Error, Result};
use crate::model::{Pattern, Vertex, VertexClass};

/// One path `source -> x_mid^1 -> y_out` of a linking in the layered graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkPath {
    /// A state (`x_i^2`) or an input (`u_i`).
    pub source: Vertex,
    pub middle: usize,
    pub output: usize,
}

/// Node-split flow network of the layered graph built from `(A, B, C)`:
/// sources `X^2 ∪ U^2`, middle layer `X^1`, sinks `Y^0`. Every vertex has
/// an in-copy and an out-copy joined by a unit arc.
#[derive(Clone, Debug)]
pub struct LinkingNetwork {
    pub net: FlowNetwork,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    /// Split arc of `x_i^2`.
    pub state_source_arc: Vec<usize>,
    /// Split arc of `u_i`.
    pub input_source_arc: Vec<usize>,
    /// Split arc of `x_i^1`.
    pub middle_arc: Vec<usize>,
    /// `(arc, source vertex, middle index)` for every first-layer edge.
    pub first_layer: Vec<(usize, Vertex, usize)>,
    /// `(arc, middle index, output index)` for every second-layer edge.
    pub second_layer: Vec<(usize, usize, usize)>,
}

impl LinkingNetwork {
    /// `a` is `n x n`, `b` is `n x m`, `c` is `p x n`. `input_cost` puts a
    /// cost on each first-layer arc leaving an input.
    pub fn build(a: &Pattern, b: &Pattern, c: &Pattern, input_cost: u64) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.rows() != n || c.cols() != n {
            return Err(Error::dim(
                "linking",
                format!(
                    "A is {}x{}, B is {}x{}, C is {}x{}",
                    a.rows(),
                    a.cols(),
                    b.rows(),
                    b.cols(),
                    c.rows(),
                    c.cols()
                ),
            ));
        }
        let (m, p) = (b.cols(), c.rows());
        // Node layout: [x2 in/out | u in/out | x1 in/out | y in/out | s | t].
        let x2 = |i: usize, out: bool| 2 * i + out as usize;
        let u = |i: usize, out: bool| 2 * (n + i) + out as usize;
        let x1 = |i: usize, out: bool| 2 * (n + m + i) + out as usize;
        let y = |j: usize, out: bool| 2 * (2 * n + m + j) + out as usize;
        let s = 2 * (2 * n + m + p);
        let t = s + 1;
        let mut net = FlowNetwork::new(t + 1, s, t);

        let mut state_source_arc = Vec::with_capacity(n);
        for i in 0..n {
            net.add_arc(s, x2(i, false), 1, 0);
            state_source_arc.push(net.add_arc(x2(i, false), x2(i, true), 1, 0));
        }
        let mut input_source_arc = Vec::with_capacity(m);
        for i in 0..m {
            net.add_arc(s, u(i, false), 1, 0);
            input_source_arc.push(net.add_arc(u(i, false), u(i, true), 1, 0));
        }
        let middle_arc: Vec<usize> = (0..n).map(|i| net.add_arc(x1(i, false), x1(i, true), 1, 0)).collect();
        for j in 0..p {
            net.add_arc(y(j, false), y(j, true), 1, 0);
            net.add_arc(y(j, true), t, 1, 0);
        }
        let mut first_layer = Vec::new();
        for (head, tail) in a.entries() {
            let arc = net.add_arc(x2(tail - 1, true), x1(head - 1, false), 1, 0);
            let src = Vertex {
                class: VertexClass::State,
                index: tail,
            };
            first_layer.push((arc, src, head));
        }
        for (head, tail) in b.entries() {
            let arc = net.add_arc(u(tail - 1, true), x1(head - 1, false), 1, input_cost);
            let src = Vertex {
                class: VertexClass::Input,
                index: tail,
            };
            first_layer.push((arc, src, head));
        }
        let mut second_layer = Vec::new();
        for (j, i) in c.entries() {
            let arc = net.add_arc(x1(i - 1, true), y(j - 1, false), 1, 0);
            second_layer.push((arc, i, j));
        }
        Ok(Self {
            net,
            n,
            m,
            p,
            state_source_arc,
            input_source_arc,
            middle_arc,
            first_layer,
            second_layer,
        })
    }

    /// Min-cost max-flow on the network.
    pub fn solve(&self) -> Flow {
        min_cost_max_flow(&self.net)
    }

    /// Decodes an integral flow into vertex-disjoint paths, ordered by
    /// middle vertex.
    pub fn paths(&self, flow: &Flow) -> Vec<LinkPath> {
        let mut into_middle = vec![None; self.n + 1];
        for &(arc, src, mid) in &self.first_layer {
            if flow.arc_flow[arc] == 1 {
                into_middle[mid] = Some(src);
            }
        }
        let mut out: Vec<LinkPath> = self
            .second_layer
            .iter()
            .filter(|&&(arc, _, _)| flow.arc_flow[arc] == 1)
            .map(|&(_, mid, output)| LinkPath {
                source: into_middle[mid].expect("flow is conserved at the middle layer"),
                middle: mid,
                output,
            })
            .collect();
        out.sort_by_key(|p| p.middle);
        out
    }
}

/// Maximum linking from `X^2 ∪ U^2` to `Y^0` in the layered graph of
/// `(A_r, B, C)`.
pub fn linking(a_r: &Pattern, b: &Pattern, c: &Pattern) -> Result<Vec<LinkPath>> {
    let ln = LinkingNetwork::build(a_r, b, c, 0)?;
    let flow = ln.solve();
    Ok(ln.paths(&flow))
}

/// Size of the maximum linking, equal to `grank C [A_r, B]`.
pub fn linking_size(a_r: &Pattern, b: &Pattern, c: &Pattern) -> Result<usize> {
    Ok(linking(a_r, b, c)?.len())
}
