use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

/// Directed arc with integral capacity and non-negative cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: u64,
    pub cost: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    /// # Panics
    /// When `source == sink` or either is out of range.
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes, "terminal out of range");
        assert_ne!(source, sink, "source and sink must differ");
        Self {
            nodes,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    /// Appends an arc and returns its index.
    ///
    /// # Panics
    /// When an endpoint is out of range.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: u64, cost: u64) -> usize {
        assert!(tail < self.nodes && head < self.nodes, "arc endpoint out of range");
        self.arcs.push(Arc {
            tail,
            head,
            capacity,
            cost,
        });
        self.arcs.len() - 1
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flow {
    pub arc_flow: Vec<u64>,
    pub value: u64,
    pub cost: u64,
}

impl Flow {
    /// Checks capacity bounds, conservation and the value/cost totals.
    pub fn is_feasible(&self, net: &FlowNetwork) -> bool {
        if self.arc_flow.len() != net.arcs.len() {
            return false;
        }
        let mut balance = vec![0i128; net.nodes];
        let mut cost = 0u64;
        for (a, &f) in net.arcs.iter().zip(&self.arc_flow) {
            if f > a.capacity {
                return false;
            }
            balance[a.tail] -= f as i128;
            balance[a.head] += f as i128;
            cost += f * a.cost;
        }
        (0..net.nodes)
            .filter(|&v| v != net.source && v != net.sink)
            .all(|v| balance[v] == 0)
            && balance[net.sink] == self.value as i128
            && cost == self.cost
    }
}

/// Minimum-cost maximum flow by successive shortest paths.
///
/// Dijkstra runs on reduced costs; all input costs are non-negative, so the
/// zero potential is feasible at the start. Among equal-distance labels the
/// smaller node id is settled first and a label is only replaced on strict
/// improvement, which makes the augmenting sequence deterministic.
pub fn min_cost_max_flow(net: &FlowNetwork) -> Flow {
    let n = net.nodes;
    // Residual arcs: 2k is forward, 2k+1 its reverse.
    let mut head = Vec::with_capacity(2 * net.arcs.len());
    let mut cap = Vec::with_capacity(2 * net.arcs.len());
    let mut cost = Vec::with_capacity(2 * net.arcs.len());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &net.arcs {
        adj[a.tail].push(head.len());
        head.push(a.head);
        cap.push(a.capacity);
        cost.push(a.cost as i64);
        adj[a.head].push(head.len());
        head.push(a.tail);
        cap.push(0);
        cost.push(-(a.cost as i64));
    }

    let mut potential = vec![0i64; n];
    let mut value = 0u64;
    let (s, t) = (net.source, net.sink);
    loop {
        let mut dist = vec![i64::MAX; n];
        let mut via: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[s] = 0;
        heap.push(Reverse((0i64, s)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            for &e in &adj[v] {
                if cap[e] == 0 {
                    continue;
                }
                let w = head[e];
                let nd = d + cost[e] + potential[v] - potential[w];
                if nd < dist[w] {
                    dist[w] = nd;
                    via[w] = Some(e);
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        if dist[t] == i64::MAX {
            break;
        }
        for v in 0..n {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = u64::MAX;
        let mut v = t;
        while let Some(e) = via[v] {
            push = push.min(cap[e]);
            v = head[e ^ 1];
        }
        let mut v = t;
        while let Some(e) = via[v] {
            cap[e] -= push;
            cap[e ^ 1] += push;
            v = head[e ^ 1];
        }
        value += push;
    }

    let arc_flow: Vec<u64> = (0..net.arcs.len()).map(|k| cap[2 * k + 1]).collect();
    let total = net.arcs.iter().zip(&arc_flow).map(|(a, &f)| a.cost * f).sum();
    Flow {
        arc_flow,
        value,
        cost: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 1, 1, 0);
        let f = min_cost_max_flow(&net);
        assert_eq!((f.value, f.cost), (1, 0));
        assert!(f.is_feasible(&net));
    }

    #[test]
    fn diamond_saturates_both_paths() {
        let mut net = FlowNetwork::new(4, 0, 3);
        net.add_arc(0, 1, 1, 1);
        net.add_arc(1, 3, 1, 0);
        net.add_arc(0, 2, 1, 0);
        net.add_arc(2, 3, 1, 0);
        let f = min_cost_max_flow(&net);
        assert_eq!((f.value, f.cost), (2, 1));
    }

    #[test]
    fn reroutes_through_reverse_arc() {
        // Greedy first path s-a-b-t blocks both others; max flow is 2.
        let mut net = FlowNetwork::new(4, 0, 3);
        net.add_arc(0, 1, 1, 0);
        net.add_arc(1, 2, 1, 0);
        net.add_arc(2, 3, 1, 0);
        net.add_arc(0, 2, 1, 5);
        net.add_arc(1, 3, 1, 5);
        let f = min_cost_max_flow(&net);
        assert_eq!((f.value, f.cost), (2, 10));
        assert_eq!(f.arc_flow[1], 0);
        assert!(f.is_feasible(&net));
    }

    #[test]
    fn prefers_cheap_among_maximum() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_arc(0, 1, 2, 3);
        net.add_arc(1, 2, 1, 0);
        net.add_arc(0, 2, 1, 9);
        let f = min_cost_max_flow(&net);
        assert_eq!((f.value, f.cost), (2, 12));
    }
}
