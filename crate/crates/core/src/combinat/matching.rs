use std::collections::VecDeque;

use super::flow::{min_cost_max_flow, FlowNetwork};
use crate::model::{BiEdge, Bigraph, Matching};

/// Which extremum of the total cost to seek among maximum matchings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Maximum-cardinality matching by Hopcroft-Karp.
///
/// Right vertices are processed in index order and their edges in left
/// index order, so the result is a function of the input alone.
pub fn max_matching(g: &Bigraph) -> Matching {
    let (nl, nr) = (g.left_size(), g.right_size());
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); nr];
    for e in g.edges() {
        adj[e.right].push((e.left, e.cost));
    }
    const FREE: usize = usize::MAX;
    let mut mate_r = vec![FREE; nr];
    let mut mate_l = vec![FREE; nl];
    let mut dist = vec![0usize; nr];

    loop {
        // BFS layers from free right vertices.
        let mut queue = VecDeque::new();
        for r in 0..nr {
            if mate_r[r] == FREE {
                dist[r] = 0;
                queue.push_back(r);
            } else {
                dist[r] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(r) = queue.pop_front() {
            for &(l, _) in &adj[r] {
                let r2 = mate_l[l];
                if r2 == FREE {
                    found = true;
                } else if dist[r2] == usize::MAX {
                    dist[r2] = dist[r] + 1;
                    queue.push_back(r2);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; nr];
        for r in 0..nr {
            if mate_r[r] == FREE {
                augment(r, &adj, &mut mate_r, &mut mate_l, &mut dist, &mut next);
            }
        }
    }

    let edges = (0..nr)
        .filter(|&r| mate_r[r] != FREE)
        .map(|r| BiEdge {
            right: r,
            left: mate_r[r],
            cost: g.cost(r, mate_r[r]).expect("matched edge exists"),
        })
        .collect();
    Matching::new(edges).expect("augmenting paths keep endpoints disjoint")
}

/// Layered DFS with an explicit stack.
fn augment(
    root: usize,
    adj: &[Vec<(usize, u64)>],
    mate_r: &mut [usize],
    mate_l: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    const FREE: usize = usize::MAX;
    let mut path: Vec<usize> = vec![root];
    while let Some(&r) = path.last() {
        if next[r] == adj[r].len() {
            dist[r] = usize::MAX;
            path.pop();
            continue;
        }
        let l = adj[r][next[r]].0;
        next[r] += 1;
        let r2 = mate_l[l];
        if r2 == FREE {
            // Flip the path: every right vertex on it takes the left vertex
            // it was just exploring.
            let mut l_cur = l;
            for &rv in path.iter().rev() {
                let prev = mate_r[rv];
                mate_r[rv] = l_cur;
                mate_l[l_cur] = rv;
                l_cur = prev;
            }
            return true;
        }
        if dist[r2] == dist[r] + 1 {
            path.push(r2);
        }
    }
    false
}

/// Maximum-cardinality matching whose total cost is extremal among all
/// maximum matchings.
///
/// Solved as a single min-cost max-flow. Because successive shortest paths
/// reaches the maximum flow value before it stops, cardinality always
/// dominates cost and no bonus term is needed. Maximization flips each cost
/// to `cmax - c`; every maximum matching has the same size `k`, so its
/// flipped cost is `k * cmax - w`.
pub fn extremal_weight_max_matching(g: &Bigraph, sense: Sense) -> Matching {
    let (nl, nr) = (g.left_size(), g.right_size());
    let cmax = g.edges().map(|e| e.cost).max().unwrap_or(0);
    let source = nr + nl;
    let sink = source + 1;
    let mut net = FlowNetwork::new(nr + nl + 2, source, sink);
    for r in 0..nr {
        net.add_arc(source, r, 1, 0);
    }
    let edges: Vec<BiEdge> = g.edges().collect();
    let mut arc_of_edge = Vec::with_capacity(edges.len());
    for e in &edges {
        let c = match sense {
            Sense::Minimize => e.cost,
            Sense::Maximize => cmax - e.cost,
        };
        arc_of_edge.push(net.add_arc(e.right, nr + e.left, 1, c));
    }
    for l in 0..nl {
        net.add_arc(nr + l, sink, 1, 0);
    }
    let flow = min_cost_max_flow(&net);
    let chosen = edges
        .iter()
        .zip(&arc_of_edge)
        .filter(|(_, &a)| flow.arc_flow[a] == 1)
        .map(|(e, _)| *e)
        .collect();
    Matching::new(chosen).expect("unit capacities keep endpoints disjoint")
}
