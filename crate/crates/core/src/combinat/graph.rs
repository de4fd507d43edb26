use std::collections::BTreeSet;

use crate::model::Digraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Vertices reachable from the seeds.
    Forward,
    /// Vertices that reach a seed.
    Backward,
}

/// Strongly connected components by Tarjan's algorithm, iterative.
///
/// Components are emitted in reverse topological order of the condensation:
/// a component comes before every component that has an edge into it. Each
/// component lists its vertex ids in increasing order.
pub fn scc(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    // Call frames hold (vertex, next successor position).
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = frames.last_mut() {
            let v = top.0;
            let succ = g.successors(v);
            if top.1 < succ.len() {
                let w = succ[top.1];
                top.1 += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}

/// Seeds plus everything joined to them by a directed path.
pub fn reachable(g: &Digraph, seeds: &BTreeSet<usize>, direction: Direction) -> BTreeSet<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut todo: Vec<usize> = seeds.iter().copied().collect();
    for &s in &todo {
        seen[s] = true;
    }
    while let Some(v) = todo.pop() {
        let next = match direction {
            Direction::Forward => g.successors(v),
            Direction::Backward => g.predecessors(v),
        };
        for &w in next {
            if !seen[w] {
                seen[w] = true;
                todo.push(w);
            }
        }
    }
    (0..seen.len()).filter(|&v| seen[v]).collect()
}
