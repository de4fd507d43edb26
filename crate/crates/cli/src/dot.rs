//! Graphviz output. Functional states are filled blue, inputs are gold
//! boxes, sensors green boxes. Certificate edges are drawn bold red.

use std::collections::BTreeSet;
use std::fmt::Write;

use anyhow::Result;
use gendiag::diag::{is_generically_diagonalizable, Piece};
use gendiag::grank::{linking, LinkingNetwork};
use gendiag::model::{Pattern, SystemPattern, VertexClass};
use gendiag::sfo::functional_states;
use gendiag::soc::input_reachable_restriction;

const HIGHLIGHT: &str = " [color=red, penwidth=2.5]";

fn state_node(out: &mut String, id: &str, label: &str, functional: bool) {
    let fill = if functional {
        ", style=filled, fillcolor=lightblue"
    } else {
        ""
    };
    writeln!(out, "  {id} [label=\"{label}\"{fill}];").unwrap();
}

fn input_node(out: &mut String, id: &str, label: &str) {
    writeln!(
        out,
        "  {id} [label=\"{label}\", shape=box, style=filled, fillcolor=gold];"
    )
    .unwrap();
}

fn output_node(out: &mut String, id: &str, label: &str) {
    writeln!(
        out,
        "  {id} [label=\"{label}\", shape=box, style=filled, fillcolor=palegreen];"
    )
    .unwrap();
}

fn edge(out: &mut String, tail: &str, head: &str, bold: bool) {
    writeln!(out, "  {tail} -> {head}{};", if bold { HIGHLIGHT } else { "" }).unwrap();
}

/// `G(A, B, C)` with the cycles of the diagonalizability certificate
/// highlighted.
pub fn system(sys: &SystemPattern) -> Result<String> {
    let xf = functional_states(sys.f());
    let report = is_generically_diagonalizable(sys.a())?;
    let mut cycle_edges = BTreeSet::new();
    for piece in &report.decomposition {
        if let Piece::Cycle(states) = piece {
            for (k, &tail) in states.iter().enumerate() {
                cycle_edges.insert((tail, states[(k + 1) % states.len()]));
            }
        }
    }
    let mut out = String::from("digraph system {\n  rankdir=LR;\n");
    for i in 1..=sys.n() {
        state_node(&mut out, &format!("x{i}"), &format!("x{i}"), xf.contains(&i));
    }
    for j in 1..=sys.m() {
        input_node(&mut out, &format!("u{j}"), &format!("u{j}"));
    }
    for k in 1..=sys.p() {
        output_node(&mut out, &format!("y{k}"), &format!("y{k}"));
    }
    for (head, tail) in sys.a().entries() {
        edge(
            &mut out,
            &format!("x{tail}"),
            &format!("x{head}"),
            cycle_edges.contains(&(tail, head)),
        );
    }
    for (head, tail) in sys.b().entries() {
        edge(&mut out, &format!("u{tail}"), &format!("x{head}"), false);
    }
    for (head, tail) in sys.c().entries() {
        edge(&mut out, &format!("x{tail}"), &format!("y{head}"), false);
    }
    out.push_str("}\n");
    Ok(out)
}

/// Layered graph of `(A_r, B, C)`: sources `X^2 ∪ U^2`, middle `X^1`,
/// sinks `Y^0`, with a maximum linking highlighted.
pub fn linking_graph(sys: &SystemPattern) -> Result<String> {
    let a_r = input_reachable_restriction(sys.a(), sys.b())?;
    let paths = linking(&a_r, sys.b(), sys.c())?;
    let label = |class: VertexClass, i: usize| match class {
        VertexClass::State => format!("x{i}_2"),
        VertexClass::Input => format!("u{i}"),
        VertexClass::Output => format!("y{i}"),
    };
    let first: BTreeSet<(String, usize)> = paths
        .iter()
        .map(|p| (label(p.source.class, p.source.index), p.middle))
        .collect();
    let second: BTreeSet<(usize, usize)> = paths.iter().map(|p| (p.middle, p.output)).collect();
    layered(
        "linking",
        sys.n(),
        &a_r,
        sys.b(),
        sys.c(),
        |src, mid| first.contains(&(src.to_string(), mid)),
        |mid, y| second.contains(&(mid, y)),
        |_, _| false,
    )
}

/// The actuator-placement network of `(A, C)`: every state may get a
/// dedicated candidate input (dotted, unit cost), and the min-cost max-flow
/// is highlighted. Split vertices are drawn as one node.
pub fn flow_graph(sys: &SystemPattern) -> Result<String> {
    let n = sys.n();
    let id = Pattern::identity(n);
    let ln = LinkingNetwork::build(sys.a(), &id, sys.c(), 1)?;
    let flow = ln.solve();
    let mut first = BTreeSet::new();
    for &(arc, src, mid) in &ln.first_layer {
        if flow.arc_flow[arc] == 1 {
            let name = match src.class {
                VertexClass::Input => format!("u{}", src.index),
                _ => format!("x{}_2", src.index),
            };
            first.insert((name, mid));
        }
    }
    let second: BTreeSet<(usize, usize)> = ln
        .second_layer
        .iter()
        .filter(|&&(arc, _, _)| flow.arc_flow[arc] == 1)
        .map(|&(_, mid, y)| (mid, y))
        .collect();
    layered(
        "flow",
        n,
        sys.a(),
        &id,
        sys.c(),
        |src, mid| first.contains(&(src.to_string(), mid)),
        |mid, y| second.contains(&(mid, y)),
        |src, _| src.starts_with('u'),
    )
}

#[allow(clippy::too_many_arguments)]
fn layered(
    name: &str,
    n: usize,
    a: &Pattern,
    b: &Pattern,
    c: &Pattern,
    first_bold: impl Fn(&str, usize) -> bool,
    second_bold: impl Fn(usize, usize) -> bool,
    dotted: impl Fn(&str, usize) -> bool,
) -> Result<String> {
    let mut out = format!("digraph {name} {{\n  rankdir=LR;\n");
    for i in 1..=n {
        state_node(&mut out, &format!("x{i}_2"), &format!("x{i}²"), false);
    }
    for j in 1..=b.cols() {
        input_node(&mut out, &format!("u{j}"), &format!("u{j}"));
    }
    for i in 1..=n {
        state_node(&mut out, &format!("x{i}_1"), &format!("x{i}¹"), false);
    }
    for k in 1..=c.rows() {
        output_node(&mut out, &format!("y{k}"), &format!("y{k}⁰"));
    }
    let arc = |out: &mut String, tail: String, head: usize| {
        let bold = first_bold(&tail, head);
        let style = match (bold, dotted(&tail, head)) {
            (true, true) => " [color=red, penwidth=2.5, style=dotted]",
            (true, false) => HIGHLIGHT,
            (false, true) => " [color=red, style=dotted]",
            (false, false) => "",
        };
        writeln!(out, "  {tail} -> x{head}_1{style};").unwrap();
    };
    for (head, tail) in a.entries() {
        arc(&mut out, format!("x{tail}_2"), head);
    }
    for (head, tail) in b.entries() {
        arc(&mut out, format!("u{tail}"), head);
    }
    for (y, mid) in c.entries() {
        edge(&mut out, &format!("x{mid}_1"), &format!("y{y}"), second_bold(mid, y));
    }
    out.push_str("}\n");
    Ok(out)
}
