use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinat::{extremal_weight_max_matching, reachable, Direction, Sense};
use crate::diag::is_generically_diagonalizable;
use crate::error::{Error, Result};
use crate::grank::{cactus_size, grank, output_reachable, CactusReport};
use crate::model::{pattern_bigraph, state_digraph, Pattern};
use crate::sfo::functional_states;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensorMethod {
    Alg1,
    Alg2,
    Alg3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensorPlacement {
    pub c_out: Pattern,
    pub p_star: usize,
    pub method: SensorMethod,
    /// Functional states left unmatched (matching method only).
    pub x_f_unmatched: BTreeSet<usize>,
    /// Functional states matched on the right (matching method only).
    pub x_s: BTreeSet<usize>,
    /// True when `p_star` is provably the minimum over all output patterns;
    /// otherwise it is minimal among patterns supported on `X_F`.
    pub optimal: bool,
    /// `max{grank [A; I_XF] - grank A, 1}`. Tight for diagonalizable `A`.
    pub lower_bound: usize,
    /// Weight of the matching certificate, when one is used.
    pub matching_weight: Option<u64>,
    /// Stem-end states chosen by the cactus method, 1-based.
    pub stem_states: BTreeSet<usize>,
    /// Output stems `(states, sensor row)` of the cactus certificate.
    pub stems: Vec<(Vec<usize>, usize)>,
}

fn require_functional(f: &Pattern, n: usize) -> Result<BTreeSet<usize>> {
    if f.cols() != n {
        return Err(Error::dim("F", format!("expected {n} columns, got {}", f.cols())));
    }
    let xf = functional_states(f);
    if xf.is_empty() {
        return Err(Error::EmptyFunctionalSet);
    }
    Ok(xf)
}

fn lower_bound(a: &Pattern, xf: &BTreeSet<usize>) -> Result<usize> {
    let with = grank(&a.stack(&Pattern::selector(a.rows(), xf)?)?);
    Ok((with - grank(a)).max(1))
}

/// Minimum sensors for SFO when `A` is generically diagonalizable.
///
/// Uses a minimum-weight maximum matching of `B(A)` in which edges leaving
/// a functional state cost 1. Functional states left unmatched on the right
/// each get a dedicated row; every matched functional state is attached to
/// an existing row round-robin. With `minimize_links`, matched-state
/// entries are then dropped greedily while every matched functional state
/// stays output-reachable.
pub fn min_sensors_diag(a: &Pattern, f: &Pattern, minimize_links: bool) -> Result<SensorPlacement> {
    if !a.is_square() {
        return Err(Error::dim("A", "A must be square"));
    }
    let n = a.rows();
    let xf = require_functional(f, n)?;
    if !is_generically_diagonalizable(a)?.verdict {
        return Err(Error::NotDiagonalizable);
    }
    let mut g = pattern_bigraph(a);
    let weighted: Vec<_> = g.edges().filter(|e| xf.contains(&(e.right + 1))).collect();
    for e in weighted {
        g.set_edge(e.right, e.left, 1)?;
    }
    let m = extremal_weight_max_matching(&g, Sense::Minimize);
    let right_matched: BTreeSet<usize> = m.edges().iter().map(|e| e.right + 1).collect();
    let x_s: BTreeSet<usize> = xf.intersection(&right_matched).copied().collect();
    let x_u: BTreeSet<usize> = xf.difference(&x_s).copied().collect();
    let rows = x_u.len().max(1);
    let mut c = Pattern::zeros(rows, n);
    for (k, &i) in x_u.iter().enumerate() {
        c.insert(k + 1, i)?;
    }
    for (k, &i) in x_s.iter().enumerate() {
        c.insert(k % rows + 1, i)?;
    }
    if minimize_links {
        for &i in &x_s {
            let row = c.entries().find(|&(_, j)| j == i).map(|(r, _)| r);
            let Some(row) = row else { continue };
            c.remove(row, i);
            let reach = output_reachable(a, &c)?;
            if !x_s.is_subset(&reach) {
                c.insert(row, i)?;
            }
        }
    }
    let lb = lower_bound(a, &xf)?;
    debug_assert_eq!(lb, rows);
    Ok(SensorPlacement {
        c_out: c,
        p_star: rows,
        method: SensorMethod::Alg1,
        x_f_unmatched: x_u,
        x_s,
        optimal: true,
        lower_bound: lb,
        matching_weight: Some(m.weight()),
        stem_states: BTreeSet::new(),
        stems: Vec::new(),
    })
}

fn provably_optimal(a: &Pattern, xf: &BTreeSet<usize>) -> Result<bool> {
    Ok(xf.len() == a.rows() || is_generically_diagonalizable(a)?.verdict)
}

/// Appends the row `η` (free exactly on `X_F`) until adding `F` no longer
/// raises the cactus size. At most `|X_F|` rows are added.
pub fn min_sensors_iterative(a: &Pattern, f: &Pattern) -> Result<SensorPlacement> {
    if !a.is_square() {
        return Err(Error::dim("A", "A must be square"));
    }
    let n = a.rows();
    let xf = require_functional(f, n)?;
    let eta = Pattern::from_entries(1, n, xf.iter().map(|&i| (1, i)))?;
    let mut c = Pattern::zeros(0, n);
    while cactus_size(a, &c.stack(f)?)?.size > cactus_size(a, &c)?.size {
        c = c.stack(&eta)?;
        debug_assert!(c.rows() <= xf.len());
    }
    Ok(SensorPlacement {
        p_star: c.rows(),
        c_out: c,
        method: SensorMethod::Alg2,
        x_f_unmatched: BTreeSet::new(),
        x_s: BTreeSet::new(),
        optimal: provably_optimal(a, &xf)?,
        lower_bound: lower_bound(a, &xf)?,
        matching_weight: None,
        stem_states: BTreeSet::new(),
        stems: Vec::new(),
    })
}

/// One dedicated sensor per stem end of a maximum cactus configuration of
/// `G(A, I_XF)` with the fewest stems; functional states that cannot reach
/// any stem end are attached to row 1.
pub fn min_sensors_matching(a: &Pattern, f: &Pattern) -> Result<SensorPlacement> {
    if !a.is_square() {
        return Err(Error::dim("A", "A must be square"));
    }
    let n = a.rows();
    let xf = require_functional(f, n)?;
    let cactus: CactusReport = cactus_size(a, &Pattern::selector(n, &xf)?)?;
    let ends: BTreeSet<usize> = cactus.stem_ends().into_iter().map(|(x, _)| x).collect();
    let rows = ends.len().max(1);
    let mut c = Pattern::zeros(rows, n);
    for (k, &i) in ends.iter().enumerate() {
        c.insert(k + 1, i)?;
    }
    let g = state_digraph(a);
    let targets: BTreeSet<usize> = ends.iter().map(|&i| i - 1).collect();
    let reaches_end = reachable(&g, &targets, Direction::Backward);
    for &j in xf.difference(&ends) {
        if !reaches_end.contains(&(j - 1)) {
            c.insert(1, j)?;
        }
    }
    // Stems are reported against the rows of the emitted pattern.
    let row_of: Vec<usize> = {
        let mut v = vec![0; n + 1];
        for (k, &i) in ends.iter().enumerate() {
            v[i] = k + 1;
        }
        v
    };
    let stems = cactus
        .stem_paths()
        .into_iter()
        .map(|(states, _)| {
            let tip = *states.last().expect("stems are nonempty");
            (states, row_of[tip])
        })
        .collect();
    Ok(SensorPlacement {
        c_out: c,
        p_star: rows,
        method: SensorMethod::Alg3,
        x_f_unmatched: BTreeSet::new(),
        x_s: BTreeSet::new(),
        optimal: provably_optimal(a, &xf)?,
        lower_bound: lower_bound(a, &xf)?,
        matching_weight: Some(cactus.weight),
        stem_states: ends,
        stems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfo::is_sfo;

    fn counter_a() -> Pattern {
        Pattern::from_entries(4, 4, (1..=4).map(|i| (i, 4))).unwrap()
    }

    #[test]
    fn counter_needs_one_sensor() {
        let a = counter_a();
        let f = Pattern::unit_row(4, 1).unwrap();
        let p = min_sensors_diag(&a, &f, false).unwrap();
        assert_eq!(p.p_star, 1);
        assert_eq!(p.lower_bound, 1);
        assert!(is_sfo(&a, &p.c_out, &f).unwrap().verdict);
    }

    #[test]
    fn zero_dynamics_need_a_sensor_per_state() {
        let a = Pattern::zeros(3, 3);
        let f = Pattern::identity(3);
        for p in [
            min_sensors_diag(&a, &f, false).unwrap(),
            min_sensors_iterative(&a, &f).unwrap(),
            min_sensors_matching(&a, &f).unwrap(),
        ] {
            assert_eq!(p.p_star, 3, "{:?}", p.method);
            assert!(p.optimal);
            assert!(is_sfo(&a, &p.c_out, &f).unwrap().verdict);
        }
    }

    #[test]
    fn perfect_cycle_cover_needs_one() {
        let a = Pattern::from_entries(3, 3, [(2, 1), (3, 2), (1, 3)]).unwrap();
        let f = Pattern::identity(3);
        assert_eq!(min_sensors_diag(&a, &f, false).unwrap().p_star, 1);
        assert_eq!(min_sensors_matching(&a, &f).unwrap().p_star, 1);
    }

    #[test]
    fn single_state_single_sensor() {
        let a = Pattern::zeros(1, 1);
        let f = Pattern::unit_row(1, 1).unwrap();
        let p = min_sensors_matching(&a, &f).unwrap();
        assert_eq!(p.c_out, f);
        assert_eq!(p.stem_states, [1].into());
    }

    #[test]
    fn empty_functional_set_rejected() {
        let a = counter_a();
        let f = Pattern::zeros(1, 4);
        assert_eq!(min_sensors_diag(&a, &f, false).unwrap_err(), Error::EmptyFunctionalSet);
        assert_eq!(min_sensors_iterative(&a, &f).unwrap_err(), Error::EmptyFunctionalSet);
        assert_eq!(min_sensors_matching(&a, &f).unwrap_err(), Error::EmptyFunctionalSet);
    }

    #[test]
    fn alg1_rejects_non_diagonalizable() {
        let a = Pattern::from_entries(2, 2, [(2, 1)]).unwrap();
        let f = Pattern::unit_row(2, 2).unwrap();
        assert_eq!(min_sensors_diag(&a, &f, false).unwrap_err(), Error::NotDiagonalizable);
    }
}
