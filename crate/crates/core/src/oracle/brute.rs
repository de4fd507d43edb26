//! Exhaustive searchers for small instances.
//!
//! Each search refuses inputs above its cap with [`Error::CapExceeded`].
//! Placement searches use the structural verdict functions as feasibility
//! tests, so they certify optimality of the placement step only.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grank::{grank, output_reachable};
use crate::model::Pattern;
use crate::sfo::sfo_verdict;
use crate::soc::{is_soc, SocVerdict};

/// Cap for cycle, cactus and dilation enumeration.
pub const STRUCTURE_CAP: usize = 6;
/// Cap for sensor and actuator placement enumeration.
pub const PLACEMENT_CAP: usize = 5;
/// Cap for the principal-submatrix and matching enumerations.
pub const SUBSET_CAP: usize = 10;

fn capped(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

fn square(a: &Pattern) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::dim("brute force", "A must be square"));
    }
    Ok(a.rows())
}

/// Successor lists of `G(A)`, 0-based: `x_j -> x_i` iff `A[i, j]` is free.
fn successors(a: &Pattern) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); a.cols()];
    for (i, j) in a.entries() {
        out[j - 1].push(i - 1);
    }
    out
}

/// An optimum with a witness of the same size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum<W> {
    pub value: usize,
    pub witness: W,
}

/// `v(A)` by enumerating partial successor assignments. The witness lists
/// the cycles, each starting at its smallest state, 1-based.
pub fn brute_v(a: &Pattern) -> Result<Optimum<Vec<Vec<usize>>>> {
    let n = square(a)?;
    capped(n, STRUCTURE_CAP)?;
    let succ = successors(a);
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut best = (0, Vec::new());
    fn rec(
        v: usize,
        succ: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        best: &mut (usize, Vec<Option<usize>>),
    ) {
        let n = succ.len();
        if v == n {
            // Injective with image inside the domain: a union of cycles.
            let closed = assign.iter().flatten().all(|&h| assign[h].is_some());
            let size = assign.iter().flatten().count();
            if closed && size > best.0 {
                *best = (size, assign.clone());
            }
            return;
        }
        rec(v + 1, succ, assign, used, best);
        for &h in &succ[v] {
            if !used[h] {
                used[h] = true;
                assign[v] = Some(h);
                rec(v + 1, succ, assign, used, best);
                assign[v] = None;
                used[h] = false;
            }
        }
    }
    rec(0, &succ, &mut assign, &mut used, &mut best);
    Ok(Optimum {
        value: best.0,
        witness: cycles_of(&best.1),
    })
}

fn cycles_of(assign: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; assign.len()];
    let mut out = Vec::new();
    for s in 0..assign.len() {
        if seen[s] || assign[s].is_none() {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v + 1);
            v = assign[v].expect("closed assignment");
        }
        out.push(cyc);
    }
    out
}

/// `μ(A) = max |J|` with `grank A(J, J) = |J|`, over all state subsets.
pub fn brute_mu(a: &Pattern) -> Result<Optimum<BTreeSet<usize>>> {
    let n = square(a)?;
    capped(n, SUBSET_CAP)?;
    let mut best = Optimum {
        value: 0,
        witness: BTreeSet::new(),
    };
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best.value {
            continue;
        }
        let keep: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if grank(&a.restrict(&keep)) == size {
            best = Optimum {
                value: size,
                witness: keep,
            };
        }
    }
    Ok(best)
}

/// A maximum matching of `B(A)` whose edges form disjoint cycles only, if
/// one exists. Edges are `(tail, head)` state pairs, 1-based.
pub fn brute_cycles_only_max_matching(a: &Pattern) -> Result<Option<Vec<(usize, usize)>>> {
    let n = square(a)?;
    capped(n, SUBSET_CAP)?;
    let target = grank(a);
    let succ = successors(a);
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        size: usize,
        target: usize,
        succ: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = succ.len();
        if size + (n - v) < target {
            return false;
        }
        if v == n {
            return size == target && assign.iter().flatten().all(|&h| assign[h].is_some());
        }
        for &h in &succ[v] {
            if !used[h] {
                used[h] = true;
                assign[v] = Some(h);
                if rec(v + 1, size + 1, target, succ, assign, used) {
                    return true;
                }
                assign[v] = None;
                used[h] = false;
            }
        }
        rec(v + 1, size, target, succ, assign, used)
    }
    if !rec(0, 0, target, &succ, &mut assign, &mut used) {
        return Ok(None);
    }
    Ok(Some(
        assign
            .iter()
            .enumerate()
            .filter_map(|(t, h)| h.map(|h| (t + 1, h + 1)))
            .collect(),
    ))
}

/// Witness of a cactus enumeration: state successor per state (1-based
/// state, or output `n + j` for `y_j`), `None` for uncovered states.
pub type Assignment = Vec<Option<usize>>;

/// Maximum number of states covered by disjoint stems (paths ending with
/// an output edge, one stem per output) and output-reachable cycles.
pub fn brute_cactus(a: &Pattern, c: &Pattern) -> Result<Optimum<Assignment>> {
    let n = square(a)?;
    capped(n, STRUCTURE_CAP)?;
    if c.cols() != n {
        return Err(Error::dim("C", format!("expected {n} columns, got {}", c.cols())));
    }
    let p = c.rows();
    let mut succ = successors(a);
    for (row, state) in c.entries() {
        succ[state - 1].push(n + row - 1);
    }
    let reach: Vec<bool> = {
        let r = output_reachable(a, c)?;
        (1..=n).map(|i| r.contains(&i)).collect()
    };
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n + p];
    let mut best = (0, vec![None; n]);
    fn valid(assign: &[Option<usize>], reach: &[bool]) -> bool {
        let n = assign.len();
        for (v, s) in assign.iter().enumerate() {
            let Some(h) = *s else { continue };
            if h < n && assign[h].is_none() {
                return false;
            }
            // A state on a stem reaches its output, so only cycles need
            // the reachability check; testing every covered state covers both.
            if !reach[v] {
                return false;
            }
        }
        true
    }
    fn rec(
        v: usize,
        succ: &[Vec<usize>],
        reach: &[bool],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        best: &mut (usize, Vec<Option<usize>>),
    ) {
        let n = assign.len();
        if v == n {
            let size = assign.iter().flatten().count();
            if size > best.0 && valid(assign, reach) {
                *best = (size, assign.clone());
            }
            return;
        }
        let covered = assign[..v].iter().flatten().count();
        if covered + (n - v) <= best.0 {
            return;
        }
        for &h in &succ[v] {
            if !used[h] {
                used[h] = true;
                assign[v] = Some(h);
                rec(v + 1, succ, reach, assign, used, best);
                assign[v] = None;
                used[h] = false;
            }
        }
        rec(v + 1, succ, reach, assign, used, best);
    }
    rec(0, &succ, &reach, &mut assign, &mut used, &mut best);
    Ok(Optimum {
        value: best.0,
        witness: best.1.into_iter().map(|s| s.map(|h| h + 1)).collect(),
    })
}

/// All minimal dilations of `m` over its columns: sets `S` with fewer
/// nonzero rows than members and no proper subset of that kind.
pub fn brute_minimal_dilations(m: &Pattern) -> Result<Vec<BTreeSet<usize>>> {
    let n = m.cols();
    capped(n, STRUCTURE_CAP)?;
    let col_rows: Vec<u64> = (1..=n)
        .map(|j| {
            m.entries()
                .filter(|&(_, c)| c == j)
                .fold(0u64, |acc, (r, _)| acc | 1 << (r - 1))
        })
        .collect();
    let is_dilation = |mask: u32| {
        let rows = (0..n)
            .filter(|&j| mask >> j & 1 == 1)
            .fold(0u64, |acc, j| acc | col_rows[j]);
        (rows.count_ones()) < mask.count_ones()
    };
    let mut minimal: Vec<u32> = Vec::new();
    // Increasing popcount order makes the subset test sufficient.
    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        if is_dilation(mask) && !minimal.iter().any(|&s| s & !mask == 0) {
            minimal.push(mask);
        }
    }
    Ok(minimal
        .into_iter()
        .map(|mask| (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| j + 1).collect())
        .collect())
}

/// Union of all minimal dilations of `[A; C]`.
pub fn brute_dilation_states(a: &Pattern, c: &Pattern) -> Result<BTreeSet<usize>> {
    square(a)?;
    Ok(brute_minimal_dilations(&a.stack(c)?)?.into_iter().flatten().collect())
}

/// Nonempty subsets of `allowed` as bit masks over 0-based indices.
fn supports(allowed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let items: Vec<usize> = allowed.iter().copied().collect();
    (1u32..(1 << items.len()))
        .map(|mask| {
            (0..items.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| items[k])
                .collect()
        })
        .collect()
}

/// Calls `visit` on every multiset of `k` indices into `0..count` in
/// nondecreasing order until it returns true.
fn multisets(count: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    fn rec(
        start: usize,
        count: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..count {
            cur.push(i);
            if rec(i, count, k, cur, visit)? {
                return Ok(true);
            }
            cur.pop();
        }
        Ok(false)
    }
    rec(0, count, k, &mut Vec::with_capacity(k), visit)
}

/// Fewest sensor rows making `(A, C, F)` SFO, over all `C` whose rows are
/// nonempty subsets of `allowed` (all states when `None`).
///
/// Returns `None` when no such `C` exists within `|allowed|` rows.
pub fn brute_min_sensors(
    a: &Pattern,
    f: &Pattern,
    allowed: Option<&BTreeSet<usize>>,
) -> Result<Option<Optimum<Pattern>>> {
    let n = square(a)?;
    capped(n, PLACEMENT_CAP)?;
    let all: BTreeSet<usize> = (1..=n).collect();
    let allowed = allowed.unwrap_or(&all);
    if sfo_verdict(a, &Pattern::zeros(0, n), f)? {
        return Ok(Some(Optimum {
            value: 0,
            witness: Pattern::zeros(0, n),
        }));
    }
    let rows = supports(allowed);
    // One dedicated sensor per allowed state is the most that can help.
    for k in 1..=allowed.len() {
        let mut found = None;
        multisets(rows.len(), k, &mut |pick| {
            let c = Pattern::from_entries(
                k,
                n,
                pick.iter()
                    .enumerate()
                    .flat_map(|(r, &s)| rows[s].iter().map(move |&j| (r + 1, j))),
            )?;
            if sfo_verdict(a, &c, f)? {
                found = Some(c);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(c) = found {
            return Ok(Some(Optimum { value: k, witness: c }));
        }
    }
    Ok(None)
}

/// Fewest actuator columns making `(A, B, C)` SOC, over all `B` whose
/// columns are nonempty state subsets. Undecidable verdicts count as
/// infeasible.
pub fn brute_min_actuators(a: &Pattern, c: &Pattern) -> Result<Optimum<Pattern>> {
    let n = square(a)?;
    capped(n, PLACEMENT_CAP)?;
    let p = c.rows();
    if p == 0 {
        return Err(Error::NoOutputs);
    }
    let all: BTreeSet<usize> = (1..=n).collect();
    let cols = supports(&all);
    for k in 1..=n.max(p) {
        let mut found = None;
        multisets(cols.len(), k, &mut |pick| {
            let b = Pattern::from_entries(
                n,
                k,
                pick.iter()
                    .enumerate()
                    .flat_map(|(col, &s)| cols[s].iter().map(move |&i| (i, col + 1))),
            )?;
            if is_soc(a, &b, c)?.verdict == SocVerdict::Soc {
                found = Some(b);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(b) = found {
            return Ok(Optimum { value: k, witness: b });
        }
    }
    Err(Error::RankDeficientOutput { grank: grank(c), p })
}
