//! Named regression instances.
//!
//! Instances whose edge lists are known exactly are marked as such. The
//! others are reconstructions: small systems found by search that
//! reproduce every aggregate number reported for the original drawing
//! (matching weights, optimal counts, chosen state sets). Their metadata
//! says so.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::model::{Pattern, SystemPattern};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureMeta {
    pub name: String,
    /// True when the instance was rebuilt from reported aggregates rather
    /// than transcribed.
    pub reconstructed: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub meta: FixtureMeta,
    pub system: SystemPattern,
}

fn pat(rows: usize, cols: usize, e: &[(usize, usize)]) -> Pattern {
    Pattern::from_entries(rows, cols, e.iter().copied()).expect("fixture indices are in range")
}

fn fixture(
    name: &str,
    reconstructed: bool,
    note: &str,
    a: Pattern,
    b: Option<Pattern>,
    c: Option<Pattern>,
    f: Option<Pattern>,
) -> Fixture {
    Fixture {
        meta: FixtureMeta {
            name: name.into(),
            reconstructed,
            note: note.into(),
        },
        system: SystemPattern::new(a, b, c, f).expect("fixture dimensions are consistent"),
    }
}

/// Four states all driven by `x4`, two sensors on `x1..x3`, one on `x4`,
/// and the functional `x1`. Diagonalizable but not SFO.
pub fn example_counter() -> Fixture {
    fixture(
        "example-counter",
        false,
        "transcribed; grank [A;C] = 3, grank [A;C;F] = 4",
        pat(4, 4, &[(1, 4), (2, 4), (3, 4), (4, 4)]),
        None,
        Some(pat(3, 4, &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 4)])),
        Some(pat(1, 4, &[(1, 1)])),
    )
}

/// Numeric `(A, C, F)` of [`example_counter`] that is functionally
/// observable although the pattern is not SFO.
pub fn example_counter_realization() -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let a = DMatrix::from_fn(4, 4, |_, j| if j == 3 { 1.0 } else { 0.0 });
    let c = DMatrix::from_row_slice(3, 4, &[1.0, 1.0, 1.0, 0.0, 2.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let f = DMatrix::from_row_slice(1, 4, &[1.0, 0.0, 0.0, 0.0]);
    (a, c, f)
}

/// The 6x6 block matrix with zero first block row and ones elsewhere in
/// the first two block columns. Diagonalizable, while its principal
/// submatrix on blocks 1 and 3 is not.
pub fn scc_blocks_matrix() -> DMatrix<f64> {
    DMatrix::from_fn(6, 6, |i, j| if i >= 2 && j < 4 { 1.0 } else { 0.0 })
}

/// States `1, 2, 5, 6` of [`scc_blocks_matrix`].
pub fn scc_blocks_submatrix() -> DMatrix<f64> {
    let keep = [0, 1, 4, 5];
    DMatrix::from_fn(4, 4, |i, j| scc_blocks_matrix()[(keep[i], keep[j])])
}

/// Pattern of [`scc_blocks_matrix`].
pub fn scc_blocks() -> Fixture {
    let m = scc_blocks_matrix();
    let entries: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|&(i, j)| m[(i, j)] != 0.0)
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    fixture(
        "scc-blocks",
        false,
        "transcribed numeric matrix",
        pat(6, 6, &entries),
        None,
        None,
        None,
    )
}

/// Diagonalizable system for the matching-based sensor placement, with
/// `X_F = {x2, x4, x6}`: the optimal matching leaves only `x6` unmatched.
pub fn sensor_diag_example() -> Fixture {
    let xf: BTreeSet<usize> = [2, 4, 6].into();
    fixture(
        "sensor-diag",
        true,
        "reconstructed; X_S = {x2, x4}, X_F^u = {x6}, p* = 1",
        pat(6, 6, &[(1, 3), (1, 4), (2, 5), (3, 2), (4, 3), (5, 1), (5, 6)]),
        None,
        None,
        Some(Pattern::selector(6, &xf).expect("in range")),
    )
}

/// Non-diagonalizable system with `X_F = {x2, x3, x4}` where one sensor
/// is never enough. The cactus certificate has weight 14 with stems
/// `x1 x2 x3` and `x4`.
pub fn sensor_general_example() -> Fixture {
    let xf: BTreeSet<usize> = [2, 3, 4].into();
    fixture(
        "sensor-general",
        true,
        "reconstructed; cactus weight 14, stems (x1,x2,x3,y1) and (x4,y2), p = 2",
        pat(6, 6, &[(2, 1), (3, 2), (5, 3), (6, 1)]),
        None,
        None,
        Some(Pattern::selector(6, &xf).expect("in range")),
    )
}

/// The row `η = [0, *, *, *, 0, 0]` used by the iterative placement on
/// [`sensor_general_example`].
pub fn sensor_general_eta() -> Pattern {
    pat(1, 6, &[(1, 2), (1, 3), (1, 4)])
}

/// Diagonalizable `(A, C)` for actuator placement: the optimal flow uses
/// one dedicated input at `x2`, and `x2, x4` share an SCC.
pub fn actuator_example() -> Fixture {
    fixture(
        "actuator",
        true,
        "reconstructed; X^f1 = {x2}, X^f2 = {x2, x4}, m* = 1, B* = e2",
        pat(5, 5, &[(1, 2), (2, 4), (4, 2), (5, 4)]),
        None,
        Some(pat(3, 5, &[(1, 4), (2, 3), (2, 5), (3, 2)])),
        None,
    )
}

/// Non-diagonalizable SOC instance with `x5` unreachable from the input.
pub fn soc_example() -> Fixture {
    fixture(
        "soc",
        true,
        "reconstructed; grank Q = grank [A_r, B] = 3, linking (x1,x4,y2), (x2,x3,y1)",
        pat(5, 5, &[(1, 1), (3, 2), (4, 1), (4, 5)]),
        Some(pat(5, 1, &[(1, 1), (2, 1)])),
        Some(pat(2, 5, &[(1, 3), (2, 4)])),
        None,
    )
}

pub fn all() -> Vec<Fixture> {
    vec![
        example_counter(),
        scc_blocks(),
        sensor_diag_example(),
        sensor_general_example(),
        actuator_example(),
        soc_example(),
    ]
}
