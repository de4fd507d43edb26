//! Generic ranks computed combinatorially.

mod cactus;
mod linking;

use serde::{Deserialize, Serialize};

use crate::combinat::{extremal_weight_max_matching, max_matching, Sense};
use crate::error::{Error, Result};
use crate::model::{pattern_bigraph, Bigraph, Matching, Pattern};

pub use cactus::{cactus_bigraph, cactus_size, cactus_size_with_q, input_cactus_size, output_reachable, CactusReport};
pub use linking::{linking, linking_size, LinkPath, LinkingNetwork};

/// Generic rank, the size of a maximum matching of `B(M)`.
pub fn grank(m: &Pattern) -> usize {
    max_matching(&pattern_bigraph(m)).size()
}

/// `B(A)` plus a unit-cost loop `(x_i, x_i)` at every `i` with `A[i,i] == 0`.
/// Real edges cost 0.
pub fn lambda_bigraph(a: &Pattern) -> Result<Bigraph> {
    if !a.is_square() {
        return Err(Error::dim(
            "cycle_cover_max",
            format!("A must be square, got {}x{}", a.rows(), a.cols()),
        ));
    }
    let mut g = pattern_bigraph(a);
    for i in 0..a.rows() {
        if !a.contains(i + 1, i + 1) {
            g.set_edge(i, i, 1)?;
        }
    }
    Ok(g)
}

/// Minimum-weight maximum matching of the loop-augmented graph together
/// with the cycle-cover value it certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCover {
    /// `v(A)`, the most states coverable by disjoint cycles.
    pub value: usize,
    /// Weight of the certificate, `n - v(A)`.
    pub weight: u64,
    pub certificate: Matching,
}

impl CycleCover {
    /// States on cycles of the cover (loops of cost 1 excluded), 1-based.
    pub fn covered_states(&self) -> Vec<usize> {
        self.certificate
            .edges()
            .iter()
            .filter(|e| e.cost == 0)
            .map(|e| e.right + 1)
            .collect()
    }
}

pub fn cycle_cover(a: &Pattern) -> Result<CycleCover> {
    let g = lambda_bigraph(a)?;
    let m = extremal_weight_max_matching(&g, Sense::Minimize);
    let n = a.rows();
    debug_assert_eq!(m.size(), n);
    let weight = m.weight();
    Ok(CycleCover {
        value: n - weight as usize,
        weight,
        certificate: m,
    })
}

/// `v(A)`.
pub fn cycle_cover_max(a: &Pattern) -> Result<usize> {
    Ok(cycle_cover(a)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grank_of_counter_stacks() {
        let a = Pattern::from_entries(4, 4, (1..=4).map(|i| (i, 4))).unwrap();
        let c = Pattern::from_entries(3, 4, [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 4)]).unwrap();
        let f = Pattern::unit_row(4, 1).unwrap();
        let ac = a.stack(&c).unwrap();
        assert_eq!(grank(&a), 1);
        assert_eq!(grank(&ac), 3);
        assert_eq!(grank(&ac.stack(&f).unwrap()), 4);
        assert_eq!(grank(&Pattern::zeros(3, 5)), 0);
    }

    #[test]
    fn cycle_cover_small_cases() {
        let chain = Pattern::from_entries(2, 2, [(2, 1)]).unwrap();
        assert_eq!(cycle_cover_max(&chain).unwrap(), 0);
        let two_cycle = Pattern::from_entries(2, 2, [(1, 2), (2, 1)]).unwrap();
        assert_eq!(cycle_cover_max(&two_cycle).unwrap(), 2);
        let a = Pattern::from_entries(4, 4, (1..=4).map(|i| (i, 4))).unwrap();
        let cc = cycle_cover(&a).unwrap();
        assert_eq!((cc.value, cc.weight), (1, 3));
        assert_eq!(cc.covered_states(), vec![4]);
    }

    #[test]
    fn cycle_cover_rejects_rectangular() {
        assert!(cycle_cover_max(&Pattern::zeros(2, 3)).is_err());
    }
}
