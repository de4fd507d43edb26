//! Independent ground truth for the structural analyses.
//!
//! Ranks are computed exactly over a prime field on random realizations,
//! eigenstructure on random floating realizations, and optima by
//! exhaustive search. Trial `t` always draws from the stream
//! `(seed, t)`, so aggregates do not depend on execution order.

pub mod brute;
pub mod field;
pub mod real;
pub mod sample;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::Pattern;

pub use field::{controllability_matrix, is_prime, observability_matrix, FieldMatrix, DEFAULT_MODULUS};
pub use real::{eigen_clusters, numeric_diagonalizable, numeric_pbh_functional, random_real, Cluster, PbhOutcome};

/// Attempts per floating trial before an eigen-solver failure is reported.
const FLOAT_RETRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub seed: u64,
    pub trials: u64,
    /// Prime modulus of the sampling field.
    pub modulus: u64,
    /// Relative tolerance; multiplied by the matrix norm where used.
    pub float_tolerance: f64,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 20,
            modulus: DEFAULT_MODULUS,
            float_tolerance: 1e-8,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Invalid("oracle trials must be at least 1".into()));
        }
        if !is_prime(self.modulus) || self.modulus >= 1 << 63 {
            return Err(Error::Invalid(format!(
                "oracle modulus {} is not a prime below 2^63",
                self.modulus
            )));
        }
        if !(self.float_tolerance > 0.0 && self.float_tolerance.is_finite()) {
            return Err(Error::Invalid("oracle float tolerance must be positive".into()));
        }
        Ok(())
    }

    fn run<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync + Send,
    {
        self.validate()?;
        let seed = self.seed;
        self.execution
            .map_indices(self.trials, |t| f(&mut trial_rng(seed, t)))
            .into_iter()
            .collect()
    }
}

/// Independent RNG stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Fraction-free majority: strictly more than half of the votes.
pub fn majority(votes: &[bool]) -> bool {
    2 * votes.iter().filter(|&&v| v).count() > votes.len()
}

/// Maximum exact rank over random prime-field realizations.
pub fn numeric_grank(m: &Pattern, cfg: &OracleConfig) -> Result<usize> {
    let ranks = cfg.run(|rng| Ok(FieldMatrix::random(m, cfg.modulus, rng).rank()))?;
    Ok(ranks.into_iter().max().unwrap_or(0))
}

/// Exact ranks of `O(A, C)` and `[O(A, C); F]` for one realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObsRank {
    pub rank_oc: usize,
    pub rank_ocf: usize,
}

fn check_square(a: &Pattern) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::dim("oracle", "A must be square"));
    }
    Ok(a.rows())
}

fn check_cols(name: &'static str, m: &Pattern, n: usize) -> Result<()> {
    if m.cols() != n {
        return Err(Error::dim(name, format!("expected {n} columns, got {}", m.cols())));
    }
    Ok(())
}

/// One [`ObsRank`] per trial.
pub fn obs_rank_trials(a: &Pattern, c: &Pattern, f: Option<&Pattern>, cfg: &OracleConfig) -> Result<Vec<ObsRank>> {
    let n = check_square(a)?;
    check_cols("C", c, n)?;
    let f = f.cloned().unwrap_or_else(|| Pattern::zeros(0, n));
    check_cols("F", &f, n)?;
    cfg.run(|rng| {
        let ar = FieldMatrix::random(a, cfg.modulus, rng);
        let cr = FieldMatrix::random(c, cfg.modulus, rng);
        let fr = FieldMatrix::random(&f, cfg.modulus, rng);
        let o = observability_matrix(&ar, &cr)?;
        Ok(ObsRank {
            rank_oc: o.rank(),
            rank_ocf: o.vstack(&fr)?.rank(),
        })
    })
}

/// Component-wise maximum of [`obs_rank_trials`].
pub fn numeric_obs_rank(a: &Pattern, c: &Pattern, f: Option<&Pattern>, cfg: &OracleConfig) -> Result<ObsRank> {
    let t = obs_rank_trials(a, c, f, cfg)?;
    Ok(ObsRank {
        rank_oc: t.iter().map(|r| r.rank_oc).max().unwrap_or(0),
        rank_ocf: t.iter().map(|r| r.rank_ocf).max().unwrap_or(0),
    })
}

/// Per-trial functional observability votes: `rank [O; F] == rank O`.
pub fn sfo_votes(a: &Pattern, c: &Pattern, f: &Pattern, cfg: &OracleConfig) -> Result<Vec<bool>> {
    Ok(obs_rank_trials(a, c, Some(f), cfg)?
        .into_iter()
        .map(|r| r.rank_oc == r.rank_ocf)
        .collect())
}

/// `rank C [B, AB, ..., A^{n-1} B] == p` for one field realization.
pub fn numeric_output_controllable(a: &FieldMatrix, b: &FieldMatrix, c: &FieldMatrix) -> Result<bool> {
    let q = controllability_matrix(a, b)?;
    Ok(c.mul(&q)?.rank() == c.rows)
}

/// Per-trial output controllability votes on random realizations.
pub fn soc_votes(a: &Pattern, b: &Pattern, c: &Pattern, cfg: &OracleConfig) -> Result<Vec<bool>> {
    let n = check_square(a)?;
    if b.rows() != n {
        return Err(Error::dim("B", format!("expected {n} rows, got {}", b.rows())));
    }
    check_cols("C", c, n)?;
    cfg.run(|rng| {
        let ar = FieldMatrix::random(a, cfg.modulus, rng);
        let br = FieldMatrix::random(b, cfg.modulus, rng);
        let cr = FieldMatrix::random(c, cfg.modulus, rng);
        numeric_output_controllable(&ar, &br, &cr)
    })
}

fn with_retries<T>(rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Result<T>) -> Result<T> {
    let mut last = None;
    for _ in 0..FLOAT_RETRIES {
        match f(rng) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Per-trial diagonalizability of random floating realizations of `a`.
pub fn diagonalizable_votes(a: &Pattern, cfg: &OracleConfig) -> Result<Vec<bool>> {
    check_square(a)?;
    cfg.run(|rng| {
        with_retries(rng, |rng| {
            let m: DMatrix<f64> = random_real(a, rng);
            numeric_diagonalizable(&m, cfg.float_tolerance)
        })
    })
}

/// Per-trial PBH outcomes of random floating realizations.
pub fn pbh_votes(a: &Pattern, c: &Pattern, f: &Pattern, cfg: &OracleConfig) -> Result<Vec<PbhOutcome>> {
    let n = check_square(a)?;
    check_cols("C", c, n)?;
    check_cols("F", f, n)?;
    cfg.run(|rng| {
        with_retries(rng, |rng| {
            let (ar, cr, fr) = (random_real(a, rng), random_real(c, rng), random_real(f, rng));
            numeric_pbh_functional(&ar, &cr, &fr, cfg.float_tolerance)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counter() -> (Pattern, Pattern, Pattern) {
        let a = Pattern::from_entries(4, 4, (1..=4).map(|i| (i, 4))).unwrap();
        let c = Pattern::from_entries(3, 4, [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 4)]).unwrap();
        let f = Pattern::unit_row(4, 1).unwrap();
        (a, c, f)
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::default().validate().is_ok());
        let bad = [
            OracleConfig {
                trials: 0,
                ..Default::default()
            },
            OracleConfig {
                modulus: 15,
                ..Default::default()
            },
            OracleConfig {
                float_tolerance: 0.0,
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Invalid(_))));
        }
    }

    #[test]
    fn numeric_grank_examples() {
        let cfg = OracleConfig::with_seed(1);
        let (a, c, _) = counter();
        assert_eq!(numeric_grank(&a.stack(&c).unwrap(), &cfg).unwrap(), 3);
        assert_eq!(numeric_grank(&Pattern::zeros(3, 3), &cfg).unwrap(), 0);
        assert_eq!(numeric_grank(&Pattern::identity(5), &cfg).unwrap(), 5);
    }

    #[test]
    fn counter_observability_ranks() {
        let (a, c, f) = counter();
        let r = numeric_obs_rank(&a, &c, Some(&f), &OracleConfig::with_seed(2)).unwrap();
        assert_eq!((r.rank_oc, r.rank_ocf), (3, 4));
        let full = numeric_obs_rank(&a, &Pattern::identity(4), None, &OracleConfig::with_seed(2)).unwrap();
        assert_eq!(full.rank_oc, 4);
    }

    #[test]
    fn duplicated_row_pattern_is_not_enough() {
        // F repeats the pattern of the only sensor row, but with
        // independent values it is generically outside its span.
        let a = Pattern::zeros(2, 2);
        let c = Pattern::from_entries(1, 2, [(1, 1), (1, 2)]).unwrap();
        let votes = sfo_votes(&a, &c, &c, &OracleConfig::with_seed(3)).unwrap();
        assert!(!majority(&votes));
    }

    #[test]
    fn output_controllability_trivial_cases() {
        let cfg = OracleConfig::with_seed(4);
        let id = Pattern::identity(3);
        assert!(soc_votes(&Pattern::zeros(3, 3), &id, &id, &cfg)
            .unwrap()
            .iter()
            .all(|&v| v));
        let b0 = Pattern::zeros(3, 1);
        assert!(soc_votes(&id, &b0, &id, &cfg).unwrap().iter().all(|&v| !v));
    }

    #[test]
    fn trials_are_order_independent() {
        let (a, c, f) = counter();
        let seq = OracleConfig {
            execution: Execution::Sequential,
            ..OracleConfig::with_seed(9)
        };
        let par = OracleConfig {
            execution: Execution::Parallel,
            ..seq
        };
        assert_eq!(
            obs_rank_trials(&a, &c, Some(&f), &seq).unwrap(),
            obs_rank_trials(&a, &c, Some(&f), &par).unwrap()
        );
        assert_eq!(
            diagonalizable_votes(&a, &seq).unwrap(),
            diagonalizable_votes(&a, &par).unwrap()
        );
    }

    #[test]
    fn float_votes_follow_structure() {
        let cfg = OracleConfig::with_seed(5);
        let chain = Pattern::from_entries(3, 3, [(2, 1), (3, 2)]).unwrap();
        assert!(!majority(&diagonalizable_votes(&chain, &cfg).unwrap()));
        let (a, _, _) = counter();
        assert!(majority(&diagonalizable_votes(&a, &cfg).unwrap()));
    }
}
