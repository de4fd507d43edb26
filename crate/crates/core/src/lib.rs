//! Structural analysis of linear systems given only by sparsity patterns.
//!
//! The crate decides generic diagonalizability of a state pattern,
//! structural functional observability and structural output
//! controllability, and computes minimal sensor and actuator placements.
//! Indices in every public pattern type are 1-based.
//!
//! ```
//! use gendiag::{diag, model::Pattern};
//!
//! // x1 <-> x2 is a single 2-cycle: diagonalizable.
//! let a = Pattern::from_entries(2, 2, [(1, 2), (2, 1)]).unwrap();
//! assert!(diag::is_generically_diagonalizable(&a).unwrap().verdict);
//! ```

pub mod combinat;
pub mod diag;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod grank;
pub mod model;
pub mod oracle;
pub mod placement;
pub mod sfo;
pub mod soc;

pub use error::{Error, Result};
