//! Martingale-like sequences in finite-dimensional Banach lattices.
//!
//! The crate models coordinate-ordered lattices with a sup or weighted L₁
//! norm, positive contractive projections and filtrations built from them,
//! and classifies finite sequences as martingales, eventual martingales
//! (𝓔-martingales) or asymptotic martingales (X-martingales). The
//! [`verify`] module replays the known structural results about these
//! classes on concrete and randomized instances.
//!
//! Every statement about limits is checked on a finite horizon and reported
//! as "consistent with" rather than proved.
//!
//! Runnable examples live in `examples/`:
//!
//! ```bash
//! cargo run -p lattice-lab --example pairing_counterexample
//! ```

pub mod cli;
pub mod error;
pub mod filtration;
pub mod io;
pub mod lattice;
pub mod martingale;
pub mod operator;
pub mod partition;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
pub use filtration::{Filtration, Law, ValidationReport};
pub use lattice::{LatticeSpace, LatticeVector, NormKind, DEFAULT_TOL};
pub use martingale::{ClassificationReport, ClassifyOptions, MartingaleSeq, XVerdict};
pub use operator::Operator;
pub use partition::Partition;
