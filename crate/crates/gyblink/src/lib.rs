//! Generalized Yang-Baxter operators from SO(N)_2 data, braid closures,
//! link invariants, and an independent Dubrovnik-skein cross-check.
//!
//! Start with the `examples/` directory: each example is a runnable tour
//! of one capability (operator verification, invariant computation,
//! oracle comparison, structured application, category synthesis,
//! Markov-move invariance).

pub mod braid;
pub mod cli;
pub mod error;
pub mod gyb;
pub mod invariant;
pub mod linalg;
pub mod skein;
pub mod so_n2;

pub use braid::{parse_braid, BraidWord, LinkSpec};
pub use error::{Error, Result};
pub use gyb::{r_nu, r_nu_theta, EgybOperator, Enhancement, GybOperator, GybType};
pub use invariant::{normalized_invariant, t_invariant, Scheme};
pub use linalg::{ComplexMatrix, ToleranceConfig, C64};
pub use skein::{dubrovnik, pd_from_braid, DubrovnikParams, PlanarLinkDiagram};
pub use so_n2::{build_gyb, category_data, fusion, Label};
