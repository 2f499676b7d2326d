//! Exact polynomial invariants of virtual graphs (ribbon graphs given by rotation
//! systems) and of virtual spatial graph diagrams.
//!
//! The crate is organised bottom-up: [`algebra`] provides exact arithmetic, [`ribbon`]
//! the combinatorial maps, [`classical`] the flow/S/Krushkal/chromatic polynomials,
//! [`brauer`] the Brauer category evaluation and gramians, [`penrose`] the Lie-type
//! evaluations, and [`spatial`] the Yamada-type invariants of diagrams with crossings.

pub mod algebra;
pub mod brauer;
pub mod classical;
pub mod fixtures;
pub mod penrose;
pub mod report;
pub mod ribbon;
pub mod spatial;
pub mod vgf;

pub use algebra::{HalfLaurent, Rational, Var};
pub use ribbon::{CombMap, EulerData, MapError};
