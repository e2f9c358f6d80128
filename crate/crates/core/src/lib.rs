//! Unique colorability of uniform hypergraphs.
//!
//! An `r`-graph is uniquely `k`-colorable when all of its proper
//! `k`-colorings (every edge rainbow) induce the same vertex partition. This
//! crate computes the positive-degree quantities that govern that property,
//! builds the extremal two-coloring constructions, evaluates the exact
//! density thresholds, and checks all of it on concrete instances.
//!
//! Vertices are 1-based everywhere. Decisions that compare a degree with a
//! threshold run on [`Rational`] or plain integers; the threshold formulas are
//! generic over [`Scalar`] so the same code also yields `f64` values for
//! display.

pub mod coloring;
pub mod constructions;
pub mod error;
pub mod hgr;
pub mod hypergraph;
pub mod rational;
pub mod report;
pub mod thresholds;
pub mod verify;
pub mod vertex_set;

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

pub use coloring::{Coloring, PartProfile, Uniqueness};
pub use constructions::{Construction, ConstructionSpec};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use report::{Quantity, Report, Verdict};
pub use thresholds::UpperBound;
pub use vertex_set::VertexSet;

/// Vertex label, `1..=n`.
pub type Vertex = u32;

/// Color label, `1..=k`.
pub type Color = u32;

/// Exact fraction over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer used for cross-multiplied inequalities.
pub type Integer = num_bigint::BigInt;

/// Number type the threshold formulas are written against.
pub trait Scalar: Num + FromPrimitive + PartialOrd + Clone + Debug {}

impl<T> Scalar for T where T: Num + FromPrimitive + PartialOrd + Clone + Debug {}

/// Exact thresholds, the ones used in decisions.
pub type ExactBound = UpperBound<Rational>;

/// Floating-point thresholds for display and plotting only.
pub type ApproxBound = UpperBound<f64>;
