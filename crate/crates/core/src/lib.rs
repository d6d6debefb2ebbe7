//! Computational geometry of once-punctured-torus groups.
//!
//! A hyperbolic structure on a punctured torus is steered by two end
//! invariants on the boundary of the hyperbolic plane.  This crate walks
//! the Farey triangulation between them, extracts the pivot sequence and
//! its integer widths, and turns those combinatorics into quantitative
//! geometry: predicted complex translation lengths for the short curves,
//! Margulis tube shapes, and trace identities that every group in the
//! family must satisfy.
//!
//! Layers, bottom to top:
//!
//! * [`surd`] — exact quadratic irrationals and continued fractions;
//! * [`farey`] — slopes, the Farey graph, Dehn twists, triangle walks;
//! * [`scalar`] — a precision-polymorphic real/complex scalar layer;
//! * [`halfplane`] — the upper half-plane, brackets, shortest vertices;
//! * [`mobius`] — complex Möbius maps, complex lengths, axis distances;
//! * [`markov`] — trace triples, the Markov equation, matrix realizations;
//! * [`pivot`] — pivot sequences, widths, and width predictions;
//! * [`model`] — block decomposition and Margulis tube shapes;
//! * [`verify`] — self-checking suites over the identities and bounds.
//!
//! Everything combinatorial is exact; floating point enters only where a
//! quantity is transcendental, and then at a caller-chosen precision.

pub mod farey;
pub mod halfplane;
pub mod markov;
pub mod mobius;
pub mod model;
pub mod pivot;
pub mod scalar;
pub mod surd;
pub mod verify;

pub use farey::{FareyEdge, FareyTriangle, IntegerMoebius, Slope};
pub use halfplane::EndInvariant;
pub use markov::{AnchoredRep, MarkovTriple, TwistWord};
pub use model::{CombinatorialData, TubeShape};
pub use pivot::{PivotConfig, PivotEntry, PivotSequence};
pub use surd::{ContinuedFraction, QuadSurd};
pub use verify::{PaperConstants, Scenario, SuiteReport};

/// Double-precision complex scalar.
pub type Complex64 = scalar::Cx<f64>;
/// Arbitrary-precision complex scalar.
pub type ComplexBig = scalar::Cx<rug::Float>;
