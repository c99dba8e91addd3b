//! Cohen-Macaulayness of edge-weighted graphs of girth five or greater.
//!
//! An edge-weighted graph `(G, ω)` with positive integer weights defines the
//! weighted edge ideal `I(G_ω) = ((x_i x_j)^{ω(x_i x_j)} | x_i x_j ∈ E(G))`.
//! For girth ≥ 5 the quotient by this ideal is Cohen-Macaulay exactly when the
//! underlying graph partitions into pendant-edge vertices and basic 5-cycle
//! vertices (the class PC) and the weights satisfy three order conditions on
//! pendant edges and cycles. This crate implements that classification
//! ([`conditions::classify_cm`]) together with two independent ways to verify
//! its verdicts:
//!
//! * [`covers`] enumerates minimal weighted vertex covers, the irreducible
//!   decomposition of the weighted edge ideal, and unmixedness;
//! * [`oracle`] decides Cohen-Macaulayness exactly at desk scale through
//!   polarization, Stanley-Reisner complexes and reduced simplicial homology
//!   over the integers.
//!
//! [`generate`] produces seeded random instances for cross-validation.

pub mod complex;
pub mod conditions;
pub mod covers;
pub mod generate;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod oracle;
pub mod snf;
pub mod structure;
pub mod testkit;

/// Edge weight. Strictly positive, bounded by [`MAX_WEIGHT`].
pub type Weight = u32;

/// Exponent of a variable in a monomial.
pub type Exponent = u32;

/// Largest accepted edge weight. Keeps every exponent arising in ideal
/// arithmetic far away from machine-width overflow.
pub const MAX_WEIGHT: Weight = 1_000_000;

pub use graph::{parse_graph, DeleteMode, GraphError, WeightedGraph};
