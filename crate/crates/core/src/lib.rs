//! Combinatorial triangulations of sphere bundles over the circle: explicit
//! small-vertex constructions, handle addition and deletion, stacked-sphere
//! machinery, Z₂ homology, isomorphism testing and the partition bookkeeping
//! that indexes the (2d+4)-vertex family.
//!
//! The central objects:
//! - [`complex::SimplicialComplex`]: facet-list complexes with links, stars,
//!   induced subcomplexes and complements.
//! - [`build`]: stacked spheres, the cylinder boundary ∂N, handle
//!   addition/deletion and the minimal bundle triangulations.
//! - [`recognize`]: stackedness with replayable certificates, admissibility,
//!   two-sidedness.
//! - [`homology`]: Z₂ Betti numbers (absolute and relative), orientability,
//!   the Alexander-duality audit.
//! - [`iso`]: isomorphism search, automorphism counts, edge-graph
//!   reconstruction of stacked spheres.
//! - [`partitions`]: enumeration, parity counts and the permutations behind
//!   the gluing bijections.
//! - [`suite`]: the end-to-end verification battery used by the CLI.

pub mod batch;
pub mod build;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod iso;
pub mod partitions;
pub mod recognize;
pub mod suite;

pub use complex::{Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
