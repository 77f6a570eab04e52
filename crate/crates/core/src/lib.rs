//! Spectral and edge-extremal computations for graphs that avoid the
//! (k,r)-fan `F_{k,r}`: `k` copies of `K_r` sharing one common vertex.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: dense bitset graphs, graph6, canonical labelling, and the
//!   partition-keyed representation used for large constructions.
//! * [`constructors`]: Turán graphs, complete multipartite graphs, fans, the
//!   bounded-degree bounded-matching graph `G0`, the extremal family and
//!   split graphs.
//! * [`spectral`]: adjacency spectral radius with Perron vector, Rayleigh
//!   quotients, the multipartite eigenvalue equation and characteristic
//!   polynomial, and the signless Laplacian radius.
//! * [`patterns`]: exact fan detection, clique packing, matching number,
//!   maximum cuts, and the partition inequality checker.
//! * [`extremal`]: closed-form Turán numbers, the Chvátal–Hanson function and
//!   `ex(n, F_{k,r})` with applicability thresholds.
//! * [`oracle`]: isomorph-free enumeration and exhaustive/structured searches.

pub mod constructors;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod oracle;
pub mod patterns;
pub mod spectral;

pub use constructors::{FanSpec, PartitionSizes};
pub use error::{Error, Result};
pub use graph::{Graph, PartitionedGraph, VertexPartition};
