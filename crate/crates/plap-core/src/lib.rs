//! Nonlinear spectral theory of the graph p-Laplacian for p in [1, inf]:
//! eigenpair computation and certification, subgradient and viscosity
//! verification at the degenerate exponents, exact combinatorial graph
//! invariants (Cheeger constants, packing radii, independence and matching
//! numbers), nodal-domain analytics, and the node/edge duality transform.

pub mod check;
pub mod degenerate;
pub mod duality;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod linear;
pub mod lp;
pub mod nodal;
pub mod ops;
pub mod solver;
pub mod test_graphs;

pub use error::{GeomError, GraphError, OpError, SolveError};
pub use graph::{
    divergence_apply, incidence_apply, DistanceOracle, Edge, EdgeFn, Graph, NodeFn,
};
pub use ops::{EigenKind, Eigenpair, PValue};
