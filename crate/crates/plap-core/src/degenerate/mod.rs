//! Eigenpair certification and construction at the degenerate exponents
//! p = 1 and p = inf: subgradient feasibility certificates (linear programs),
//! viscosity-equation checking, shortest-path witnesses, cone eigenfunctions
//! and piecewise-constant 1-eigenfunction generators.

mod construct;
mod shortest_path;
mod subgradient;
mod viscosity;

pub use construct::{
    certified_inf_spectrum, certified_one_spectrum, cone_eigenfunction, inf_eigenspace_span,
    one_lap_nodal_generators, perfect_nodal_constructor, ConeCenters,
};
pub use shortest_path::{sp_l_check, sp_witness, PathEndpoint, SpWitness};
pub use subgradient::{
    verify_1_eigenpair, verify_edge_inf_dual, verify_edge_one_dual, verify_inf_eigenpair,
    CertOutcome, Certificate1, CertificateInf,
};
pub use viscosity::{verify_viscosity, NodeDiagnostic, ViscosityReport};

/// Relative tolerance used to compare a supplied Lambda with the recomputed
/// Rayleigh quotient before any certification is attempted.
pub const RAYLEIGH_MATCH_RTOL: f64 = 1e-10;

/// Feasibility tolerance of the phase-1 simplex.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Relative threshold below which an entry of f or Kf counts as zero when
/// fixing signs and supports.
pub const SUPPORT_RTOL: f64 = 1e-12;
