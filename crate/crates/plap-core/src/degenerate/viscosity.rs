//! Pointwise checking of the viscosity (limit) infinity-eigenvalue equations.

use serde::Serialize;

use crate::error::OpError;
use crate::graph::{Graph, NodeFn};

/// The per-node quantity whose vanishing the viscosity equations require.
#[derive(Debug, Clone, Serialize)]
pub struct NodeDiagnostic {
    pub node: String,
    /// Value of f at the node.
    pub value: f64,
    /// Left-hand side of the equation that must vanish.
    pub defect: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViscosityReport {
    pub holds: bool,
    pub diagnostics: Vec<NodeDiagnostic>,
}

const VISCOSITY_TOL: f64 = 1e-10;

/// Checks the limit eigenvalue equations at every interior node:
/// with the local gradient `{Kf(u,v)}_{v~u}` and the infinity Laplacian
/// `D_inf f(u) = ||grad^-||_inf - ||grad^+||_inf`,
///
/// * f(u) > 0: `min(||grad||_inf - Lambda f(u), D_inf f(u)) = 0`
/// * f(u) = 0: `D_inf f(u) = 0`
/// * f(u) < 0: `max(-||grad||_inf - Lambda f(u), D_inf f(u)) = 0`
pub fn verify_viscosity(g: &Graph, f: &NodeFn, nlambda: f64) -> Result<ViscosityReport, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let fsup = f.sup_norm();
    let mut diagnostics = Vec::with_capacity(g.interior_count());
    let mut holds = true;
    for i in 0..g.interior_count() {
        let u = g.interior_node(i);
        let fu = f.values[i];
        let mut grad_sup = 0.0f64;
        let mut pos_part = 0.0f64;
        let mut neg_part = 0.0f64;
        for &(v, e) in g.neighbors(u) {
            let fv = f.at(g, v);
            let slope = g.edge(e).omega * (fv - fu);
            grad_sup = grad_sup.max(slope.abs());
            pos_part = pos_part.max(slope);
            neg_part = neg_part.max(-slope);
        }
        let lap_inf = neg_part - pos_part;
        let scale = (grad_sup + nlambda.abs() * fsup).max(1.0);
        let is_zero = fu.abs() <= 1e-14 * fsup;
        let defect = if is_zero {
            lap_inf
        } else if fu > 0.0 {
            (grad_sup - nlambda * fu).min(lap_inf)
        } else {
            (-grad_sup - nlambda * fu).max(lap_inf)
        };
        let ok = defect.abs() <= VISCOSITY_TOL * scale;
        holds &= ok;
        diagnostics.push(NodeDiagnostic {
            node: g.node_id(u).to_string(),
            value: fu,
            defect,
            ok,
        });
    }
    Ok(ViscosityReport { holds, diagnostics })
}
