//! Subgradient certificates for 1- and inf-eigenpairs, solved as box/sign
//! constrained linear feasibility problems by the in-repo phase-1 simplex.
//!
//! Conventions (matching the worked path-graph and star-graph examples):
//! for p = 1 the certificate solves `div Xi = Lambda nu xi` with
//! `xi(u) in sign(f(u))` and `Xi(u,v) in sign(Kf(u,v))`, `|Xi| <= 1`;
//! for p = inf it solves `K^T Xi = Lambda xi` (`K^T` the plain incidence
//! transpose, twice the divergence) with supports on the argmax sets,
//! sign alignment, `||xi||_1 = 1` and `||Xi||_1 = 1/2` where
//! `||Xi||_1 = (1/2) sum over directed edges |Xi|`.

use serde_json::json;

use super::{FEASIBILITY_TOL, RAYLEIGH_MATCH_RTOL, SUPPORT_RTOL};
use crate::error::OpError;
use crate::graph::{divergence_apply, incidence_apply, EdgeFn, Graph, NodeFn};
use crate::lp;
use crate::ops::{rayleigh_p, PValue};

/// Subgradient pair witnessing a 1-eigenpair.
#[derive(Debug, Clone)]
pub struct Certificate1 {
    pub xi: NodeFn,
    pub xi_edge: EdgeFn,
    /// Sup-norm residual of `div Xi - Lambda nu xi`.
    pub residual: f64,
}

/// Subgradient pair witnessing an inf-eigenpair.
#[derive(Debug, Clone)]
pub struct CertificateInf {
    pub xi: NodeFn,
    pub xi_edge: EdgeFn,
    /// Sup-norm residual of `K^T Xi - Lambda xi`.
    pub residual: f64,
    /// Set when the graph carries a nonuniform node measure, which the
    /// inf-norm quotient ignores.
    pub nu_warning: bool,
}

/// Outcome of a certification attempt.
#[derive(Debug, Clone)]
pub enum CertOutcome<C> {
    Feasible(C),
    /// The feasibility LP has no solution; `phase1` is the residual mass.
    Infeasible { phase1: f64 },
    /// The supplied Lambda does not equal the Rayleigh quotient of f.
    RayleighMismatch { computed: f64 },
}

impl<C> CertOutcome<C> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CertOutcome::Feasible(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            CertOutcome::Feasible(c) => Some(c),
            _ => None,
        }
    }
}

fn sign_box(value: f64, scale: f64, lo: &mut f64, hi: &mut f64) {
    if value > SUPPORT_RTOL * scale {
        *lo = 1.0;
        *hi = 1.0;
    } else if value < -SUPPORT_RTOL * scale {
        *lo = -1.0;
        *hi = -1.0;
    } else {
        *lo = -1.0;
        *hi = 1.0;
    }
}

fn certificate_json(g: &Graph, xi: &NodeFn, xi_edge: &EdgeFn, residual: f64, feasible: bool) -> serde_json::Value {
    let xi_map: serde_json::Map<String, serde_json::Value> = g
        .interior_nodes()
        .iter()
        .enumerate()
        .map(|(i, &u)| (g.node_id(u).to_string(), json!(xi.values[i])))
        .collect();
    let mut edge_map = serde_json::Map::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let key = format!("{}->{}", g.node_id(edge.a), g.node_id(edge.b));
        edge_map.insert(key, json!(xi_edge.values[e]));
    }
    json!({
        "xi": xi_map,
        "Xi": edge_map,
        "residual": residual,
        "feasible": feasible,
    })
}

impl Certificate1 {
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        certificate_json(g, &self.xi, &self.xi_edge, self.residual, true)
    }
}

impl CertificateInf {
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let mut v = certificate_json(g, &self.xi, &self.xi_edge, self.residual, true);
        v["nu_warning"] = json!(self.nu_warning);
        v
    }
}

/// Certifies `(f, Lambda)` as a generalized 1-eigenpair.
pub fn verify_1_eigenpair(
    g: &Graph,
    f: &NodeFn,
    nlambda: f64,
) -> Result<CertOutcome<Certificate1>, OpError> {
    let computed = rayleigh_p(g, f, PValue::One)?;
    if (computed - nlambda).abs() > RAYLEIGH_MATCH_RTOL * computed.abs().max(1.0) {
        return Ok(CertOutcome::RayleighMismatch { computed });
    }
    let n = g.interior_count();
    let m = g.edge_count();
    let kf = incidence_apply(g, f);
    let fsup = f.sup_norm();
    let ksup = kf.sup_norm();

    // Variables: xi over interior nodes, then Xi over undirected edges.
    let mut lower = vec![0.0; n + m];
    let mut upper = vec![0.0; n + m];
    for i in 0..n {
        sign_box(f.values[i], fsup, &mut lower[i], &mut upper[i]);
    }
    for e in 0..m {
        sign_box(kf.values[e], ksup, &mut lower[n + e], &mut upper[n + e]);
    }

    // div Xi(u) - Lambda nu_u xi(u) = 0 at every interior node.
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0.0; n + m];
        row[i] = -nlambda * g.measure(i);
        let u = g.interior_node(i);
        for &(_, e) in g.neighbors(u) {
            let edge = g.edge(e);
            let orient = if edge.a == u { 1.0 } else { -1.0 };
            row[n + e] += -edge.omega * orient;
        }
        rows.push(row);
    }
    let b = vec![0.0; n];
    let sol = lp::feasible(&rows, &b, &lower, &upper, FEASIBILITY_TOL);
    match sol.x {
        None => Ok(CertOutcome::Infeasible { phase1: sol.phase1 }),
        Some(x) => {
            let xi = NodeFn::new(x[..n].to_vec());
            let xi_edge = EdgeFn::new(x[n..].to_vec());
            let div = divergence_apply(g, &xi_edge);
            let residual = (0..n)
                .map(|i| (div.values[i] - nlambda * g.measure(i) * xi.values[i]).abs())
                .fold(0.0, f64::max);
            Ok(CertOutcome::Feasible(Certificate1 {
                xi,
                xi_edge,
                residual,
            }))
        }
    }
}

/// Certifies `(f, Lambda)` as a generalized inf-eigenpair.
pub fn verify_inf_eigenpair(
    g: &Graph,
    f: &NodeFn,
    nlambda: f64,
) -> Result<CertOutcome<CertificateInf>, OpError> {
    let computed = rayleigh_p(g, f, PValue::Infinity)?;
    if (computed - nlambda).abs() > RAYLEIGH_MATCH_RTOL * computed.abs().max(1.0) {
        return Ok(CertOutcome::RayleighMismatch { computed });
    }
    let nu_warning = (0..g.interior_count()).any(|i| g.measure(i) != 1.0);
    let n = g.interior_count();
    let m = g.edge_count();
    let kf = incidence_apply(g, f);
    let fsup = f.sup_norm();
    let ksup = kf.sup_norm();

    // Kf = 0 means Lambda = 0: the edge-norm subgradient at 0 is the whole
    // dual ball, so Xi = 0 certifies with any admissible xi.
    if ksup == 0.0 {
        let mut xi = NodeFn::zeros(g);
        let top = (0..n)
            .max_by(|&a, &b| {
                f.values[a]
                    .abs()
                    .partial_cmp(&f.values[b].abs())
                    .unwrap()
            })
            .expect("nonzero f");
        xi.values[top] = f.values[top].signum();
        return Ok(CertOutcome::Feasible(CertificateInf {
            xi,
            xi_edge: EdgeFn::zeros(g),
            residual: 0.0,
            nu_warning,
        }));
    }

    let mut lower = vec![0.0; n + m];
    let mut upper = vec![0.0; n + m];
    let mut f_sign = vec![0.0; n];
    let mut k_sign = vec![0.0; m];
    for i in 0..n {
        if f.values[i].abs() >= fsup * (1.0 - SUPPORT_RTOL) {
            f_sign[i] = f.values[i].signum();
            if f_sign[i] > 0.0 {
                upper[i] = 1.0;
            } else {
                lower[i] = -1.0;
            }
        }
    }
    for e in 0..m {
        if ksup > 0.0 && kf.values[e].abs() >= ksup * (1.0 - SUPPORT_RTOL) {
            k_sign[e] = kf.values[e].signum();
            if k_sign[e] > 0.0 {
                upper[n + e] = 0.5;
            } else {
                lower[n + e] = -0.5;
            }
        }
    }

    // K^T Xi(u) = 2 div Xi(u) = Lambda xi(u) at every interior node,
    // plus the two normalizations ||xi||_1 = 1 and ||Xi||_1 = 1/2.
    let mut rows = Vec::with_capacity(n + 2);
    let mut b = Vec::with_capacity(n + 2);
    for i in 0..n {
        let mut row = vec![0.0; n + m];
        row[i] = -nlambda;
        let u = g.interior_node(i);
        for &(_, e) in g.neighbors(u) {
            let edge = g.edge(e);
            let orient = if edge.a == u { 1.0 } else { -1.0 };
            row[n + e] += -2.0 * edge.omega * orient;
        }
        rows.push(row);
        b.push(0.0);
    }
    let mut norm_xi = vec![0.0; n + m];
    for i in 0..n {
        norm_xi[i] = f_sign[i];
    }
    rows.push(norm_xi);
    b.push(1.0);
    let mut norm_edge = vec![0.0; n + m];
    for e in 0..m {
        norm_edge[n + e] = k_sign[e];
    }
    rows.push(norm_edge);
    b.push(0.5);

    let sol = lp::feasible(&rows, &b, &lower, &upper, FEASIBILITY_TOL);
    match sol.x {
        None => Ok(CertOutcome::Infeasible { phase1: sol.phase1 }),
        Some(x) => {
            let xi = NodeFn::new(x[..n].to_vec());
            let xi_edge = EdgeFn::new(x[n..].to_vec());
            let div = divergence_apply(g, &xi_edge);
            let residual = (0..n)
                .map(|i| (2.0 * div.values[i] - nlambda * xi.values[i]).abs())
                .fold(0.0, f64::max);
            Ok(CertOutcome::Feasible(CertificateInf {
                xi,
                xi_edge,
                residual,
                nu_warning,
            }))
        }
    }
}

/// Verifies the edge-side subgradient conditions of the dual pair emitted
/// from a 1-certificate: `(G, Lambda)` as an edge inf-eigenpair. Feasibility
/// of `K eta = Lambda zeta` with `eta` in the subgradient of the nu-weighted
/// sup norm at `D G` and `zeta` in the subgradient of the edge sup norm at G.
pub fn verify_edge_inf_dual(g: &Graph, big_g: &EdgeFn, nlambda: f64) -> Result<bool, OpError> {
    if big_g.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let n = g.interior_count();
    let m = g.edge_count();
    // D G = nu^{-1} div G.
    let div = divergence_apply(g, big_g);
    let dg = NodeFn::new(
        (0..n)
            .map(|i| div.values[i] / g.measure(i))
            .collect(),
    );
    let dg_sup = dg.sup_norm();
    let g_sup = big_g.sup_norm();

    // Variables: eta over nodes, zeta over edges.
    let mut lower = vec![0.0; n + m];
    let mut upper = vec![0.0; n + m];
    let mut eta_sign = vec![0.0; n];
    let mut zeta_sign = vec![0.0; m];
    for i in 0..n {
        if dg.values[i].abs() >= dg_sup * (1.0 - SUPPORT_RTOL) && dg_sup > 0.0 {
            eta_sign[i] = dg.values[i].signum();
            let cap = 1.0 / g.measure(i);
            if eta_sign[i] > 0.0 {
                upper[i] = cap;
            } else {
                lower[i] = -cap;
            }
        }
    }
    for e in 0..m {
        if big_g.values[e].abs() >= g_sup * (1.0 - SUPPORT_RTOL) {
            zeta_sign[e] = big_g.values[e].signum();
            if zeta_sign[e] > 0.0 {
                upper[n + e] = 1.0;
            } else {
                lower[n + e] = -1.0;
            }
        }
    }

    // K eta (e) - Lambda zeta(e) = 0 on every edge, plus the normalizations
    // sum nu |eta| = 1 and sum over undirected edges |zeta| = 1.
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let mut row = vec![0.0; n + m];
        if let Some(i) = g.interior_index(edge.a) {
            row[i] -= edge.omega;
        }
        if let Some(i) = g.interior_index(edge.b) {
            row[i] += edge.omega;
        }
        row[n + e] = -nlambda;
        rows.push(row);
        b.push(0.0);
    }
    let mut norm_eta = vec![0.0; n + m];
    for i in 0..n {
        norm_eta[i] = eta_sign[i] * g.measure(i);
    }
    rows.push(norm_eta);
    b.push(1.0);
    let mut norm_zeta = vec![0.0; n + m];
    for e in 0..m {
        norm_zeta[n + e] = zeta_sign[e];
    }
    rows.push(norm_zeta);
    b.push(1.0);

    Ok(lp::feasible(&rows, &b, &lower, &upper, FEASIBILITY_TOL).is_feasible())
}

/// Verifies the edge-side subgradient conditions of the dual pair emitted
/// from an inf-certificate: `(G, Lambda)` as an edge 1-eigenpair.
/// Feasibility of `K eta = Lambda zeta` with `eta(u) in sign(D G(u))` and
/// `zeta(e) in sign(G(e))`, all entries in [-1, 1].
pub fn verify_edge_one_dual(g: &Graph, big_g: &EdgeFn, nlambda: f64) -> Result<bool, OpError> {
    if big_g.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let n = g.interior_count();
    let m = g.edge_count();
    let div = divergence_apply(g, big_g);
    let dg = NodeFn::new((0..n).map(|i| div.values[i] / g.measure(i)).collect());
    let dg_sup = dg.sup_norm();
    let g_sup = big_g.sup_norm();

    let mut lower = vec![0.0; n + m];
    let mut upper = vec![0.0; n + m];
    for i in 0..n {
        sign_box(dg.values[i], dg_sup, &mut lower[i], &mut upper[i]);
    }
    for e in 0..m {
        sign_box(big_g.values[e], g_sup, &mut lower[n + e], &mut upper[n + e]);
    }

    let mut rows = Vec::new();
    let mut b = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let mut row = vec![0.0; n + m];
        if let Some(i) = g.interior_index(edge.a) {
            row[i] -= edge.omega;
        }
        if let Some(i) = g.interior_index(edge.b) {
            row[i] += edge.omega;
        }
        row[n + e] = -nlambda;
        rows.push(row);
        b.push(0.0);
    }
    Ok(lp::feasible(&rows, &b, &lower, &upper, FEASIBILITY_TOL).is_feasible())
}
