//! Shortest-path witnesses of infinity eigenpairs: a maximal-slope shortest
//! path between sup-norm attainers (or boundary nodes) characterizes the
//! eigenpair, and on unweighted graphs the SP_l linear-profile condition
//! characterizes eigenfunctions of 2/l.

use serde::Serialize;

use crate::error::OpError;
use crate::graph::{incidence_apply, DistanceOracle, Graph, NodeFn, NodeIdx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathEndpoint {
    /// Endpoint attains the sup norm of f.
    Max,
    Boundary,
}

/// A shortest path along which Kf is constantly at its signed maximum.
#[derive(Debug, Clone, Serialize)]
pub struct SpWitness {
    /// Node ids along the path.
    pub path: Vec<String>,
    pub start: PathEndpoint,
    pub end: PathEndpoint,
    /// `(|f(u_0)| + |f(u_n)|) / (length * ||f||_inf)`.
    pub nlambda: f64,
}

const REL_TOL: f64 = 1e-9;

/// Searches for a shortest path `u_0 .. u_n` with endpoints in
/// `V_max(f) union B` and `Kf(u_i, u_{i+1}) = ||Kf||_inf` on every edge.
/// Returns the first witness in node order, or None.
pub fn sp_witness(g: &Graph, f: &NodeFn) -> Result<Option<SpWitness>, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let kf = incidence_apply(g, f);
    let ksup = kf.sup_norm();
    if ksup == 0.0 {
        return Err(OpError::Precondition(
            "function is constant: no nontrivial shortest-path witness".into(),
        ));
    }
    let fsup = f.sup_norm();
    let oracle = DistanceOracle::new(g);

    // Directed maximal-slope edges: following them increases f at top speed.
    let mut out_edges: Vec<Vec<(NodeIdx, f64)>> = vec![Vec::new(); g.node_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        let v = kf.values[e];
        if v.abs() >= ksup * (1.0 - REL_TOL) {
            let len = 1.0 / edge.omega;
            if v > 0.0 {
                out_edges[edge.a].push((edge.b, len));
            } else {
                out_edges[edge.b].push((edge.a, len));
            }
        }
    }

    let endpoint_kind = |u: NodeIdx| -> Option<PathEndpoint> {
        if g.is_boundary(u) {
            Some(PathEndpoint::Boundary)
        } else {
            let val = f.at(g, u).abs();
            if val >= fsup * (1.0 - REL_TOL) {
                Some(PathEndpoint::Max)
            } else {
                None
            }
        }
    };
    let terminals: Vec<NodeIdx> = (0..g.node_count())
        .filter(|&u| endpoint_kind(u).is_some())
        .collect();

    for &s in &terminals {
        for &t in &terminals {
            if s == t {
                continue;
            }
            let target = oracle.distance(s, t);
            if !target.is_finite() {
                continue;
            }
            // DFS along maximal edges; accept on reaching t at exactly the
            // shortest-path length.
            let mut path = vec![s];
            if dfs(&out_edges, s, t, 0.0, target, &mut path) {
                let length = target;
                let nlambda = (f.at(g, s).abs() + f.at(g, t).abs()) / (length * fsup);
                return Ok(Some(SpWitness {
                    path: path.iter().map(|&u| g.node_id(u).to_string()).collect(),
                    start: endpoint_kind(s).unwrap(),
                    end: endpoint_kind(t).unwrap(),
                    nlambda,
                }));
            }
        }
    }
    Ok(None)
}

fn dfs(
    out_edges: &[Vec<(NodeIdx, f64)>],
    u: NodeIdx,
    t: NodeIdx,
    len: f64,
    target: f64,
    path: &mut Vec<NodeIdx>,
) -> bool {
    if u == t {
        return (len - target).abs() <= REL_TOL * target.max(1.0);
    }
    if len > target * (1.0 + REL_TOL) {
        return false;
    }
    for &(v, step) in &out_edges[u] {
        if path.contains(&v) {
            continue;
        }
        path.push(v);
        if dfs(out_edges, v, t, len + step, target, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// SP_l condition on unweighted boundaryless graphs: true iff some shortest
/// path of length `l` realizes the linear profile
/// `f(v_i) = (1 - 2i/l) ||f||_inf` and every edge increment stays within
/// `(2/l) ||f||_inf`.
pub fn sp_l_check(g: &Graph, f: &NodeFn, l: usize) -> Result<bool, OpError> {
    if !g.is_unweighted() || g.has_boundary() {
        return Err(OpError::Precondition(
            "the SP_l condition is stated for unweighted graphs without boundary".into(),
        ));
    }
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let oracle = DistanceOracle::new(g);
    let all: Vec<NodeIdx> = (0..g.node_count()).collect();
    let diam = oracle.diameter_over(&all);
    if l < 1 || (l as f64) > diam + REL_TOL {
        return Err(OpError::Precondition(format!(
            "l must satisfy 1 <= l <= diam = {diam}, got {l}"
        )));
    }
    let fsup = f.sup_norm();
    let step = 2.0 / l as f64 * fsup;

    // Global increment bound.
    let kf = incidence_apply(g, f);
    if kf.values.iter().any(|v| v.abs() > step * (1.0 + REL_TOL)) {
        return Ok(false);
    }

    // Linear profile along some shortest path of length l.
    let profile: Vec<f64> = (0..=l).map(|i| (1.0 - 2.0 * i as f64 / l as f64) * fsup).collect();
    let matches = |u: NodeIdx, i: usize| (f.at(g, u) - profile[i]).abs() <= REL_TOL * fsup;
    for start in 0..g.node_count() {
        if !matches(start, 0) {
            continue;
        }
        let mut path = vec![start];
        if profile_dfs(g, &oracle, f, &profile, start, &mut path) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn profile_dfs(
    g: &Graph,
    oracle: &DistanceOracle,
    f: &NodeFn,
    profile: &[f64],
    start: NodeIdx,
    path: &mut Vec<NodeIdx>,
) -> bool {
    let depth = path.len() - 1;
    if depth == profile.len() - 1 {
        // Shortest-path requirement between the endpoints.
        return (oracle.distance(start, *path.last().unwrap()) - depth as f64).abs() < 1e-9;
    }
    let u = *path.last().unwrap();
    let fsup = f.sup_norm();
    for &(v, _) in g.neighbors(u) {
        if path.contains(&v) {
            continue;
        }
        if (f.at(g, v) - profile[depth + 1]).abs() <= REL_TOL * fsup
            && oracle.distance(start, v) >= (depth + 1) as f64 - 1e-9
        {
            path.push(v);
            if profile_dfs(g, oracle, f, profile, start, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}
