//! Constructors of degenerate eigenfunctions: distance cones for p = inf,
//! random elements of cone spans, piecewise-constant 1-eigenfunction
//! families over nodal domains, and the perfect-nodal constructions on
//! unweighted graphs.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::subgradient::{verify_1_eigenpair, CertOutcome};
use crate::error::OpError;
use crate::geometry::independence_alpha_with_anchor;
use crate::graph::{DistanceOracle, Graph, NodeFn, NodeIdx};
use crate::nodal::{nodal_domains, Sign};
use crate::ops::{EigenKind, Eigenpair, PValue};

const DIST_TOL: f64 = 1e-9;

/// Cone profile `f_w(v) = max(1 - Lambda d(v, w), 0)` on interior nodes.
fn cone(g: &Graph, oracle: &DistanceOracle, center: NodeIdx, nlambda: f64) -> NodeFn {
    NodeFn::new(
        g.interior_nodes()
            .iter()
            .map(|&u| (1.0 - nlambda * oracle.distance(u, center)).max(0.0))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy)]
pub enum ConeCenters {
    /// One center; requires a boundary. `Lambda = 1 / d_B(u)`.
    Single(NodeIdx),
    /// Two centers at distance d with `d/2 <= min(d_B)`. `Lambda = 2 / d`.
    Pair(NodeIdx, NodeIdx),
}

/// Builds the distance-cone eigenfunction; it passes the inf-eigenpair
/// certificate by construction.
pub fn cone_eigenfunction(g: &Graph, centers: ConeCenters) -> Result<Eigenpair, OpError> {
    let oracle = DistanceOracle::new(g);
    let (f, nlambda) = match centers {
        ConeCenters::Single(u) => {
            if g.is_boundary(u) {
                return Err(OpError::Precondition("center must be interior".into()));
            }
            let db = oracle.boundary_distance(u);
            if !db.is_finite() {
                return Err(OpError::Precondition(
                    "single-center cone requires a reachable boundary".into(),
                ));
            }
            let nlambda = 1.0 / db;
            (cone(g, &oracle, u, nlambda), nlambda)
        }
        ConeCenters::Pair(v1, v2) => {
            if g.is_boundary(v1) || g.is_boundary(v2) {
                return Err(OpError::Precondition("centers must be interior".into()));
            }
            let d = oracle.distance(v1, v2);
            if !d.is_finite() || d == 0.0 {
                return Err(OpError::Precondition(
                    "pair centers must be distinct and connected".into(),
                ));
            }
            let slack = oracle
                .boundary_distance(v1)
                .min(oracle.boundary_distance(v2));
            if d / 2.0 > slack + DIST_TOL {
                return Err(OpError::Precondition(format!(
                    "pair at distance {d} exceeds the boundary slack {slack}"
                )));
            }
            let nlambda = 2.0 / d;
            let f1 = cone(g, &oracle, v1, nlambda);
            let f2 = cone(g, &oracle, v2, nlambda);
            let f = NodeFn::new(
                f1.values
                    .iter()
                    .zip(&f2.values)
                    .map(|(a, b)| a - b)
                    .collect(),
            );
            (f, nlambda)
        }
    };
    Ok(Eigenpair::degenerate(
        f,
        nlambda,
        PValue::Infinity,
        EigenKind::Constructed,
    ))
}

/// Random nonzero elements of the cone span of an inf-eigenvalue: pairs
/// `(v_{2i-1}, v_{2i})` at exact distance `2/Lambda` and singles at exact
/// boundary distance `1/Lambda`, all mutually `2/Lambda` apart.
pub fn inf_eigenspace_span(
    g: &Graph,
    pairs: &[(NodeIdx, NodeIdx)],
    singles: &[NodeIdx],
    nlambda: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<Eigenpair>, OpError> {
    let oracle = DistanceOracle::new(g);
    let r = 1.0 / nlambda;
    let mut points: Vec<NodeIdx> = Vec::new();
    for &(a, b) in pairs {
        let d = oracle.distance(a, b);
        if (d - 2.0 * r).abs() > DIST_TOL * (2.0 * r) {
            return Err(OpError::Precondition(format!(
                "pair distance {} must equal 2/Lambda = {}",
                d,
                2.0 * r
            )));
        }
        for v in [a, b] {
            if oracle.boundary_distance(v) < r - DIST_TOL {
                return Err(OpError::Precondition(
                    "pair point too close to the boundary".into(),
                ));
            }
            points.push(v);
        }
    }
    for &u in singles {
        let db = oracle.boundary_distance(u);
        if !db.is_finite() || (db - r).abs() > DIST_TOL * r {
            return Err(OpError::Precondition(format!(
                "single center boundary distance must equal 1/Lambda = {r}"
            )));
        }
        points.push(u);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(OpError::Precondition("duplicate centers".into()));
            }
            let d = oracle.distance(points[i], points[j]);
            if d < 2.0 * r - DIST_TOL {
                return Err(OpError::Precondition(format!(
                    "centers {} and {} at distance {d} < 2/Lambda = {}",
                    g.node_id(points[i]),
                    g.node_id(points[j]),
                    2.0 * r
                )));
            }
        }
    }

    let pair_cones: Vec<(NodeFn, NodeFn)> = pairs
        .iter()
        .map(|&(a, b)| (cone(g, &oracle, a, nlambda), cone(g, &oracle, b, nlambda)))
        .collect();
    let single_cones: Vec<NodeFn> = singles
        .iter()
        .map(|&u| cone(g, &oracle, u, nlambda))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let ts: Vec<f64> = (0..pairs.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let tbars: Vec<f64> = (0..singles.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if ts.iter().chain(&tbars).all(|t| t.abs() < 0.05) {
            continue;
        }
        let mut f = NodeFn::zeros(g);
        for (k, (fa, fb)) in pair_cones.iter().enumerate() {
            for i in 0..f.values.len() {
                f.values[i] += ts[k] * (fa.values[i] - fb.values[i]);
            }
        }
        for (k, fu) in single_cones.iter().enumerate() {
            for i in 0..f.values.len() {
                f.values[i] += tbars[k] * fu.values[i];
            }
        }
        out.push(Eigenpair::degenerate(
            f,
            nlambda,
            PValue::Infinity,
            EigenKind::Constructed,
        ));
    }
    Ok(out)
}

/// Piecewise-constant element of the 1-eigenspace spanned by the strong
/// nodal domains of a certified 1-eigenpair:
/// `t sum_i alpha_i chi_{A_i^+}/||chi|| - (1-t) sum_j beta_j chi_{A_j^-}/||chi||`.
pub fn one_lap_nodal_generators(
    g: &Graph,
    f: &NodeFn,
    nlambda: f64,
    t: f64,
    alphas: &[f64],
    betas: &[f64],
) -> Result<NodeFn, OpError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(OpError::Precondition("t must lie in [0, 1]".into()));
    }
    match verify_1_eigenpair(g, f, nlambda)? {
        CertOutcome::Feasible(_) => {}
        CertOutcome::RayleighMismatch { computed } => {
            return Err(OpError::Precondition(format!(
                "base pair fails: Lambda != R_1(f) = {computed}"
            )));
        }
        CertOutcome::Infeasible { .. } => {
            return Err(OpError::Precondition(
                "base pair is not a certified 1-eigenpair".into(),
            ));
        }
    }
    let report = nodal_domains(g, f)?;
    let positive: Vec<&Vec<usize>> = report
        .strong
        .iter()
        .filter(|d| d.sign == Sign::Positive)
        .map(|d| &d.nodes)
        .collect();
    let negative: Vec<&Vec<usize>> = report
        .strong
        .iter()
        .filter(|d| d.sign == Sign::Negative)
        .map(|d| &d.nodes)
        .collect();

    let check_weights = |w: &[f64], count: usize, active: bool, side: &str| -> Result<(), OpError> {
        if !active && w.is_empty() {
            return Ok(());
        }
        if w.iter().any(|&x| x < 0.0) {
            return Err(OpError::Precondition(format!("{side} weights must be nonnegative")));
        }
        if active && count == 0 {
            return Err(OpError::Precondition(format!(
                "no {side} strong nodal domain while its coefficient is nonzero"
            )));
        }
        if active && w.len() != count {
            return Err(OpError::Precondition(format!(
                "need one {side} weight per domain ({count}), got {}",
                w.len()
            )));
        }
        if active && (w.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(OpError::Precondition(format!("{side} weights must sum to 1")));
        }
        Ok(())
    };
    check_weights(alphas, positive.len(), t > 0.0, "positive")?;
    check_weights(betas, negative.len(), t < 1.0, "negative")?;

    let mut out = NodeFn::zeros(g);
    if t > 0.0 {
        for (k, domain) in positive.iter().enumerate() {
            let mass: f64 = domain.iter().map(|&i| g.measure(i)).sum();
            for &i in domain.iter() {
                out.values[i] += t * alphas[k] / mass;
            }
        }
    }
    if t < 1.0 {
        for (k, domain) in negative.iter().enumerate() {
            let mass: f64 = domain.iter().map(|&i| g.measure(i)).sum();
            for &i in domain.iter() {
                out.values[i] -= (1.0 - t) * betas[k] / mass;
            }
        }
    }
    Ok(out)
}

/// Perfect-nodal eigenfunction for `Lambda = 2/l` on an unweighted graph
/// without boundary, built from a maximum l-independent set with one pair at
/// exact distance l. For even l the perfect nodal count is alpha_l; for odd
/// l it is at least alpha_l minus the number of independent cycles.
pub fn perfect_nodal_constructor(g: &Graph, l: usize) -> Result<Eigenpair, OpError> {
    if !g.is_unweighted() || g.has_boundary() {
        return Err(OpError::Precondition(
            "perfect-nodal construction is stated for unweighted graphs without boundary".into(),
        ));
    }
    if l == 0 {
        return Err(OpError::Precondition("l must be at least 1".into()));
    }
    let oracle = DistanceOracle::new(g);
    let (_, centers) = independence_alpha_with_anchor(g, &oracle, l as f64)
        .map_err(|e| OpError::Precondition(e.to_string()))?
        .ok_or_else(|| {
            OpError::Precondition(format!(
                "no maximum {l}-independent set realizes a pair at exact distance {l}"
            ))
        })?;
    let nlambda = 2.0 / l as f64;

    let f = if l.is_multiple_of(2) {
        // Anchor pair signed, all remaining cones positive.
        let mut f = NodeFn::zeros(g);
        for (k, &c) in centers.iter().enumerate() {
            let sign = if k == 1 { -1.0 } else { 1.0 };
            let fc = cone(g, &oracle, c, nlambda);
            for i in 0..f.values.len() {
                f.values[i] += sign * fc.values[i];
            }
        }
        f
    } else {
        // Spanning-forest 2-coloring of the cone-adjacency graph, keeping the
        // anchor pair adjacent so the SP_l profile is realized.
        let half = l as f64 / 2.0;
        let balls: Vec<Vec<NodeIdx>> = centers
            .iter()
            .map(|&c| {
                (0..g.node_count())
                    .filter(|&u| oracle.distance(u, c) < half)
                    .collect()
            })
            .collect();
        let k = centers.len();
        let mut adjacent = vec![vec![false; k]; k];
        for edge in g.edges() {
            for i in 0..k {
                for j in (i + 1)..k {
                    let in_i = balls[i].contains(&edge.a) || balls[i].contains(&edge.b);
                    let in_j = balls[j].contains(&edge.a) || balls[j].contains(&edge.b);
                    if in_i && in_j {
                        adjacent[i][j] = true;
                        adjacent[j][i] = true;
                    }
                }
            }
        }
        // BFS forest rooted at the anchor; the anchor edge (0,1) goes first.
        let mut sign = vec![0.0f64; k];
        sign[0] = 1.0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..k {
                if adjacent[i][j] && sign[j] == 0.0 {
                    sign[j] = -sign[i];
                    queue.push_back(j);
                }
            }
            // Seed remaining components positively.
            if queue.is_empty() {
                if let Some(j) = (0..k).find(|&j| sign[j] == 0.0) {
                    sign[j] = 1.0;
                    queue.push_back(j);
                }
            }
        }
        let mut f = NodeFn::zeros(g);
        for (idx, &c) in centers.iter().enumerate() {
            let fc = cone(g, &oracle, c, nlambda);
            for i in 0..f.values.len() {
                f.values[i] += sign[idx] * fc.values[i];
            }
        }
        f
    };
    Ok(Eigenpair::degenerate(
        f,
        nlambda,
        PValue::Infinity,
        EigenKind::Constructed,
    ))
}

/// The certified 1-Laplacian eigenvalue set at desk scale: every eigenvalue
/// is the isoperimetric constant of a strong nodal domain, so indicator
/// functions of connected subsets exhaust the value set. Returns certified
/// `(Lambda, witness)` pairs in ascending order, one witness per value.
pub fn certified_one_spectrum(g: &Graph, cap: usize) -> Result<Vec<(f64, NodeFn)>, OpError> {
    let n = g.interior_count();
    if n > cap {
        return Err(OpError::Precondition(format!(
            "certified 1-spectrum enumeration supports up to {cap} interior nodes, got {n}"
        )));
    }
    let mut by_value: Vec<(f64, Vec<Vec<usize>>)> = Vec::new();
    for mask in 1u64..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if g.components_of(&set).len() != 1 {
            continue;
        }
        let f = NodeFn::indicator(g, &set);
        let c = crate::ops::rayleigh_p(g, &f, PValue::One)?;
        match by_value
            .iter_mut()
            .find(|(v, _)| (*v - c).abs() <= 1e-9 * v.abs().max(1.0))
        {
            Some((_, sets)) => sets.push(set),
            None => by_value.push((c, vec![set])),
        }
    }
    by_value.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut out = Vec::new();
    for (value, sets) in by_value {
        for set in sets {
            let f = NodeFn::indicator(g, &set);
            if let CertOutcome::Feasible(_) = verify_1_eigenpair(g, &f, value)? {
                out.push((value, f));
                break;
            }
        }
    }
    Ok(out)
}

/// The certified inf-Laplacian eigenvalue set: candidate values come from
/// half pairwise distances and boundary distances (the shortest-path
/// characterization allows no others), each certified through a cone witness
/// and the subgradient LP. Returns certified `(Lambda, witness)` pairs.
pub fn certified_inf_spectrum(g: &Graph) -> Result<Vec<(f64, NodeFn)>, OpError> {
    use super::subgradient::verify_inf_eigenpair;
    let oracle = DistanceOracle::new(g);
    let interior = g.interior_nodes();
    let mut out: Vec<(f64, NodeFn)> = Vec::new();
    let push_certified = |nlambda: f64, f: NodeFn, out: &mut Vec<(f64, NodeFn)>| {
        if out
            .iter()
            .any(|(v, _)| (*v - nlambda).abs() <= 1e-9 * nlambda.abs().max(1.0))
        {
            return;
        }
        if let Ok(CertOutcome::Feasible(_)) = verify_inf_eigenpair(g, &f, nlambda) {
            out.push((nlambda, f));
        }
    };
    if !g.has_boundary() && g.is_connected() {
        push_certified(0.0, NodeFn::constant(g, 1.0), &mut out);
    }
    for (i, &u) in interior.iter().enumerate() {
        let db = oracle.boundary_distance(u);
        if db.is_finite() {
            if let Ok(pair) = cone_eigenfunction(g, ConeCenters::Single(u)) {
                push_certified(1.0 / db, pair.f, &mut out);
            }
        }
        for &v in &interior[i + 1..] {
            let d = oracle.distance(u, v);
            if !d.is_finite() || d == 0.0 {
                continue;
            }
            if let Ok(pair) = cone_eigenfunction(g, ConeCenters::Pair(u, v)) {
                push_certified(2.0 / d, pair.f, &mut out);
            }
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(out)
}
