//! Eigenpair computation for p in (1, inf): projected gradient flow on the
//! nu-weighted p-sphere with multi-start, saddle polishing by gradient-norm
//! minimization, continuation in p, and the closed-form complete-graph
//! spectrum used as an oracle.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::SolveError;
use crate::graph::{Graph, NodeFn};
use crate::ops::{
    eigen_residual, node_norm_pow, p_laplacian_apply, phi_p, rayleigh_gradient, rayleigh_pow,
    EigenKind, Eigenpair, PValue,
};

/// Parameters of the projected gradient flow.
#[derive(Debug, Clone)]
pub struct FlowConfig {
    /// Stopping threshold on the relative eigen-residual.
    pub tol: f64,
    pub max_iters: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Backtracking line search: initial step, shrink factor, sufficient decrease.
    pub step_init: f64,
    pub step_shrink: f64,
    pub armijo: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            tol: 1e-10,
            max_iters: 50_000,
            restarts: 64,
            seed: 0,
            step_init: 1.0,
            step_shrink: 0.5,
            armijo: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowDirection {
    Descent,
    Ascent,
    /// Minimizes the squared gradient norm; converges to saddles as well.
    Saddle,
}

/// Joint evaluation of everything the flow needs at one point.
struct Eval {
    rr: f64,
    grad: Vec<f64>,
    residual: f64,
}

fn evaluate(g: &Graph, f: &NodeFn, p: f64) -> Eval {
    let lap = p_laplacian_apply(g, f, PValue::Finite(p)).expect("finite p");
    let den = node_norm_pow(g, f, p);
    let num: f64 = f.values.iter().zip(&lap.values).map(|(a, b)| a * b).sum();
    let rr = num / den;
    let scale = lap.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut grad = Vec::with_capacity(f.values.len());
    let mut worst = 0.0f64;
    for i in 0..f.values.len() {
        let defect = lap.values[i] - rr * g.measure(i) * phi_p(f.values[i], p);
        grad.push(p / den * defect);
        worst = worst.max(defect.abs());
    }
    Eval {
        rr,
        grad,
        residual: worst / scale,
    }
}

fn normalize(g: &Graph, f: &mut NodeFn, p: f64) {
    let norm = node_norm_pow(g, f, p).powf(1.0 / p);
    if norm > 0.0 {
        for v in &mut f.values {
            *v /= norm;
        }
    }
}

/// Derivative of `phi_p`: `(p-1) |x|^{p-2}`, with the x = 0 convention that
/// keeps p = 2 linear and p > 2 smooth. Callers guard p < 2 themselves.
fn dphi_p(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        if p == 2.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (p - 1.0) * x.abs().powf(p - 2.0)
    }
}

/// Damped Newton iteration on the square system
/// `[Delta_p f - lambda nu phi_p(f); ||f||_{nu,p}^p - 1] = 0`; quadratic
/// endgame after the gradient flow has located the basin. Returns the
/// polished pair when the relative residual reaches `tol`.
fn newton_polish(g: &Graph, start: &NodeFn, p: f64, tol: f64) -> Option<NodeFn> {
    let n = g.interior_count();
    let mut f = start.clone();
    normalize(g, &mut f, p);
    if p < 2.0 {
        // The Jacobian degenerates at zeros of f or Kf.
        let kf = crate::graph::incidence_apply(g, &f);
        let fs = f.sup_norm();
        let ks = kf.sup_norm();
        if f.values.iter().any(|v| v.abs() < 1e-8 * fs)
            || kf.values.iter().any(|v| v.abs() < 1e-8 * ks)
        {
            return None;
        }
    }
    let mut lambda = rayleigh_pow(g, &f, p).ok()?;

    let system = |f: &NodeFn, lambda: f64| -> (nalgebra::DVector<f64>, f64) {
        let lap = p_laplacian_apply(g, f, PValue::Finite(p)).expect("finite p");
        let mut vec = nalgebra::DVector::zeros(n + 1);
        let mut worst = 0.0f64;
        let scale = lap.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            let defect = lap.values[i] - lambda * g.measure(i) * phi_p(f.values[i], p);
            vec[i] = defect;
            worst = worst.max(defect.abs());
        }
        vec[n] = node_norm_pow(g, f, p) - 1.0;
        (vec, worst / scale)
    };

    let (mut fval, mut residual) = system(&f, lambda);
    for _ in 0..40 {
        if residual <= tol && fval[n].abs() <= 1e-12 {
            return Some(f);
        }
        // Jacobian of the eigen-system.
        let mut jac = nalgebra::DMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            let u = g.interior_node(i);
            let fu = f.values[i];
            let mut diag = 0.0;
            for &(v, e) in g.neighbors(u) {
                let edge = g.edge(e);
                let wpow = edge.omega.powf(p);
                let fv = f.at(g, v);
                let d = dphi_p(fu - fv, p) * wpow;
                diag += d;
                if let Some(j) = g.interior_index(v) {
                    jac[(i, j)] -= d;
                }
            }
            jac[(i, i)] = diag - lambda * g.measure(i) * dphi_p(fu, p);
            jac[(i, n)] = -g.measure(i) * phi_p(fu, p);
            jac[(n, i)] = p * g.measure(i) * phi_p(fu, p);
        }
        let delta = jac.lu().solve(&(-&fval))?;
        let mut alpha = 1.0;
        let norm0 = fval.norm();
        let mut advanced = false;
        while alpha > 1e-8 {
            let cand = NodeFn::new(
                (0..n)
                    .map(|i| f.values[i] + alpha * delta[i])
                    .collect(),
            );
            let cand_lambda = lambda + alpha * delta[n];
            if cand.is_zero() {
                alpha *= 0.5;
                continue;
            }
            let (cand_val, cand_res) = system(&cand, cand_lambda);
            if cand_val.norm() < norm0 * (1.0 - 1e-4 * alpha) || cand_res <= tol {
                f = cand;
                lambda = cand_lambda;
                fval = cand_val;
                residual = cand_res;
                advanced = true;
                break;
            }
            alpha *= 0.5;
        }
        if !advanced {
            return None;
        }
    }
    if residual <= tol {
        Some(f)
    } else {
        None
    }
}

/// Fixes the overall sign so the largest-magnitude entry is positive.
fn canonical_sign(f: &mut NodeFn) {
    let mut best = 0usize;
    for i in 1..f.values.len() {
        if f.values[i].abs() > f.values[best].abs() {
            best = i;
        }
    }
    if f.values[best] < 0.0 {
        for v in &mut f.values {
            *v = -*v;
        }
    }
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gradient of E = 0.5 ||grad R_p^p||_2^2 by a central finite-difference
/// Hessian-vector product.
fn grad_norm_gradient(g: &Graph, f: &NodeFn, p: f64, grad: &[f64]) -> Vec<f64> {
    let gnorm = l2_norm(grad);
    if gnorm == 0.0 {
        return vec![0.0; grad.len()];
    }
    let eps = 1e-6 * (1.0 + f.sup_norm());
    let mut fp = f.clone();
    let mut fm = f.clone();
    for i in 0..grad.len() {
        let dir = grad[i] / gnorm;
        fp.values[i] += eps * dir;
        fm.values[i] -= eps * dir;
    }
    let gp = rayleigh_gradient(g, &fp, PValue::Finite(p)).map(|gr| gr.values.values);
    let gm = rayleigh_gradient(g, &fm, PValue::Finite(p)).map(|gr| gr.values.values);
    match (gp, gm) {
        (Ok(gp), Ok(gm)) => (0..grad.len())
            .map(|i| (gp[i] - gm[i]) / (2.0 * eps) * gnorm)
            .collect(),
        _ => vec![0.0; grad.len()],
    }
}

/// Runs the projected flow from `init`; returns the converged eigenpair.
pub fn critical_point_flow(
    g: &Graph,
    p: PValue,
    init: &NodeFn,
    cfg: &FlowConfig,
    direction: FlowDirection,
) -> Result<Eigenpair, SolveError> {
    flow_impl(g, p, init, cfg, direction, false)
}

fn flow_impl(
    g: &Graph,
    p: PValue,
    init: &NodeFn,
    cfg: &FlowConfig,
    direction: FlowDirection,
    keep_positive: bool,
) -> Result<Eigenpair, SolveError> {
    let pf = p
        .as_finite()
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    if init.is_zero() {
        return Err(SolveError::Precondition("initial function is zero".into()));
    }
    let mut f = init.clone();
    normalize(g, &mut f, pf);

    let finish = |mut f: NodeFn| -> Eigenpair {
        canonical_sign(&mut f);
        let lambda = rayleigh_pow(g, &f, pf).expect("nonzero");
        Eigenpair {
            f,
            lambda,
            nlambda: lambda.powf(1.0 / pf),
            p,
            kind: EigenKind::Classical,
        }
    };

    const POLISH_THRESHOLD: f64 = 1e-5;
    // Gradient-norm descent is only a locator; Newton does the endgame, so
    // saddle runs need far fewer first-order iterations.
    let max_iters = match direction {
        FlowDirection::Saddle => cfg.max_iters.min(2_000),
        _ => cfg.max_iters,
    };
    let mut best_residual = f64::INFINITY;
    let mut next_polish_iter = 0usize;
    for iter in 0..max_iters {
        if keep_positive {
            for v in &mut f.values {
                *v = v.abs();
            }
        }
        let eval = evaluate(g, &f, pf);
        best_residual = best_residual.min(eval.residual);
        if eval.residual <= cfg.tol {
            return Ok(finish(f));
        }
        // Quadratic endgame once the flow is inside a basin. Saddle runs may
        // hand over to Newton immediately: jumping to a nearby critical
        // point is exactly what they are for.
        let threshold = match direction {
            FlowDirection::Saddle => f64::INFINITY,
            _ => POLISH_THRESHOLD,
        };
        if eval.residual <= threshold && iter >= next_polish_iter {
            if let Some(polished) = newton_polish(g, &f, pf, cfg.tol) {
                return Ok(finish(polished));
            }
            next_polish_iter = iter + 25;
        }

        let (objective, step_dir): (f64, Vec<f64>) = match direction {
            FlowDirection::Descent => (eval.rr, eval.grad.clone()),
            FlowDirection::Ascent => (-eval.rr, eval.grad.iter().map(|v| -v).collect()),
            FlowDirection::Saddle => {
                let ge = grad_norm_gradient(g, &f, pf, &eval.grad);
                (0.5 * l2_norm(&eval.grad).powi(2), ge)
            }
        };
        let dir_norm_sq = step_dir.iter().map(|v| v * v).sum::<f64>();
        if dir_norm_sq == 0.0 {
            // Stalled with a nonzero residual: nondifferentiable point or a
            // flat of the gradient-norm landscape.
            return Err(SolveError::NoConvergence(iter, best_residual));
        }

        let mut t = cfg.step_init;
        let mut accepted = false;
        while t > 1e-18 {
            let mut cand = NodeFn::new(
                (0..f.values.len())
                    .map(|i| f.values[i] - t * step_dir[i])
                    .collect(),
            );
            if cand.is_zero() {
                t *= cfg.step_shrink;
                continue;
            }
            normalize(g, &mut cand, pf);
            let cand_obj = match direction {
                FlowDirection::Descent => rayleigh_pow(g, &cand, pf).unwrap_or(f64::INFINITY),
                FlowDirection::Ascent => -rayleigh_pow(g, &cand, pf).unwrap_or(f64::NEG_INFINITY),
                FlowDirection::Saddle => {
                    let e = evaluate(g, &cand, pf);
                    0.5 * l2_norm(&e.grad).powi(2)
                }
            };
            if cand_obj <= objective - cfg.armijo * t * dir_norm_sq {
                // Monotone progress of the objective per accepted step.
                debug_assert!(cand_obj <= objective + 1e-12 * objective.abs().max(1.0));
                f = cand;
                accepted = true;
                break;
            }
            t *= cfg.step_shrink;
        }
        if !accepted {
            // Line-search stall (roundoff floor or a nonsmooth point): the
            // Newton endgame is the last chance; a point whose residual
            // already meets the acceptance threshold is still a witness.
            if let Some(polished) = newton_polish(g, &f, pf, cfg.tol) {
                return Ok(finish(polished));
            }
            if eval.residual <= RESIDUAL_ACCEPT {
                return Ok(finish(f));
            }
            return Err(SolveError::NoConvergence(iter, best_residual));
        }
    }
    if let Some(polished) = newton_polish(g, &f, pf, cfg.tol) {
        return Ok(finish(polished));
    }
    let eval = evaluate(g, &f, pf);
    if eval.residual <= RESIDUAL_ACCEPT {
        return Ok(finish(f));
    }
    Err(SolveError::NoConvergence(cfg.max_iters, best_residual))
}

/// First eigenpair: the constant kernel function when there is no boundary,
/// otherwise the strictly positive Dirichlet ground state found by descent.
pub fn ground_state(g: &Graph, p: PValue, cfg: &FlowConfig) -> Result<Eigenpair, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Precondition(
            "ground state requires a connected graph".into(),
        ));
    }
    let pf = p
        .as_finite()
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    if !g.has_boundary() {
        let mut f = NodeFn::constant(g, 1.0);
        normalize(g, &mut f, pf);
        return Ok(Eigenpair {
            f,
            lambda: 0.0,
            nlambda: 0.0,
            p,
            kind: EigenKind::Classical,
        });
    }
    let mut best: Option<Eigenpair> = None;
    for r in 0..cfg.restarts.max(1) {
        let mut rng = stream_rng(cfg.seed, r as u64);
        let init = NodeFn::new(
            (0..g.interior_count())
                .map(|_| 1.0 + 0.2 * rng.gen_range(-1.0..1.0))
                .collect(),
        );
        if let Ok(pair) = flow_impl(g, p, &init, cfg, FlowDirection::Descent, true) {
            if best.as_ref().is_none_or(|b| pair.lambda < b.lambda) {
                best = Some(pair);
            }
        }
    }
    let pair = best.ok_or(SolveError::NoConvergence(cfg.max_iters, f64::INFINITY))?;
    if pair.f.values.iter().any(|&v| v <= 0.0) {
        return Err(SolveError::Precondition(
            "descent did not reach a positive ground state".into(),
        ));
    }
    Ok(pair)
}

/// One critical value found by the flow with its best witness.
#[derive(Debug, Clone)]
pub struct CriticalValue {
    pub lambda: f64,
    pub nlambda: f64,
    pub witness: Eigenpair,
    pub residual: f64,
}

/// Deduplicated set of critical values found by multi-start flows. A heuristic
/// under-approximation of the spectrum; no completeness is claimed.
#[derive(Debug, Clone)]
pub struct SpectrumEstimate {
    pub values: Vec<CriticalValue>,
    pub dedup_tol: f64,
}

impl SpectrumEstimate {
    pub fn lambdas(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.lambda).collect()
    }

    pub fn contains(&self, lambda: f64, rtol: f64) -> bool {
        self.values
            .iter()
            .any(|v| (v.lambda - lambda).abs() <= rtol * lambda.abs().max(1.0))
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_unit(g: &Graph, p: f64, rng: &mut ChaCha8Rng) -> NodeFn {
    let mut f = NodeFn::new(
        (0..g.interior_count())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect(),
    );
    if f.is_zero() {
        f.values[0] = 1.0;
    }
    normalize(g, &mut f, p);
    f
}

const RESIDUAL_ACCEPT: f64 = 1e-8;

/// Up to `cap` witnesses pairwise distinct modulo sign (sup distance 1e-3
/// after sup normalization), in deterministic order.
fn distinct_representatives(g: &Graph, found: &[Eigenpair], cap: usize) -> Vec<NodeFn> {
    let _ = g;
    let mut reps: Vec<NodeFn> = Vec::new();
    for pair in found {
        let sup = pair.f.sup_norm();
        if sup == 0.0 {
            continue;
        }
        let mut f = NodeFn::new(pair.f.values.iter().map(|v| v / sup).collect());
        canonical_sign(&mut f);
        let fresh = reps.iter().all(|r| {
            let d_plus = f
                .values
                .iter()
                .zip(&r.values)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            let d_minus = f
                .values
                .iter()
                .zip(&r.values)
                .fold(0.0f64, |m, (a, b)| m.max((a + b).abs()));
            d_plus.min(d_minus) > 1e-3
        });
        if fresh {
            reps.push(f);
            if reps.len() >= cap {
                break;
            }
        }
    }
    reps
}

fn merge_candidates(
    g: &Graph,
    p: PValue,
    found: Vec<Eigenpair>,
    dedup_tol: f64,
) -> Vec<CriticalValue> {
    let mut values: Vec<CriticalValue> = Vec::new();
    for pair in found {
        let residual = match eigen_residual(g, &pair.f, pair.lambda, p) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if residual > RESIDUAL_ACCEPT {
            continue;
        }
        match values
            .iter_mut()
            .find(|v| (v.lambda - pair.lambda).abs() <= dedup_tol * pair.lambda.abs().max(1.0))
        {
            Some(v) => {
                if residual < v.residual {
                    *v = CriticalValue {
                        lambda: pair.lambda,
                        nlambda: pair.nlambda,
                        witness: pair,
                        residual,
                    };
                }
            }
            None => values.push(CriticalValue {
                lambda: pair.lambda,
                nlambda: pair.nlambda,
                witness: pair,
                residual,
            }),
        }
    }
    values.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());
    values
}

/// Multi-start estimate of the spectrum: descent, ascent and saddle-polish
/// runs from seeded random points, then deflation rounds polishing
/// combinations of the witnesses found so far.
pub fn estimate_spectrum(
    g: &Graph,
    p: PValue,
    cfg: &FlowConfig,
) -> Result<SpectrumEstimate, SolveError> {
    estimate_spectrum_warm(g, p, cfg, &[])
}

/// Spectrum estimate with extra warm-start functions (used by `p_scan`).
pub fn estimate_spectrum_warm(
    g: &Graph,
    p: PValue,
    cfg: &FlowConfig,
    warm: &[NodeFn],
) -> Result<SpectrumEstimate, SolveError> {
    let pf = p
        .as_finite()
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    let dedup_tol = 1e-6;

    // Independent seeded restarts; the merge is order-deterministic.
    let mut found: Vec<Eigenpair> = (0..cfg.restarts)
        .into_par_iter()
        .flat_map_iter(|r| {
            let mut rng = stream_rng(cfg.seed, r as u64);
            let init = random_unit(g, pf, &mut rng);
            let mut out = Vec::new();
            for dir in [
                FlowDirection::Descent,
                FlowDirection::Ascent,
                FlowDirection::Saddle,
            ] {
                if let Ok(pair) = critical_point_flow(g, p, &init, cfg, dir) {
                    out.push(pair);
                }
            }
            out
        })
        .collect();

    if !g.has_boundary() && g.is_connected() {
        let mut f = NodeFn::constant(g, 1.0);
        normalize(g, &mut f, pf);
        found.push(Eigenpair {
            f,
            lambda: 0.0,
            nlambda: 0.0,
            p,
            kind: EigenKind::Classical,
        });
    }
    let newton_candidate = |init: &NodeFn| -> Option<Eigenpair> {
        let polished = newton_polish(g, init, pf, cfg.tol)?;
        let mut polished = polished;
        canonical_sign(&mut polished);
        let lambda = rayleigh_pow(g, &polished, pf).ok()?;
        Some(Eigenpair {
            f: polished,
            lambda,
            nlambda: lambda.powf(1.0 / pf),
            p,
            kind: EigenKind::Classical,
        })
    };

    for init in warm {
        if let Ok(pair) = critical_point_flow(g, p, init, cfg, FlowDirection::Descent) {
            found.push(pair);
        }
        if let Some(pair) = newton_candidate(init) {
            found.push(pair);
        }
    }

    // Linear eigenbasis as continuation seeds: exact at p = 2 and good
    // basins elsewhere, which keeps low-index saddles from being missed at
    // modest restart counts.
    let basis = crate::linear::laplacian_eigenbasis(g);
    let seeded: Vec<Eigenpair> = basis
        .par_iter()
        .flat_map_iter(|init| {
            let mut out = Vec::new();
            if let Some(pair) = newton_candidate(init) {
                out.push(pair);
            }
            if let Ok(pair) = critical_point_flow(g, p, init, cfg, FlowDirection::Saddle) {
                out.push(pair);
            }
            out
        })
        .collect();
    found.extend(seeded);

    // Deflation: Newton-polish signed combinations of distinct witnesses
    // (several representatives per eigenvalue, so that differences inside a
    // symmetry orbit are explored too).
    for round in 0..2 {
        let witnesses = distinct_representatives(g, &found, 16);
        let mut combos: Vec<NodeFn> = Vec::new();
        for i in 0..witnesses.len() {
            for j in (i + 1)..witnesses.len() {
                for (ci, cj) in [(1.0, -1.0), (1.0, 1.0), (1.0, -0.5), (0.5, 1.0)] {
                    let f = NodeFn::new(
                        (0..g.interior_count())
                            .map(|k| ci * witnesses[i].values[k] + cj * witnesses[j].values[k])
                            .collect(),
                    );
                    if !f.is_zero() {
                        combos.push(f);
                    }
                }
            }
        }
        let mut rng = stream_rng(cfg.seed, 500_000 + round);
        for w in &witnesses {
            let mut f = w.clone();
            for v in &mut f.values {
                *v += 0.05 * rng.gen_range(-1.0..1.0);
            }
            combos.push(f);
        }
        let polished: Vec<Eigenpair> = combos
            .par_iter()
            .flat_map_iter(|init| newton_candidate(init).into_iter())
            .collect();
        found.extend(polished);
    }

    Ok(SpectrumEstimate {
        values: merge_candidates(g, p, found, dedup_tol),
        dedup_tol,
    })
}

/// One row of a continuation scan over p.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub p: f64,
    /// First `k_track` distinct critical values, ascending.
    pub lambdas: Vec<f64>,
    /// `(|E|/2)^{-1/p} lambda^{1/p}`: nondecreasing in p for variational values.
    pub norm_edge: Vec<f64>,
    /// `|nu|^{1/p} lambda^{1/p}`: nonincreasing in p for variational values.
    pub norm_mass: Vec<f64>,
}

/// Continuation scan: estimates the spectrum at each p on the grid, warm
/// starting from the previous witnesses, and reports the two normalized
/// sequences of the tracked values.
pub fn p_scan(
    g: &Graph,
    p_grid: &[f64],
    k_track: usize,
    cfg: &FlowConfig,
) -> Result<Vec<ScanRow>, SolveError> {
    if p_grid.windows(2).any(|w| w[0] >= w[1]) || p_grid.iter().any(|&p| p <= 1.0) {
        return Err(SolveError::Precondition(
            "p grid must be strictly increasing with all entries > 1".into(),
        ));
    }
    let undirected_edges = g.edge_count() as f64;
    let total_mass = g.total_measure();
    let mut rows = Vec::new();
    let mut warm: Vec<NodeFn> = Vec::new();
    for &p in p_grid {
        let est = estimate_spectrum_warm(g, PValue::Finite(p), cfg, &warm)?;
        let lambdas: Vec<f64> = est.lambdas().into_iter().take(k_track).collect();
        let norm_edge = lambdas
            .iter()
            .map(|l| undirected_edges.powf(-1.0 / p) * l.powf(1.0 / p))
            .collect();
        let norm_mass = lambdas
            .iter()
            .map(|l| total_mass.powf(1.0 / p) * l.powf(1.0 / p))
            .collect();
        warm = est.values.iter().map(|v| v.witness.f.clone()).collect();
        rows.push(ScanRow {
            p,
            lambdas,
            norm_edge,
            norm_mass,
        });
    }
    Ok(rows)
}

/// One closed-form complete-graph eigenvalue class.
#[derive(Debug, Clone)]
pub struct CompleteEigen {
    pub lambda: f64,
    pub alpha: usize,
    pub beta: usize,
    pub witness: NodeFn,
}

/// All eigenvalues of the unweighted complete graph K_N without boundary:
/// `lambda = N - a - b + (a^{1/(p-1)} + b^{1/(p-1)})^{p-1}` over unordered
/// pairs `a <= b` with `a + b <= N`, plus 0. Witnesses are two-level step
/// functions on canonical index sets.
pub fn complete_graph_spectrum(
    g: &Graph,
    p: PValue,
) -> Result<Vec<CompleteEigen>, SolveError> {
    let n = g.interior_count();
    if n < 2 {
        return Err(SolveError::Precondition("K_N requires N >= 2".into()));
    }
    if g.has_boundary() || !g.is_unweighted() || g.edge_count() != n * (n - 1) / 2 {
        return Err(SolveError::Precondition(
            "complete-graph spectrum needs the unweighted boundaryless K_N".into(),
        ));
    }
    let pf = p
        .as_finite()
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    let q = 1.0 / (pf - 1.0);
    let mut out = vec![CompleteEigen {
        lambda: 0.0,
        alpha: 0,
        beta: 0,
        witness: NodeFn::constant(g, 1.0),
    }];
    for alpha in 1..n {
        for beta in alpha..n {
            if alpha + beta > n {
                break;
            }
            let lambda = (n - alpha - beta) as f64
                + ((alpha as f64).powf(q) + (beta as f64).powf(q)).powf(pf - 1.0);
            let a = (beta as f64).powf(q);
            let b = (alpha as f64).powf(q);
            let mut w = NodeFn::zeros(g);
            for i in 0..alpha {
                w.values[i] = a;
            }
            for i in alpha..alpha + beta {
                w.values[i] = -b;
            }
            out.push(CompleteEigen {
                lambda,
                alpha,
                beta,
                witness: w,
            });
        }
    }
    out.sort_by(|x, y| x.lambda.partial_cmp(&y.lambda).unwrap());
    Ok(out)
}
