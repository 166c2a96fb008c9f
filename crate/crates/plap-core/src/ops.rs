//! The p-Laplacian operator family for p in (1, inf): Rayleigh quotients,
//! operator application, eigen-residuals and the gradient of the Rayleigh
//! quotient. The degenerate endpoints p = 1 and p = inf reuse the Rayleigh
//! quotients defined here; their eigenpair notions live in `degenerate`.

use serde::{Deserialize, Serialize};

use crate::error::OpError;
use crate::graph::{divergence_apply, incidence_apply, EdgeFn, Graph, NodeFn};

/// Exponent of the p-Laplacian family, including the degenerate endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PValue {
    One,
    Finite(f64),
    Infinity,
}

impl PValue {
    pub fn finite(p: f64) -> Result<PValue, OpError> {
        if p > 1.0 && p.is_finite() {
            Ok(PValue::Finite(p))
        } else {
            Err(OpError::PNotSmooth(format!("{p}")))
        }
    }

    /// Parses "1", "inf"/"infinity", or a float > 1.
    pub fn parse(s: &str) -> Result<PValue, OpError> {
        match s {
            "1" => Ok(PValue::One),
            "inf" | "Inf" | "infinity" | "oo" => Ok(PValue::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| OpError::PNotSmooth(other.to_string()))?;
                if p == 1.0 {
                    Ok(PValue::One)
                } else {
                    PValue::finite(p)
                }
            }
        }
    }

    pub fn as_finite(&self) -> Result<f64, OpError> {
        match self {
            PValue::Finite(p) => Ok(*p),
            PValue::One => Err(OpError::PNotSmooth("1".into())),
            PValue::Infinity => Err(OpError::PNotSmooth("inf".into())),
        }
    }

    /// Conjugate exponent q with 1/p + 1/q = 1.
    pub fn conjugate(&self) -> PValue {
        match self {
            PValue::One => PValue::Infinity,
            PValue::Infinity => PValue::One,
            PValue::Finite(p) => PValue::Finite(p / (p - 1.0)),
        }
    }
}

impl std::fmt::Display for PValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PValue::One => write!(f, "1"),
            PValue::Infinity => write!(f, "inf"),
            PValue::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// `|x|^{p-2} x`, continuously extended by 0 at x = 0 (also for p < 2).
#[inline]
pub fn phi_p(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(p - 1.0) * x.signum()
    }
}

/// `||f||_{nu,p}^p = sum_u nu_u |f(u)|^p`.
pub fn node_norm_pow(g: &Graph, f: &NodeFn, p: f64) -> f64 {
    f.values
        .iter()
        .enumerate()
        .map(|(i, v)| g.measure(i) * v.abs().powf(p))
        .sum()
}

/// `||G||_p^p = (1/2) sum over directed edges = sum over undirected edges`.
pub fn edge_norm_pow(gf: &EdgeFn, p: f64) -> f64 {
    gf.values.iter().map(|v| v.abs().powf(p)).sum()
}

pub fn node_norm_1(g: &Graph, f: &NodeFn) -> f64 {
    f.values
        .iter()
        .enumerate()
        .map(|(i, v)| g.measure(i) * v.abs())
        .sum()
}

pub fn edge_norm_1(gf: &EdgeFn) -> f64 {
    gf.values.iter().map(|v| v.abs()).sum()
}

/// Rayleigh quotient `R_p(f) = ||Kf||_p / ||f||_{nu,p}` for p in [1, inf].
///
/// The sup norms ignore the node measure; the p = inf quotient therefore
/// carries nu == 1 semantics regardless of the stored measure.
pub fn rayleigh_p(g: &Graph, f: &NodeFn, p: PValue) -> Result<f64, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let kf = incidence_apply(g, f);
    Ok(match p {
        PValue::One => edge_norm_1(&kf) / node_norm_1(g, f),
        PValue::Infinity => kf.sup_norm() / f.sup_norm(),
        PValue::Finite(p) => {
            (edge_norm_pow(&kf, p) / node_norm_pow(g, f, p)).powf(1.0 / p)
        }
    })
}

/// `R_p(f)^p` evaluated directly (p finite), avoiding the p-th root.
pub fn rayleigh_pow(g: &Graph, f: &NodeFn, p: f64) -> Result<f64, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let kf = incidence_apply(g, f);
    Ok(edge_norm_pow(&kf, p) / node_norm_pow(g, f, p))
}

/// Applies the graph p-Laplacian:
/// `Delta_p f(u) = sum_{v~u} omega^p |f(u)-f(v)|^{p-2} (f(u)-f(v))`
/// with f = 0 on the boundary; equals `div(|Kf|^{p-2} Kf)`.
pub fn p_laplacian_apply(g: &Graph, f: &NodeFn, p: PValue) -> Result<NodeFn, OpError> {
    let p = p.as_finite()?;
    let kf = incidence_apply(g, f);
    let flux = EdgeFn::new(kf.values.iter().map(|&x| phi_p(x, p)).collect());
    Ok(divergence_apply(g, &flux))
}

/// Relative sup-norm residual of the eigen-equation
/// `Delta_p f = lambda nu |f|^{p-2} f`, normalized by `max(1, ||Delta_p f||_inf)`.
pub fn eigen_residual(g: &Graph, f: &NodeFn, lambda: f64, p: PValue) -> Result<f64, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let pf = p.as_finite()?;
    let lap = p_laplacian_apply(g, f, p)?;
    let scale = lap.sup_norm().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..f.values.len() {
        let rhs = lambda * g.measure(i) * phi_p(f.values[i], pf);
        worst = worst.max((lap.values[i] - rhs).abs());
    }
    Ok(worst / scale)
}

/// Outcome of a gradient evaluation; for 1 < p < 2 the quotient is not C^1
/// where f or Kf vanishes, in which case the continuous extension is still
/// returned but flagged as a subgradient selection.
#[derive(Debug, Clone)]
pub struct Gradient {
    pub values: NodeFn,
    pub subgradient_selection: bool,
}

/// Gradient of `R_p^p` at f:
/// `(p / ||f||_p^p) (Delta_p f - R_p^p(f) nu |f|^{p-2} f)`.
///
/// Matches central finite differences of `rayleigh_pow` at smooth points.
pub fn rayleigh_gradient(g: &Graph, f: &NodeFn, p: PValue) -> Result<Gradient, OpError> {
    let pf = p.as_finite()?;
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let kf = incidence_apply(g, f);
    let nondifferentiable = pf < 2.0
        && (f.values.contains(&0.0) || kf.values.contains(&0.0));
    let lap = p_laplacian_apply(g, f, p)?;
    let rr = rayleigh_pow(g, f, pf)?;
    let den = node_norm_pow(g, f, pf);
    let values = NodeFn::new(
        (0..f.values.len())
            .map(|i| pf / den * (lap.values[i] - rr * g.measure(i) * phi_p(f.values[i], pf)))
            .collect(),
    );
    Ok(Gradient {
        values,
        subgradient_selection: nondifferentiable,
    })
}

/// How a candidate eigenpair was obtained or certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenKind {
    Classical,
    Generalized,
    Viscosity,
    Constructed,
}

/// Candidate eigenpair `(f, lambda)` with the normalized value
/// `Lambda = lambda^{1/p}`.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub f: NodeFn,
    pub lambda: f64,
    pub nlambda: f64,
    pub p: PValue,
    pub kind: EigenKind,
}

impl Eigenpair {
    /// Builds a pair for finite p with `lambda = R_p^p(f)`.
    pub fn from_function(g: &Graph, f: NodeFn, p: PValue, kind: EigenKind) -> Result<Self, OpError> {
        let lambda = rayleigh_pow(g, &f, p.as_finite()?)?;
        Ok(Eigenpair {
            f,
            lambda,
            nlambda: lambda.powf(1.0 / p.as_finite()?),
            p,
            kind,
        })
    }

    /// Builds a degenerate pair (p = 1 or inf) carrying only Lambda.
    pub fn degenerate(f: NodeFn, nlambda: f64, p: PValue, kind: EigenKind) -> Self {
        Eigenpair {
            f,
            lambda: nlambda,
            nlambda,
            p,
            kind,
        }
    }
}
