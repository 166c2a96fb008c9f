//! Constrained linear reformulation of the p-Laplacian eigen-equation: the
//! generalized eigenvalue problem of the (theta, nu*)-weighted Laplacian,
//! used to assign a linear index and multiplicity to nonlinear eigenpairs.

use nalgebra::{DMatrix, DVector};

use crate::error::OpError;
use crate::graph::{incidence_apply, EdgeFn, Graph, NodeFn};
use crate::ops::{eigen_residual, Eigenpair};

/// All generalized eigenvalues of `L_theta f = lambda nu* f`, nondecreasing,
/// with `+inf` entries for the directions killed by zero nu* weights.
#[derive(Debug, Clone)]
pub struct WeightedLinearSpectrum {
    pub eigenvalues: Vec<f64>,
}

impl WeightedLinearSpectrum {
    /// Position of `lambda` in the spectrum: `(h, m)` with
    /// `lambda_{h-m+1} = ... = lambda_h = lambda` (1-based, rtol clustering).
    pub fn locate(&self, lambda: f64, rtol: f64) -> Option<(usize, usize)> {
        let close = |x: f64| (x - lambda).abs() <= rtol * lambda.abs().max(1.0);
        let mut first = None;
        let mut last = None;
        for (k, &ev) in self.eigenvalues.iter().enumerate() {
            if ev.is_finite() && close(ev) {
                if first.is_none() {
                    first = Some(k);
                }
                last = Some(k);
            }
        }
        match (first, last) {
            (Some(a), Some(b)) => Some((b + 1, b - a + 1)),
            _ => None,
        }
    }

    pub fn finite_count(&self) -> usize {
        self.eigenvalues.iter().filter(|v| v.is_finite()).count()
    }

    pub fn infinite_count(&self) -> usize {
        self.eigenvalues.len() - self.finite_count()
    }
}

/// Weighted Laplacian matrix on interior nodes:
/// `(L_theta f)(u) = sum_{v~u} omega^2 theta_uv (f(u) - f(v))`,
/// with boundary neighbours contributing only to the diagonal.
fn weighted_laplacian(g: &Graph, theta: &EdgeFn) -> DMatrix<f64> {
    let n = g.interior_count();
    let mut l = DMatrix::zeros(n, n);
    for (e, edge) in g.edges().iter().enumerate() {
        let w = edge.omega * edge.omega * theta.values[e];
        let ia = g.interior_index(edge.a);
        let ib = g.interior_index(edge.b);
        if let Some(i) = ia {
            l[(i, i)] += w;
        }
        if let Some(j) = ib {
            l[(j, j)] += w;
        }
        if let (Some(i), Some(j)) = (ia, ib) {
            l[(i, j)] -= w;
            l[(j, i)] -= w;
        }
    }
    l
}

/// Solves the generalized eigenproblem of the (theta, nu*)-weighted Laplacian.
///
/// Nodes with `nu*_u = 0` are eliminated through the Schur complement and
/// reported as `+inf` eigenvalues; the finite part is a symmetric eigensolve
/// on the nu*-support after the congruence `diag(nu*^{-1/2})`.
pub fn weighted_linear_spectrum(
    g: &Graph,
    theta: &EdgeFn,
    nu_star: &NodeFn,
) -> Result<WeightedLinearSpectrum, OpError> {
    if theta.values.iter().all(|&t| t == 0.0) && nu_star.values.iter().all(|&v| v == 0.0) {
        return Err(OpError::ZeroWeights);
    }
    if theta.values.iter().any(|&t| t < 0.0) || nu_star.values.iter().any(|&v| v < 0.0) {
        return Err(OpError::Precondition("weights must be nonnegative".into()));
    }
    let n = g.interior_count();
    let l = weighted_laplacian(g, theta);
    let support: Vec<usize> = (0..n).filter(|&i| nu_star.values[i] > 0.0).collect();
    let zeros: Vec<usize> = (0..n).filter(|&i| nu_star.values[i] == 0.0).collect();

    // Schur complement onto the support.
    let reduced = if zeros.is_empty() {
        l.clone()
    } else {
        let lzz = l.select_rows(zeros.as_slice()).select_columns(zeros.as_slice());
        let lzs = l.select_rows(zeros.as_slice()).select_columns(support.as_slice());
        let lss = l.select_rows(support.as_slice()).select_columns(support.as_slice());
        let solved = lzz
            .clone()
            .lu()
            .solve(&lzs)
            .ok_or_else(|| OpError::SingularPencil("zero-weight block is singular".into()))?;
        &lss - lzs.transpose() * solved
    };

    let mut finite = if support.is_empty() {
        Vec::new()
    } else {
        let scale: Vec<f64> = support
            .iter()
            .map(|&i| 1.0 / nu_star.values[i].sqrt())
            .collect();
        let m = reduced.len();
        let _ = m;
        let dim = support.len();
        let mut sym = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                sym[(i, j)] = reduced[(i, j)] * scale[i] * scale[j];
            }
        }
        // Symmetrize against roundoff before the eigensolve.
        let sym = (&sym + sym.transpose()) * 0.5;
        sym.symmetric_eigen().eigenvalues.iter().copied().collect::<Vec<f64>>()
    };
    finite.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut eigenvalues = finite;
    eigenvalues.extend(std::iter::repeat_n(f64::INFINITY, zeros.len()));
    Ok(WeightedLinearSpectrum { eigenvalues })
}

/// Index `h` and multiplicity `m` of a p-Laplacian eigenvalue inside the
/// spectrum of its own weighted linearization (`theta* = |Kf|^{p-2}`,
/// `nu* = nu |f|^{p-2}`). The Morse index of `R_p` at f is `h - m`.
pub fn linear_index_of_eigenpair(
    g: &Graph,
    pair: &Eigenpair,
    residual_tol: f64,
) -> Result<(usize, usize), OpError> {
    let p = pair.p.as_finite()?;
    let res = eigen_residual(g, &pair.f, pair.lambda, pair.p)?;
    if res > residual_tol {
        return Err(OpError::ResidualTooLarge(res, residual_tol));
    }
    let kf = incidence_apply(g, &pair.f);
    let theta = EdgeFn::new(kf.values.iter().map(|v| v.abs().powf(p - 2.0)).collect());
    let nu_star = NodeFn::new(
        pair.f
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| g.measure(i) * v.abs().powf(p - 2.0))
            .collect(),
    );
    let spectrum = weighted_linear_spectrum(g, &theta, &nu_star)?;
    spectrum
        .locate(pair.lambda, 1e-8)
        .ok_or(OpError::ValueNotInSpectrum(pair.lambda))
}

/// Spectrum of the standard weighted Laplacian `Delta_2` (theta = 1, nu* = nu).
pub fn laplacian_spectrum(g: &Graph) -> Result<WeightedLinearSpectrum, OpError> {
    let theta = EdgeFn::new(vec![1.0; g.edge_count()]);
    let nu = NodeFn::new((0..g.interior_count()).map(|i| g.measure(i)).collect());
    weighted_linear_spectrum(g, &theta, &nu)
}

/// Dense Delta_2 matrix (diag(A 1) - A with A_uv = omega^2), for tests.
pub fn laplacian_matrix(g: &Graph) -> DMatrix<f64> {
    weighted_laplacian(g, &EdgeFn::new(vec![1.0; g.edge_count()]))
}

/// Eigenvectors of the nu-weighted Delta_2, ascending by eigenvalue. Used as
/// continuation seeds for the nonlinear flows.
pub fn laplacian_eigenbasis(g: &Graph) -> Vec<NodeFn> {
    let n = g.interior_count();
    let l = laplacian_matrix(g);
    let scale: Vec<f64> = (0..n).map(|i| 1.0 / g.measure(i).sqrt()).collect();
    let mut sym = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            sym[(i, j)] = l[(i, j)] * scale[i] * scale[j];
        }
    }
    let sym = (&sym + sym.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    order
        .into_iter()
        .map(|k| {
            NodeFn::new(
                (0..n)
                    .map(|i| eig.eigenvectors[(i, k)] * scale[i])
                    .collect(),
            )
        })
        .collect()
}

#[allow(dead_code)]
fn as_dvector(f: &NodeFn) -> DVector<f64> {
    DVector::from_vec(f.values.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{EigenKind, PValue};
    use crate::test_graphs::{complete, diamond, p7};

    #[test]
    fn diamond_saddle_is_second_of_its_linearization() {
        let g = diamond();
        for p in [3.0, 4.0] {
            let f = NodeFn::new(vec![0.0, 1.0, 0.0, -1.0]);
            let pair =
                Eigenpair::from_function(&g, f, PValue::Finite(p), EigenKind::Classical).unwrap();
            let lambda = 2.0 + 2f64.powf(p - 1.0);
            assert!((pair.lambda - lambda).abs() < 1e-12);
            let (h, m) = linear_index_of_eigenpair(&g, &pair, 1e-8).unwrap();
            assert_eq!((h, m), (2, 1));

            let kf = incidence_apply(&g, &pair.f);
            let theta = EdgeFn::new(kf.values.iter().map(|v| v.abs().powf(p - 2.0)).collect());
            let nu = NodeFn::new(pair.f.values.iter().map(|v| v.abs().powf(p - 2.0)).collect());
            let spec = weighted_linear_spectrum(&g, &theta, &nu).unwrap();
            assert_eq!(spec.infinite_count(), 2);
            assert_eq!(spec.finite_count(), 2);
        }
    }

    #[test]
    fn diamond_alternating_is_maximizer_for_p4() {
        let g = diamond();
        let f = NodeFn::new(vec![1.0, -1.0, 1.0, -1.0]);
        let pair = Eigenpair::from_function(&g, f, PValue::Finite(4.0), EigenKind::Classical).unwrap();
        let (h, m) = linear_index_of_eigenpair(&g, &pair, 1e-8).unwrap();
        assert_eq!(h, 4);
        assert_eq!(m, 1);
    }

    #[test]
    fn unit_weights_reproduce_delta2_on_p7() {
        let g = p7();
        let spec = laplacian_spectrum(&g).unwrap();
        assert_eq!(spec.finite_count(), 7);
        // Path Laplacian eigenvalues: 2 - 2 cos(k pi / 7).
        for (k, &ev) in spec.eigenvalues.iter().enumerate() {
            let expected = 2.0 - 2.0 * (std::f64::consts::PI * k as f64 / 7.0).cos();
            assert!((ev - expected).abs() < 1e-9, "k={k}: {ev} vs {expected}");
        }
    }

    #[test]
    fn one_zero_weight_gives_one_infinite_eigenvalue() {
        let g = complete(3);
        let theta = EdgeFn::new(vec![1.0; 3]);
        let nu = NodeFn::new(vec![1.0, 1.0, 0.0]);
        let spec = weighted_linear_spectrum(&g, &theta, &nu).unwrap();
        assert_eq!(spec.infinite_count(), 1);
        assert_eq!(spec.finite_count(), 2);
    }

    #[test]
    fn ground_state_locates_first() {
        let g = crate::test_graphs::path_with_boundary(7, &["1", "7"]);
        // Dirichlet ground state of the path: sin profile.
        let n = g.interior_count();
        let f = NodeFn::new(
            (0..n)
                .map(|i| (std::f64::consts::PI * (i + 1) as f64 / 6.0).sin())
                .collect(),
        );
        let pair = Eigenpair::from_function(&g, f, PValue::Finite(2.0), EigenKind::Classical).unwrap();
        let (h, m) = linear_index_of_eigenpair(&g, &pair, 1e-6).unwrap();
        assert_eq!((h, m), (1, 1));
    }

    #[test]
    fn locate_handles_multiplicity() {
        let spec = WeightedLinearSpectrum {
            eigenvalues: vec![0.0, 2.0, 2.0, 5.0, f64::INFINITY],
        };
        assert_eq!(spec.locate(2.0, 1e-9), Some((3, 2)));
        assert_eq!(spec.locate(5.0, 1e-9), Some((4, 1)));
        assert_eq!(spec.locate(7.0, 1e-9), None);
    }
}
