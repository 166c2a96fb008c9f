//! Edge q-Laplacian and the node/edge duality transform: the nonzero part of
//! the node p-spectrum coincides with the spectrum of a conjugate-exponent
//! eigenproblem on edge functions, with eigenfunctions mapped through the
//! subgradient of the edge norm.

use crate::error::OpError;
use crate::graph::{divergence_apply, incidence_apply, EdgeFn, Graph, NodeFn};
use crate::ops::{phi_p, Eigenpair, PValue};

/// Scaled divergence `D G = nu^{-1} div G`, the adjoint of K between the
/// nu-weighted node space and the half-scaled edge space.
pub fn edge_divergence(g: &Graph, gf: &EdgeFn) -> NodeFn {
    let div = divergence_apply(g, gf);
    NodeFn::new(
        (0..g.interior_count())
            .map(|i| div.values[i] / g.measure(i))
            .collect(),
    )
}

/// Edge Rayleigh quotient `R_q^E(G) = ||D G||_{nu,q} / ||G||_q`.
pub fn edge_rayleigh(g: &Graph, gf: &EdgeFn, q: PValue) -> Result<f64, OpError> {
    if gf.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let dg = edge_divergence(g, gf);
    Ok(match q {
        PValue::One => {
            let num: f64 = dg
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| g.measure(i) * v.abs())
                .sum();
            let den: f64 = gf.values.iter().map(|v| v.abs()).sum();
            num / den
        }
        PValue::Infinity => dg.sup_norm() / gf.sup_norm(),
        PValue::Finite(q) => {
            let num: f64 = dg
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| g.measure(i) * v.abs().powf(q))
                .sum();
            let den: f64 = gf.values.iter().map(|v| v.abs().powf(q)).sum();
            (num / den).powf(1.0 / q)
        }
    })
}

/// Applies the edge q-Laplacian `K(|D G|^{q-2} D G)` for q in (1, inf).
pub fn edge_qlap_apply(g: &Graph, gf: &EdgeFn, q: PValue) -> Result<EdgeFn, OpError> {
    let qf = q.as_finite()?;
    let dg = edge_divergence(g, gf);
    let flux = NodeFn::new(dg.values.iter().map(|&x| phi_p(x, qf)).collect());
    Ok(incidence_apply(g, &flux))
}

/// Relative sup-norm residual of the edge eigen-equation
/// `K(|D G|^{q-2} D G) = eta |G|^{q-2} G`.
pub fn edge_eigen_residual(
    g: &Graph,
    gf: &EdgeFn,
    eta: f64,
    q: PValue,
) -> Result<f64, OpError> {
    if gf.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let qf = q.as_finite()?;
    let lap = edge_qlap_apply(g, gf, q)?;
    let scale = lap.sup_norm().max(1.0);
    let worst = (0..gf.values.len())
        .map(|e| (lap.values[e] - eta * phi_p(gf.values[e], qf)).abs())
        .fold(0.0, f64::max);
    Ok(worst / scale)
}

/// An eigenpair of the edge q-Laplacian. The normalized value coincides with
/// the node-side Lambda; `eta = nlambda^q` is the unnormalized eigenvalue.
#[derive(Debug, Clone)]
pub struct EdgeEigenpair {
    pub gf: EdgeFn,
    pub eta: f64,
    pub nlambda: f64,
    pub q: PValue,
}

/// Duality transform for smooth p: a node eigenpair `(f, lambda)` with
/// `lambda > 0` maps to the edge q-eigenpair `(|Kf|^{p-2} Kf, lambda^{q/p})`
/// with q the conjugate exponent.
pub fn node_to_edge_dual(g: &Graph, pair: &Eigenpair) -> Result<EdgeEigenpair, OpError> {
    let p = pair.p.as_finite()?;
    if pair.lambda <= 0.0 {
        return Err(OpError::Precondition(
            "kernel pairs (lambda = 0) have no edge dual".into(),
        ));
    }
    let q = pair.p.conjugate();
    let qf = q.as_finite()?;
    let kf = incidence_apply(g, &pair.f);
    let gf = EdgeFn::new(kf.values.iter().map(|&x| phi_p(x, p)).collect());
    let eta = pair.lambda.powf(qf / p);
    Ok(EdgeEigenpair {
        gf,
        eta,
        nlambda: eta.powf(1.0 / qf),
        q,
    })
}

/// Kernel dimensions of the duality index shift: `d1 = dim Ker K` counts the
/// connected components carrying no boundary node; `d2 = |E| - (N - d1)` by
/// rank-nullity on the undirected edge space.
pub fn kernel_dims(g: &Graph) -> (usize, usize) {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut d1 = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut has_boundary = g.is_boundary(start);
        while let Some(u) = stack.pop() {
            for &(v, _) in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    has_boundary |= g.is_boundary(v);
                    stack.push(v);
                }
            }
        }
        if !has_boundary {
            d1 += 1;
        }
    }
    let rank = g.interior_count() - d1;
    (d1, g.edge_count() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::EigenKind;
    use crate::test_graphs::{cycle, diamond, p7};

    #[test]
    fn edge_rayleigh_of_gradient_matches_node_value() {
        let g = diamond();
        let f = NodeFn::new(vec![1.0, 0.0, -1.0, 0.0]);
        let kf = incidence_apply(&g, &f);
        let r = edge_rayleigh(&g, &kf, PValue::Finite(2.0)).unwrap();
        // lambda = 2 at p = 2, so R_2^E(Kf) = lambda / Lambda = sqrt(2)^1... = Lambda.
        assert!((r - 2f64.sqrt()).abs() < 1e-12, "{r}");
    }

    #[test]
    fn cycle_flow_lies_in_the_kernel() {
        let g = cycle(4);
        // Unit circulation around 1 -> 2 -> 3 -> 4 -> 1.
        let mut gf = EdgeFn::zeros(&g);
        for (e, edge) in g.edges().iter().enumerate() {
            let a: usize = g.node_id(edge.a).parse().unwrap();
            let b: usize = g.node_id(edge.b).parse().unwrap();
            gf.values[e] = if b == a + 1 { 1.0 } else { -1.0 };
        }
        let r = edge_rayleigh(&g, &gf, PValue::Finite(2.0)).unwrap();
        assert!(r.abs() < 1e-14);
    }

    #[test]
    fn single_edge_closed_form() {
        let mut b = crate::graph::Graph::builder();
        b.node_measured("a", 2.0).node_measured("b", 0.5);
        b.edge("a", "b", 1.5);
        let g = b.build_unchecked();
        let gf = EdgeFn::new(vec![1.0]);
        for q in [1.5, 2.0, 3.0] {
            let r = edge_rayleigh(&g, &gf, PValue::Finite(q)).unwrap();
            let expected = 1.5 * (2f64.powf(1.0 - q) + 0.5f64.powf(1.0 - q)).powf(1.0 / q);
            assert!((r - expected).abs() < 1e-12, "q={q}: {r} vs {expected}");
        }
    }

    #[test]
    fn dual_of_diamond_pairs_satisfies_edge_equation() {
        let g = diamond();
        for (f, lambda_of_p) in [
            (
                vec![1.0, 0.0, -1.0, 0.0],
                Box::new(|_p: f64| 2.0) as Box<dyn Fn(f64) -> f64>,
            ),
            (
                vec![1.0, -1.0, 1.0, -1.0],
                Box::new(|p: f64| 2f64.powf(p)) as Box<dyn Fn(f64) -> f64>,
            ),
        ] {
            for p in [1.5, 2.0, 3.0] {
                let pair = Eigenpair::from_function(
                    &g,
                    NodeFn::new(f.clone()),
                    PValue::Finite(p),
                    EigenKind::Classical,
                )
                .unwrap();
                assert!((pair.lambda - lambda_of_p(p)).abs() < 1e-12);
                let dual = node_to_edge_dual(&g, &pair).unwrap();
                let res = edge_eigen_residual(&g, &dual.gf, dual.eta, dual.q).unwrap();
                assert!(res <= 1e-8, "p={p}: residual {res}");
                // The normalized values agree across the duality.
                assert!((dual.nlambda - pair.nlambda).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qlap_of_divergence_free_flow_is_zero() {
        let g = cycle(4);
        let mut gf = EdgeFn::zeros(&g);
        for (e, edge) in g.edges().iter().enumerate() {
            let a: usize = g.node_id(edge.a).parse().unwrap();
            let b: usize = g.node_id(edge.b).parse().unwrap();
            gf.values[e] = if b == a + 1 { 1.0 } else { -1.0 };
        }
        let lap = edge_qlap_apply(&g, &gf, PValue::Finite(3.0)).unwrap();
        assert!(lap.is_zero());
    }

    #[test]
    fn dual_rejects_kernel_pairs() {
        let g = p7();
        let pair = Eigenpair::from_function(
            &g,
            NodeFn::constant(&g, 1.0),
            PValue::Finite(3.0),
            EigenKind::Classical,
        )
        .unwrap();
        assert!(node_to_edge_dual(&g, &pair).is_err());
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(kernel_dims(&p7()), (1, 0));
        assert_eq!(kernel_dims(&cycle(5)), (1, 1));
        let gb = crate::test_graphs::p7_with_boundary(&["1"]);
        assert_eq!(kernel_dims(&gb), (0, 0));
    }
}
