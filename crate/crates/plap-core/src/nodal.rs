//! Nodal-domain analytics: strong / weak / perfect domain counting, the
//! boundary-ratio identity for eigenpairs, and the oscillation classification
//! of support components against the infinity Rayleigh quotient.

use serde::Serialize;

use crate::error::OpError;
use crate::graph::{incidence_apply, Graph, InteriorIdx, NodeFn};
use crate::ops::{rayleigh_p, PValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// One sign-constant connected piece (interior indices, sorted).
#[derive(Debug, Clone, Serialize)]
pub struct Domain {
    pub nodes: Vec<InteriorIdx>,
    pub sign: Sign,
}

/// Strong, weak and perfect nodal domains of a function.
#[derive(Debug, Clone, Serialize)]
pub struct NodalReport {
    pub strong: Vec<Domain>,
    pub weak: Vec<Domain>,
    /// Indices into `strong` of the domains containing a sup-norm attainer.
    pub perfect: Vec<usize>,
    pub zero_set: Vec<InteriorIdx>,
}

impl NodalReport {
    pub fn strong_count(&self) -> usize {
        self.strong.len()
    }
    pub fn weak_count(&self) -> usize {
        self.weak.len()
    }
    pub fn perfect_count(&self) -> usize {
        self.perfect.len()
    }
}

/// Computes the nodal decomposition of `f`.
///
/// Strong domains are components of {f > 0} and {f < 0}; weak domains are
/// components of {f >= 0} (resp. {f <= 0}) containing at least one strictly
/// signed node; perfect domains are strong domains attaining the sup norm
/// within a relative 1e-12 tolerance.
pub fn nodal_domains(g: &Graph, f: &NodeFn) -> Result<NodalReport, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let n = g.interior_count();
    let positive: Vec<InteriorIdx> = (0..n).filter(|&i| f.values[i] > 0.0).collect();
    let negative: Vec<InteriorIdx> = (0..n).filter(|&i| f.values[i] < 0.0).collect();
    let mut strong = Vec::new();
    for comp in g.components_of(&positive) {
        strong.push(Domain {
            nodes: comp,
            sign: Sign::Positive,
        });
    }
    for comp in g.components_of(&negative) {
        strong.push(Domain {
            nodes: comp,
            sign: Sign::Negative,
        });
    }

    let nonneg: Vec<InteriorIdx> = (0..n).filter(|&i| f.values[i] >= 0.0).collect();
    let nonpos: Vec<InteriorIdx> = (0..n).filter(|&i| f.values[i] <= 0.0).collect();
    let mut weak = Vec::new();
    for comp in g.components_of(&nonneg) {
        if comp.iter().any(|&i| f.values[i] > 0.0) {
            weak.push(Domain {
                nodes: comp,
                sign: Sign::Positive,
            });
        }
    }
    for comp in g.components_of(&nonpos) {
        if comp.iter().any(|&i| f.values[i] < 0.0) {
            weak.push(Domain {
                nodes: comp,
                sign: Sign::Negative,
            });
        }
    }

    let sup = f.sup_norm();
    let attain = |i: InteriorIdx| f.values[i].abs() >= sup * (1.0 - 1e-12);
    let perfect = strong
        .iter()
        .enumerate()
        .filter(|(_, d)| d.nodes.iter().any(|&i| attain(i)))
        .map(|(k, _)| k)
        .collect();

    Ok(NodalReport {
        strong,
        weak,
        perfect,
        zero_set: (0..n).filter(|&i| f.values[i] == 0.0).collect(),
    })
}

/// Boundary ratio of a nodal domain A:
/// `||Kf restricted to E(A, A^c)||_{omega,p-1}^{p-1} / ||f
/// restricted to A||_{nu,p-1}^{p-1}`; equals lambda for eigenpairs.
pub fn nodal_boundary_ratio(
    g: &Graph,
    f: &NodeFn,
    a: &[InteriorIdx],
    p: PValue,
) -> Result<f64, OpError> {
    let pf = p.as_finite()?;
    let report = nodal_domains(g, f)?;
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    let is_domain = report
        .strong
        .iter()
        .chain(report.weak.iter())
        .any(|d| d.nodes == sorted);
    if !is_domain {
        return Err(OpError::Precondition(
            "set is not a nodal domain of the function".into(),
        ));
    }
    let member = vec_to_mask(g, &sorted);
    let kf = incidence_apply(g, f);
    let mut num = 0.0;
    for (e, edge) in g.edges().iter().enumerate() {
        let ina = g.interior_index(edge.a).is_some_and(|i| member[i]);
        let inb = g.interior_index(edge.b).is_some_and(|i| member[i]);
        if ina != inb {
            num += edge.omega * kf.values[e].abs().powf(pf - 1.0);
        }
    }
    let den: f64 = sorted
        .iter()
        .map(|&i| g.measure(i) * f.values[i].abs().powf(pf - 1.0))
        .sum();
    Ok(num / den)
}

fn vec_to_mask(g: &Graph, set: &[InteriorIdx]) -> Vec<bool> {
    let mut mask = vec![false; g.interior_count()];
    for &i in set {
        mask[i] = true;
    }
    mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oscillation {
    Equal,
    Super,
    Sub,
}

/// A connected component of supp(f) with its oscillation class: the sign of
/// `R_inf(f restricted to the component) - R_inf(f)` at tolerance 1e-12.
#[derive(Debug, Clone, Serialize)]
pub struct SupportComponent {
    pub nodes: Vec<InteriorIdx>,
    pub rayleigh_inf: f64,
    pub class: Oscillation,
}

pub fn classify_support_components(
    g: &Graph,
    f: &NodeFn,
) -> Result<Vec<SupportComponent>, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroFunction);
    }
    let support: Vec<InteriorIdx> = (0..g.interior_count())
        .filter(|&i| f.values[i] != 0.0)
        .collect();
    let global = rayleigh_p(g, f, PValue::Infinity)?;
    let tol = 1e-12 * global.max(1.0);
    let mut out = Vec::new();
    for comp in g.components_of(&support) {
        let mut restricted = NodeFn::zeros(g);
        for &i in &comp {
            restricted.values[i] = f.values[i];
        }
        let r = rayleigh_p(g, &restricted, PValue::Infinity)?;
        let class = if (r - global).abs() <= tol {
            Oscillation::Equal
        } else if r > global {
            Oscillation::Super
        } else {
            Oscillation::Sub
        };
        out.push(SupportComponent {
            nodes: comp,
            rayleigh_inf: r,
            class,
        });
    }
    Ok(out)
}

/// Stability margin for nodal counts: perturbations smaller than this keep
/// `PN` from growing and `WN` from shrinking. Half the minimum of the
/// smallest nonzero level and the gap below the sup-norm level.
pub fn nodal_perturbation_margin(f: &NodeFn) -> f64 {
    let sup = f.sup_norm();
    let min_nonzero = f
        .values
        .iter()
        .filter(|v| **v != 0.0)
        .fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let second_level = f
        .values
        .iter()
        .map(|v| v.abs())
        .filter(|&a| a < sup * (1.0 - 1e-12))
        .fold(0.0f64, f64::max);
    let gap = if second_level > 0.0 {
        sup - second_level
    } else {
        sup
    };
    0.5 * min_nonzero.min(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::{diamond, ii, p7, tripod};

    #[test]
    fn p7_step_function_counts() {
        let g = p7();
        let f = NodeFn::new(vec![1.0, 1.0, 1.0, 0.0, -1.0, -1.0, -1.0]);
        let r = nodal_domains(&g, &f).unwrap();
        assert_eq!(r.strong_count(), 2);
        assert_eq!(r.weak_count(), 2);
        assert_eq!(r.perfect_count(), 2);
        assert_eq!(r.zero_set, vec![3]);
    }

    #[test]
    fn constant_positive_has_one_domain() {
        let g = p7();
        let f = NodeFn::constant(&g, 0.7);
        let r = nodal_domains(&g, &f).unwrap();
        assert_eq!(r.strong_count(), 1);
        assert_eq!(r.weak_count(), 1);
        assert_eq!(r.perfect_count(), 1);
    }

    #[test]
    fn tripod_counts_match_closed_form() {
        let n = 2;
        let g = tripod(n);
        let mut f = NodeFn::zeros(&g);
        for i in 1..=n {
            f.values[ii(&g, &format!("x{i}"))] = i as f64 / n as f64;
            f.values[ii(&g, &format!("y{i}"))] = -(i as f64) / n as f64;
            f.values[ii(&g, &format!("z{i}"))] = if i % 2 == 0 { 0.25 } else { -0.25 };
        }
        let r = nodal_domains(&g, &f).unwrap();
        assert_eq!(r.strong_count(), n + 2);
        assert_eq!(r.weak_count(), n + 1);
        assert_eq!(r.perfect_count(), 2);
    }

    #[test]
    fn weak_le_strong_and_perfect_le_strong() {
        let g = tripod(3);
        let mut f = NodeFn::zeros(&g);
        f.values[ii(&g, "x1")] = 1.0;
        f.values[ii(&g, "x3")] = -0.5;
        f.values[ii(&g, "z2")] = 0.25;
        let r = nodal_domains(&g, &f).unwrap();
        assert!(r.weak_count() <= r.strong_count());
        assert!(r.perfect_count() <= r.strong_count());
    }

    #[test]
    fn boundary_ratio_reproduces_diamond_eigenvalues() {
        let g = diamond();
        let f = NodeFn::new(vec![1.0, 0.0, -1.0, 0.0]);
        let r = nodal_boundary_ratio(&g, &f, &[0], PValue::Finite(2.0)).unwrap();
        assert!((r - 2.0).abs() < 1e-14);

        let f = NodeFn::new(vec![0.0, 1.0, 0.0, -1.0]);
        let r = nodal_boundary_ratio(&g, &f, &[1], PValue::Finite(3.0)).unwrap();
        assert!((r - 6.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_ratio_rejects_non_domain() {
        let g = diamond();
        let f = NodeFn::new(vec![1.0, 0.0, -1.0, 0.0]);
        assert!(nodal_boundary_ratio(&g, &f, &[0, 2], PValue::Finite(2.0)).is_err());
    }

    #[test]
    fn classify_single_component_is_equal() {
        let g = p7();
        let f = NodeFn::indicator(&g, &[2, 3]);
        let comps = classify_support_components(&g, &f).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].class, Oscillation::Equal);
    }

    #[test]
    fn perturbation_margin_is_half_min_level() {
        let g = p7();
        let mut f = NodeFn::zeros(&g);
        f.values[0] = 1.0;
        f.values[2] = 0.4;
        // min nonzero 0.4, gap 0.6 -> margin 0.2
        assert!((nodal_perturbation_margin(&f) - 0.2).abs() < 1e-15);
        let _ = g;
    }
}
