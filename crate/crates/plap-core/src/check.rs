//! Registry of eigenpair verification strategies. Each certification method
//! lives behind the same trait and is selected by name at runtime; `auto`
//! picks the canonical method for the exponent.

use serde_json::json;

use crate::degenerate::{
    sp_witness, verify_1_eigenpair, verify_inf_eigenpair, verify_viscosity, CertOutcome,
};
use crate::error::OpError;
use crate::graph::{Graph, NodeFn};
use crate::ops::{eigen_residual, rayleigh_p, rayleigh_pow, PValue};

/// Result of one verification strategy run.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub method: &'static str,
    pub pass: bool,
    pub reason: String,
    /// Method-specific payload (certificate, witness, diagnostics).
    pub payload: serde_json::Value,
}

/// A single verification strategy: does `(f, value)` certify as a p-eigenpair
/// under this notion?
pub trait EigenpairCheck: Send + Sync {
    fn name(&self) -> &'static str;
    /// Whether the method is defined at this exponent.
    fn supports(&self, p: PValue) -> bool;
    /// `value` is the normalized eigenvalue Lambda; tolerance is the
    /// acceptance threshold where the method has one.
    fn run(&self, g: &Graph, f: &NodeFn, p: PValue, value: f64, tol: f64)
        -> Result<CheckReport, OpError>;
}

/// Classical residual check of the smooth eigen-equation.
struct ResidualCheck;

impl EigenpairCheck for ResidualCheck {
    fn name(&self) -> &'static str {
        "residual"
    }
    fn supports(&self, p: PValue) -> bool {
        matches!(p, PValue::Finite(_))
    }
    fn run(
        &self,
        g: &Graph,
        f: &NodeFn,
        p: PValue,
        value: f64,
        tol: f64,
    ) -> Result<CheckReport, OpError> {
        let pf = p.as_finite()?;
        let lambda = value.powf(pf);
        let residual = eigen_residual(g, f, lambda, p)?;
        let rr = rayleigh_pow(g, f, pf)?;
        Ok(CheckReport {
            method: self.name(),
            pass: residual <= tol,
            reason: if residual <= tol {
                format!("residual {residual:.3e} within {tol:.1e}")
            } else {
                format!("residual {residual:.3e} exceeds {tol:.1e}")
            },
            payload: json!({ "residual": residual, "lambda": lambda, "rayleigh_pow": rr }),
        })
    }
}

/// Subgradient certificate for p = 1.
struct OneSubgradientCheck;

impl EigenpairCheck for OneSubgradientCheck {
    fn name(&self) -> &'static str {
        "subgradient-1"
    }
    fn supports(&self, p: PValue) -> bool {
        matches!(p, PValue::One)
    }
    fn run(
        &self,
        g: &Graph,
        f: &NodeFn,
        _p: PValue,
        value: f64,
        _tol: f64,
    ) -> Result<CheckReport, OpError> {
        Ok(match verify_1_eigenpair(g, f, value)? {
            CertOutcome::Feasible(cert) => CheckReport {
                method: self.name(),
                pass: true,
                reason: format!("feasible with residual {:.3e}", cert.residual),
                payload: cert.to_json(g),
            },
            CertOutcome::Infeasible { phase1 } => CheckReport {
                method: self.name(),
                pass: false,
                reason: format!("infeasible (phase-1 mass {phase1:.3e})"),
                payload: json!({ "feasible": false, "phase1": phase1 }),
            },
            CertOutcome::RayleighMismatch { computed } => CheckReport {
                method: self.name(),
                pass: false,
                reason: "rayleigh-mismatch".into(),
                payload: json!({ "feasible": false, "rayleigh": computed }),
            },
        })
    }
}

/// Subgradient certificate for p = inf.
struct InfSubgradientCheck;

impl EigenpairCheck for InfSubgradientCheck {
    fn name(&self) -> &'static str {
        "subgradient-inf"
    }
    fn supports(&self, p: PValue) -> bool {
        matches!(p, PValue::Infinity)
    }
    fn run(
        &self,
        g: &Graph,
        f: &NodeFn,
        _p: PValue,
        value: f64,
        _tol: f64,
    ) -> Result<CheckReport, OpError> {
        Ok(match verify_inf_eigenpair(g, f, value)? {
            CertOutcome::Feasible(cert) => CheckReport {
                method: self.name(),
                pass: true,
                reason: format!("feasible with residual {:.3e}", cert.residual),
                payload: cert.to_json(g),
            },
            CertOutcome::Infeasible { phase1 } => CheckReport {
                method: self.name(),
                pass: false,
                reason: format!("infeasible (phase-1 mass {phase1:.3e})"),
                payload: json!({ "feasible": false, "phase1": phase1 }),
            },
            CertOutcome::RayleighMismatch { computed } => CheckReport {
                method: self.name(),
                pass: false,
                reason: "rayleigh-mismatch".into(),
                payload: json!({ "feasible": false, "rayleigh": computed }),
            },
        })
    }
}

/// Pointwise viscosity equations for p = inf.
struct ViscosityCheck;

impl EigenpairCheck for ViscosityCheck {
    fn name(&self) -> &'static str {
        "viscosity"
    }
    fn supports(&self, p: PValue) -> bool {
        matches!(p, PValue::Infinity)
    }
    fn run(
        &self,
        g: &Graph,
        f: &NodeFn,
        _p: PValue,
        value: f64,
        _tol: f64,
    ) -> Result<CheckReport, OpError> {
        let report = verify_viscosity(g, f, value)?;
        let failing: Vec<&str> = report
            .diagnostics
            .iter()
            .filter(|d| !d.ok)
            .map(|d| d.node.as_str())
            .collect();
        Ok(CheckReport {
            method: self.name(),
            pass: report.holds,
            reason: if report.holds {
                "viscosity equations hold at every interior node".into()
            } else {
                format!("viscosity equations fail at {failing:?}")
            },
            payload: serde_json::to_value(&report.diagnostics).unwrap_or(json!(null)),
        })
    }
}

/// Shortest-path witness for p = inf.
struct ShortestPathCheck;

impl EigenpairCheck for ShortestPathCheck {
    fn name(&self) -> &'static str {
        "shortest-path"
    }
    fn supports(&self, p: PValue) -> bool {
        matches!(p, PValue::Infinity)
    }
    fn run(
        &self,
        g: &Graph,
        f: &NodeFn,
        _p: PValue,
        value: f64,
        _tol: f64,
    ) -> Result<CheckReport, OpError> {
        let rayleigh = rayleigh_p(g, f, PValue::Infinity)?;
        if (rayleigh - value).abs() > 1e-10 * rayleigh.abs().max(1.0) {
            return Ok(CheckReport {
                method: self.name(),
                pass: false,
                reason: "rayleigh-mismatch".into(),
                payload: json!({ "rayleigh": rayleigh }),
            });
        }
        Ok(match sp_witness(g, f)? {
            Some(w) => {
                let pass = (w.nlambda - value).abs() <= 1e-9 * value.abs().max(1.0);
                CheckReport {
                    method: self.name(),
                    pass,
                    reason: if pass {
                        format!("maximal-slope shortest path of {} nodes", w.path.len())
                    } else {
                        format!("witness value {} differs from {value}", w.nlambda)
                    },
                    payload: serde_json::to_value(&w).unwrap_or(json!(null)),
                }
            }
            None => CheckReport {
                method: self.name(),
                pass: false,
                reason: "no maximal-slope shortest path between admissible endpoints".into(),
                payload: json!(null),
            },
        })
    }
}

/// All registered strategies.
pub fn registry() -> Vec<Box<dyn EigenpairCheck>> {
    vec![
        Box::new(ResidualCheck),
        Box::new(OneSubgradientCheck),
        Box::new(InfSubgradientCheck),
        Box::new(ViscosityCheck),
        Box::new(ShortestPathCheck),
    ]
}

/// Looks a strategy up by name.
pub fn by_name(name: &str) -> Option<Box<dyn EigenpairCheck>> {
    registry().into_iter().find(|c| c.name() == name)
}

/// Canonical strategy for an exponent: the residual check for smooth p and
/// the subgradient certificates at the endpoints.
pub fn auto_method(p: PValue) -> &'static str {
    match p {
        PValue::One => "subgradient-1",
        PValue::Infinity => "subgradient-inf",
        PValue::Finite(_) => "residual",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::{diamond, p7};

    #[test]
    fn registry_lists_all_methods() {
        let names: Vec<&str> = registry().iter().map(|c| c.name()).collect();
        assert_eq!(
            names,
            vec![
                "residual",
                "subgradient-1",
                "subgradient-inf",
                "viscosity",
                "shortest-path"
            ]
        );
    }

    #[test]
    fn auto_dispatch_matches_exponent() {
        assert_eq!(auto_method(PValue::One), "subgradient-1");
        assert_eq!(auto_method(PValue::Infinity), "subgradient-inf");
        assert_eq!(auto_method(PValue::Finite(3.0)), "residual");
        for c in registry() {
            assert!(c.supports(match c.name() {
                "residual" => PValue::Finite(2.0),
                "subgradient-1" => PValue::One,
                _ => PValue::Infinity,
            }));
        }
    }

    #[test]
    fn residual_strategy_on_diamond() {
        let g = diamond();
        let checker = by_name("residual").unwrap();
        let f = NodeFn::new(vec![0.0, 1.0, 0.0, -1.0]);
        let lambda: f64 = 6.0;
        let report = checker
            .run(&g, &f, PValue::Finite(3.0), lambda.powf(1.0 / 3.0), 1e-8)
            .unwrap();
        assert!(report.pass, "{}", report.reason);
    }

    #[test]
    fn one_strategy_reports_mismatch_reason() {
        let g = p7();
        let checker = by_name("subgradient-1").unwrap();
        let f = NodeFn::indicator(&g, &[0, 1, 2]);
        let report = checker.run(&g, &f, PValue::One, 0.5, 1e-9).unwrap();
        assert!(!report.pass);
        assert_eq!(report.reason, "rayleigh-mismatch");
    }
}
