//! Phase-1 simplex for box-constrained linear feasibility problems.
//!
//! The subgradient certificates lead to tiny systems (at most a few dozen
//! variables), so this is a dense bounded-variable simplex with Bland's rule:
//! find x with `A x = b`, `l <= x <= u`, or report the phase-1 optimum as an
//! infeasibility measure.

use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct Feasibility {
    /// Structural variable values when feasible.
    pub x: Option<Vec<f64>>,
    /// Phase-1 optimum: total artificial mass left (0 when feasible).
    pub phase1: f64,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        self.x.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;

/// Solves the feasibility problem. `rows` holds the dense constraint matrix.
/// Bounds may be infinite; fixed variables use `lower == upper`.
pub fn feasible(
    rows: &[Vec<f64>],
    b: &[f64],
    lower: &[f64],
    upper: &[f64],
    tol: f64,
) -> Feasibility {
    let m = rows.len();
    let n = lower.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(b.len(), m);
    for j in 0..n {
        if lower[j] > upper[j] + tol {
            return Feasibility {
                x: None,
                phase1: f64::INFINITY,
            };
        }
    }
    if m == 0 {
        let x = (0..n).map(|j| start_at_bound(lower[j], upper[j]).0).collect();
        return Feasibility {
            x: Some(x),
            phase1: 0.0,
        };
    }

    // Total variables: n structural + m artificials.
    let total = n + m;
    let mut lo = lower.to_vec();
    let mut hi = upper.to_vec();
    lo.extend(std::iter::repeat_n(0.0, m));
    hi.extend(std::iter::repeat_n(f64::INFINITY, m));

    // Nonbasic variables must sit exactly at a finite bound.
    let mut status = vec![Status::AtLower; total];
    let mut x = vec![0.0; total];
    for j in 0..n {
        let (v, st) = start_at_bound(lower[j], upper[j]);
        x[j] = v;
        status[j] = st;
    }

    // Artificial columns absorb the initial residual with unit coefficients.
    let mut art_sign = vec![1.0; m];
    for i in 0..m {
        let resid = b[i] - rows[i].iter().zip(&x[..n]).map(|(a, v)| a * v).sum::<f64>();
        art_sign[i] = if resid < 0.0 { -1.0 } else { 1.0 };
        x[n + i] = resid.abs();
        status[n + i] = Status::Basic;
    }
    let mut basis: Vec<usize> = (n..total).collect();

    let column = |j: usize, i: usize| -> f64 {
        if j < n {
            rows[i][j]
        } else if j - n == i {
            art_sign[i]
        } else {
            0.0
        }
    };
    let cost = |j: usize| -> f64 { if j < n { 0.0 } else { 1.0 } };

    let max_iters = 200 * (total + m) + 1000;
    for _iter in 0..max_iters {
        // Basis matrix and current basic solution.
        let bmat = DMatrix::from_fn(m, m, |i, k| column(basis[k], i));
        let lu = bmat.clone().lu();
        let mut rhs = nalgebra::DVector::from_row_slice(b);
        for j in 0..total {
            if status[j] != Status::Basic {
                let v = x[j];
                if v != 0.0 {
                    for i in 0..m {
                        rhs[i] -= column(j, i) * v;
                    }
                }
            }
        }
        let xb = match lu.solve(&rhs) {
            Some(sol) => sol,
            None => {
                // Singular basis should not happen with Bland pivoting; treat
                // conservatively as infeasible rather than panic.
                return Feasibility {
                    x: None,
                    phase1: f64::INFINITY,
                };
            }
        };
        for (k, &bj) in basis.iter().enumerate() {
            x[bj] = xb[k];
        }

        // Dual solve for reduced costs: B^T y = c_B.
        let cb = nalgebra::DVector::from_iterator(m, basis.iter().map(|&j| cost(j)));
        let y = match bmat.transpose().lu().solve(&cb) {
            Some(sol) => sol,
            None => {
                return Feasibility {
                    x: None,
                    phase1: f64::INFINITY,
                };
            }
        };

        // Entering variable (Bland: lowest index with an improving direction).
        let mut entering = None;
        for j in 0..total {
            if status[j] == Status::Basic || lo[j] == hi[j] {
                continue;
            }
            let dj = cost(j) - (0..m).map(|i| y[i] * column(j, i)).sum::<f64>();
            match status[j] {
                Status::AtLower if dj < -COST_TOL => {
                    entering = Some((j, true, dj));
                    break;
                }
                Status::AtUpper if dj > COST_TOL => {
                    entering = Some((j, false, dj));
                    break;
                }
                _ => {}
            }
        }

        let (j_in, increase, _dj) = match entering {
            Some(e) => e,
            None => {
                let phase1: f64 = (n..total).map(|j| x[j].max(0.0)).sum();
                return if phase1 <= tol {
                    Feasibility {
                        x: Some(x[..n].to_vec()),
                        phase1,
                    }
                } else {
                    Feasibility { x: None, phase1 }
                };
            }
        };

        // Direction of basic variables: d = B^{-1} A_{j_in}.
        let aj = nalgebra::DVector::from_iterator(m, (0..m).map(|i| column(j_in, i)));
        let d = match bmat.lu().solve(&aj) {
            Some(sol) => sol,
            None => {
                return Feasibility {
                    x: None,
                    phase1: f64::INFINITY,
                };
            }
        };

        // Ratio test. t is the change of x_{j_in} toward its opposite bound;
        // x_B moves by -t*d (entering up) or +t*d (entering down).
        let flip_cap = hi[j_in] - lo[j_in];
        let mut blockers: Vec<(usize, Status, f64)> = Vec::new();
        for (k, &bj) in basis.iter().enumerate() {
            let rate = if increase { -d[k] } else { d[k] };
            if rate > PIVOT_TOL {
                if hi[bj].is_finite() {
                    blockers.push((k, Status::AtUpper, ((hi[bj] - x[bj]) / rate).max(0.0)));
                }
            } else if rate < -PIVOT_TOL && lo[bj].is_finite() {
                blockers.push((k, Status::AtLower, ((x[bj] - lo[bj]) / -rate).max(0.0)));
            }
        }
        let t_block = blockers
            .iter()
            .map(|&(_, _, t)| t)
            .fold(f64::INFINITY, f64::min);
        let (t, leaving) = if flip_cap <= t_block {
            (flip_cap, None)
        } else {
            // Bland tie-break: smallest leaving variable index at the min ratio.
            let pick = blockers
                .iter()
                .filter(|&&(_, _, t)| t <= t_block + PIVOT_TOL)
                .min_by_key(|&&(k, _, _)| basis[k])
                .copied();
            match pick {
                Some((k, st, _)) => (t_block, Some((k, st))),
                None => (t_block, None),
            }
        };
        if t.is_infinite() {
            // Phase-1 objective is bounded below; this cannot happen unless
            // the data is pathological.
            return Feasibility {
                x: None,
                phase1: f64::INFINITY,
            };
        }

        // Apply the step.
        if increase {
            x[j_in] += t;
        } else {
            x[j_in] -= t;
        }
        for (k, &bj) in basis.iter().enumerate() {
            let rate = if increase { -d[k] } else { d[k] };
            x[bj] += t * rate;
        }
        match leaving {
            None => {
                // Bound flip: entering variable reached its other bound.
                status[j_in] = if increase { Status::AtUpper } else { Status::AtLower };
            }
            Some((k, exit_status)) => {
                let bj = basis[k];
                status[bj] = exit_status;
                x[bj] = match exit_status {
                    Status::AtLower => lo[bj],
                    Status::AtUpper => hi[bj],
                    Status::Basic => unreachable!(),
                };
                basis[k] = j_in;
                status[j_in] = Status::Basic;
            }
        }
    }

    // Iteration limit: report the current artificial mass.
    let phase1: f64 = (n..total).map(|j| x[j].max(0.0)).sum();
    Feasibility { x: None, phase1 }
}

fn start_at_bound(lo: f64, hi: f64) -> (f64, Status) {
    if lo.is_finite() && (lo.abs() <= hi.abs() || !hi.is_finite()) {
        (lo, Status::AtLower)
    } else {
        debug_assert!(hi.is_finite(), "variables need at least one finite bound");
        (hi, Status::AtUpper)
    }
}
