//! Property suites: structural invariants checked over the fixed example
//! corpus and seeded random graphs, with independent oracles where the
//! quantity has one (Bellman-Ford distances, finite differences, brute
//! force subset enumeration).

use proptest::prelude::*;

use plap_core::degenerate::{
    cone_eigenfunction, perfect_nodal_constructor, verify_1_eigenpair, verify_inf_eigenpair,
    verify_viscosity, CertOutcome, ConeCenters,
};
use plap_core::geometry::{
    cheeger_hk, dirichlet_hk, independence_alpha, packing_radius, DEFAULT_CHEEGER_CAP,
    DEFAULT_SUBSET_CAP,
};
use plap_core::graph::{divergence_apply, incidence_apply, DistanceOracle, EdgeFn, Graph, NodeFn};
use plap_core::nodal::{classify_support_components, nodal_domains, nodal_perturbation_margin, Oscillation};
use plap_core::ops::{node_norm_pow, rayleigh_p, rayleigh_pow, PValue};
use plap_core::test_graphs::{ii, p7, random_connected, random_tree, thirteen_tree};

use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;

/// Brute-force Bellman-Ford single-source distances, kept independent of the
/// Floyd-Warshall oracle in the library.
fn bellman_ford(g: &Graph, source: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for edge in g.edges() {
            let len = 1.0 / edge.omega;
            if dist[edge.a] + len < dist[edge.b] {
                dist[edge.b] = dist[edge.a] + len;
                changed = true;
            }
            if dist[edge.b] + len < dist[edge.a] {
                dist[edge.a] = dist[edge.b] + len;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

#[test]
fn distances_match_bellman_ford_oracle() {
    for seed in 0..8 {
        let g = random_connected(seed, 5 + (seed as usize % 8), 3, true);
        let oracle = DistanceOracle::new(&g);
        for s in 0..g.node_count() {
            let bf = bellman_ford(&g, s);
            for t in 0..g.node_count() {
                let d = oracle.distance(s, t);
                assert!((d - bf[t]).abs() <= 1e-9 * bf[t].max(1.0), "{s}->{t}");
            }
        }
        // Metric axioms on a sample of triples.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let (a, b, c) = (
                rng.gen_range(0..g.node_count()),
                rng.gen_range(0..g.node_count()),
                rng.gen_range(0..g.node_count()),
            );
            assert_eq!(oracle.distance(a, a), 0.0);
            assert_eq!(oracle.distance(a, b), oracle.distance(b, a));
            assert!(oracle.distance(a, c) <= oracle.distance(a, b) + oracle.distance(b, c) + 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// <Kf, G>_E = <f, div G> for random functions on a random small graph.
    #[test]
    fn adjointness(seed in 0u64..500, fvals in proptest::collection::vec(-5.0f64..5.0, 12), gvals in proptest::collection::vec(-5.0f64..5.0, 24)) {
        let g = random_connected(seed, 7, 4, true);
        let f = NodeFn::new(fvals[..g.interior_count()].to_vec());
        let gf = EdgeFn::new(gvals[..g.edge_count()].to_vec());
        let kf = incidence_apply(&g, &f);
        let lhs: f64 = kf.values.iter().zip(&gf.values).map(|(a, b)| a * b).sum();
        let div = divergence_apply(&g, &gf);
        let rhs: f64 = f.values.iter().zip(&div.values).map(|(a, b)| a * b).sum();
        let scale = f.sup_norm() * gf.sup_norm() + 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    /// R_p(cf) = R_p(f) for nonzero scalars.
    #[test]
    fn rayleigh_scale_invariance(seed in 0u64..500, c in prop_oneof![(-20.0f64..-0.01), (0.01f64..20.0)], p in 1.2f64..8.0) {
        let g = random_connected(seed, 6, 2, true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let f = NodeFn::new((0..g.interior_count()).map(|_| rng.gen_range(-1.0..1.0)).collect());
        prop_assume!(!f.is_zero());
        let cf = NodeFn::new(f.values.iter().map(|v| c * v).collect());
        let a = rayleigh_pow(&g, &f, p).unwrap();
        let b = rayleigh_pow(&g, &cf, p).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }
}

#[test]
fn generic_simplicity_of_subset_constants() {
    // 50 random-weight perturbations of P7: all 2^7 - 1 subset values c(A)
    // pairwise distinct.
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = Graph::builder();
        for i in 1..=7 {
            b.node_measured(&i.to_string(), 1.0 + rng.gen_range(-0.2..0.2));
        }
        for i in 1..7 {
            b.edge(
                &i.to_string(),
                &(i + 1).to_string(),
                1.0 + rng.gen_range(-0.2..0.2),
            );
        }
        let g = b.build_unchecked();
        let mut values = Vec::new();
        for mask in 1u32..(1 << 7) {
            let set: Vec<usize> = (0..7).filter(|&i| mask & (1 << i) != 0).collect();
            values.push(plap_core::geometry::isoperimetric_c(&g, &set).unwrap());
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in values.windows(2) {
            assert!(w[1] - w[0] > 1e-12, "seed {seed}: collision near {}", w[0]);
        }
    }
}

#[test]
fn geometry_monotonicity() {
    for seed in [3u64, 17, 40] {
        let g = random_connected(seed, 8, 3, false);
        let mut prev_h = 0.0;
        let mut prev_capital_h = 0.0;
        let mut prev_r = f64::INFINITY;
        for k in 1..=8 {
            let (h, _) = cheeger_hk(&g, k, DEFAULT_CHEEGER_CAP).unwrap();
            assert!(h >= prev_h - 1e-12, "h_k not nondecreasing");
            prev_h = h;
            let (cap_h, _) = dirichlet_hk(&g, k, DEFAULT_SUBSET_CAP).unwrap();
            assert!(cap_h >= prev_capital_h - 1e-12, "H_k not nondecreasing");
            assert!(cap_h <= h + 1e-12, "H_k <= h_k violated");
            prev_capital_h = cap_h;
            let (r, _) = packing_radius(&g, k).unwrap();
            assert!(r <= prev_r + 1e-12, "R_k not nonincreasing");
            prev_r = r;
        }
        let oracle = DistanceOracle::new(&g);
        let all: Vec<usize> = (0..g.node_count()).collect();
        let diam = oracle.diameter_over(&all) as usize;
        let mut prev_alpha = usize::MAX;
        for l in 1..=diam.max(1) {
            let (alpha, _) = independence_alpha(&g, l as f64).unwrap();
            assert!(alpha <= prev_alpha);
            prev_alpha = alpha;
            // Packing/independence duality on unweighted graphs.
            let (r_alpha, _) = packing_radius(&g, alpha).unwrap();
            assert!(
                2.0 * r_alpha >= l as f64 - 1e-9,
                "R_alpha_l >= l/2 failed at l={l}"
            );
        }
    }
}

#[test]
fn equal_component_of_certified_witnesses() {
    // Every certified inf-eigenfunction has at least one equal-component;
    // viscosity eigenfunctions have only equal-components.
    for seed in 0..10u64 {
        let g = random_tree(seed, 7);
        let oracle = DistanceOracle::new(&g);
        let nodes: Vec<usize> = (0..g.node_count()).collect();
        // Pick the diameter pair as cone centers.
        let mut best = (0, 0, 0.0f64);
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                let d = oracle.distance(u, v);
                if d > best.2 {
                    best = (u, v, d);
                }
            }
        }
        let pair = cone_eigenfunction(&g, ConeCenters::Pair(best.0, best.1)).unwrap();
        let out = verify_inf_eigenpair(&g, &pair.f, pair.nlambda).unwrap();
        assert!(out.is_feasible(), "seed {seed}");
        let comps = classify_support_components(&g, &pair.f).unwrap();
        assert!(comps.iter().any(|c| c.class == Oscillation::Equal));
        if verify_viscosity(&g, &pair.f, pair.nlambda).unwrap().holds {
            assert!(comps.iter().all(|c| c.class == Oscillation::Equal));
        }
    }
}

#[test]
fn weak_nodal_structure_of_second_one_eigenpairs() {
    // Certified second-eigenvalue witnesses have exactly one positive or
    // exactly one negative weak nodal domain.
    let g = p7();
    let mut f = NodeFn::indicator(&g, &[0, 1, 2]);
    for id in ["5", "6", "7"] {
        f.values[ii(&g, id)] = -1.0;
    }
    for candidate in [NodeFn::indicator(&g, &[0, 1, 2]), f] {
        let out = verify_1_eigenpair(&g, &candidate, 1.0 / 3.0).unwrap();
        assert!(out.is_feasible());
        let report = nodal_domains(&g, &candidate).unwrap();
        let pos = report
            .weak
            .iter()
            .filter(|d| d.sign == plap_core::nodal::Sign::Positive)
            .count();
        let neg = report.weak.len() - pos;
        assert!(pos == 1 || neg == 1);
    }

    // The 13-vertex tree: two positive and two negative strong domains force
    // exactly two weak domains.
    let g = thirteen_tree();
    let mut f = NodeFn::zeros(&g);
    for id in ["1", "2", "3", "11", "12", "13"] {
        f.values[ii(&g, id)] = 1.0;
    }
    for id in ["5", "6", "7", "8", "9", "10"] {
        f.values[ii(&g, id)] = -1.0;
    }
    assert!(verify_1_eigenpair(&g, &f, 1.0 / 3.0).unwrap().is_feasible());
    let report = nodal_domains(&g, &f).unwrap();
    assert_eq!(report.strong_count(), 4);
    assert_eq!(report.weak_count(), 2);
}

#[test]
fn nodal_count_semicontinuity_within_margin() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..20u64 {
        let g = random_tree(seed, 8);
        let f = NodeFn::new(
            (0..g.interior_count())
                .map(|_| {
                    let v: f64 = rng.gen_range(-1.0f64..1.0);
                    if v.abs() < 0.1 {
                        0.0
                    } else {
                        v
                    }
                })
                .collect(),
        );
        if f.is_zero() {
            continue;
        }
        let report = nodal_domains(&g, &f).unwrap();
        let margin = nodal_perturbation_margin(&f);
        for _ in 0..10 {
            let perturbed = NodeFn::new(
                f.values
                    .iter()
                    .map(|v| v + 0.99 * margin * rng.gen_range(-1.0..1.0))
                    .collect(),
            );
            let pr = nodal_domains(&g, &perturbed).unwrap();
            assert!(pr.perfect_count() <= report.perfect_count(), "PN grew");
            assert!(pr.weak_count() >= report.weak_count(), "WN shrank");
        }
    }
}

#[test]
fn packing_sandwich_through_nodal_counts_on_trees() {
    // 1/R_PN(f) <= R_inf(f) <= 1/R_k for constructed tree witnesses.
    for seed in 0..8u64 {
        let g = random_tree(seed, 8);
        let oracle = DistanceOracle::new(&g);
        let all: Vec<usize> = (0..g.node_count()).collect();
        let diam = oracle.diameter_over(&all) as usize;
        for l in 1..=diam {
            let pair = match perfect_nodal_constructor(&g, l) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let r_inf = rayleigh_p(&g, &pair.f, PValue::Infinity).unwrap();
            let report = nodal_domains(&g, &pair.f).unwrap();
            let pn = report.perfect_count().max(1);
            // The perfect-domain centers are pairwise >= 2/Lambda apart, so
            // the packing bound 1/R_PN <= Lambda holds for every certified
            // witness.
            let (r_pn, _) = packing_radius(&g, pn).unwrap();
            assert!(1.0 / r_pn <= r_inf + 1e-9, "lower bound failed");
            // When Lambda equals a variational value 1/R_k of the tree, the
            // witness obeys the upper half of the sandwich at that index.
            for k in 2..=g.interior_count() {
                let (rk, _) = packing_radius(&g, k).unwrap();
                if (r_inf - 1.0 / rk).abs() <= 1e-9 {
                    assert!(r_inf <= 1.0 / rk + 1e-9, "upper bound failed");
                    assert!(pn <= largest_index_with_radius(&g, rk), "PN exceeds multiplicity span");
                    break;
                }
            }
        }
    }
}

/// Largest k whose packing radius still equals `r` (the multiplicity span of
/// the variational value 1/r on a tree).
fn largest_index_with_radius(g: &Graph, r: f64) -> usize {
    let mut best = 1;
    for k in 1..=g.interior_count() {
        let (rk, _) = packing_radius(g, k).unwrap();
        if (rk - r).abs() <= 1e-9 {
            best = k;
        }
    }
    best
}

#[test]
fn duality_residual_on_random_graphs() {
    // Certified smooth eigenpairs transform to edge pairs with tiny residual.
    use plap_core::duality::{edge_eigen_residual, node_to_edge_dual};
    use plap_core::ops::{EigenKind, Eigenpair};
    use plap_core::solver::{estimate_spectrum, FlowConfig};
    for seed in [2u64, 9] {
        let g = random_connected(seed, 6, 2, false);
        for p in [2.0, 3.0] {
            let cfg = FlowConfig {
                restarts: 6,
                seed,
                ..FlowConfig::default()
            };
            let est = estimate_spectrum(&g, PValue::Finite(p), &cfg).unwrap();
            for v in est.values.iter().filter(|v| v.lambda > 1e-8) {
                let pair = Eigenpair::from_function(
                    &g,
                    v.witness.f.clone(),
                    PValue::Finite(p),
                    EigenKind::Classical,
                )
                .unwrap();
                let dual = node_to_edge_dual(&g, &pair).unwrap();
                let res = edge_eigen_residual(&g, &dual.gf, dual.eta, dual.q).unwrap();
                assert!(res <= 1e-8, "seed {seed} p {p} lambda {}: {res}", v.lambda);
            }
        }
    }
}

#[test]
fn delta2_matches_adjacency_formula() {
    // Delta_2 = diag(A 1) - A with A_uv = omega^2 on a random weighted graph.
    let g = random_connected(5, 7, 3, true);
    let n = g.interior_count();
    let l = plap_core::linear::laplacian_matrix(&g);
    let mut a = vec![vec![0.0f64; n]; n];
    for edge in g.edges() {
        if let (Some(i), Some(j)) = (g.interior_index(edge.a), g.interior_index(edge.b)) {
            a[i][j] = edge.omega * edge.omega;
            a[j][i] = a[i][j];
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = NodeFn::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let lap2 = plap_core::ops::p_laplacian_apply(&g, &f, PValue::Finite(2.0)).unwrap();
    for i in 0..n {
        let row: f64 = (0..n).map(|j| a[i][j] * (f.values[i] - f.values[j])).sum();
        // Matrix route and operator route agree (no boundary here).
        let lrow: f64 = (0..n).map(|j| l[(i, j)] * f.values[j]).sum();
        assert!((row - lap2.values[i]).abs() < 1e-12);
        assert!((lrow - lap2.values[i]).abs() < 1e-12);
    }
}

#[test]
fn flow_residual_tracks_gradient_norm() {
    use plap_core::solver::{critical_point_flow, FlowConfig, FlowDirection};
    let g = random_connected(11, 6, 2, false);
    let cfg = FlowConfig {
        restarts: 1,
        seed: 4,
        ..FlowConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let init = NodeFn::new((0..g.interior_count()).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let pair = critical_point_flow(&g, PValue::Finite(3.0), &init, &cfg, FlowDirection::Descent)
        .unwrap();
    let residual =
        plap_core::ops::eigen_residual(&g, &pair.f, pair.lambda, PValue::Finite(3.0)).unwrap();
    assert!(residual <= 1e-8);
    let grad = plap_core::ops::rayleigh_gradient(&g, &pair.f, PValue::Finite(3.0)).unwrap();
    let norm = node_norm_pow(&g, &pair.f, 3.0);
    assert!(grad.values.sup_norm() <= 1e-6 * norm.max(1.0));
}

#[test]
fn one_spectrum_rejects_adjacent_same_sign_blocks() {
    // The positive-positive combination over adjacent supports is never
    // certified while the signed combination is.
    let g = p7();
    let mut same = NodeFn::indicator(&g, &[0, 1, 2]);
    let mut signed = NodeFn::indicator(&g, &[0, 1, 2]);
    for id in ["5", "6", "7"] {
        same.values[ii(&g, id)] = 1.0;
        signed.values[ii(&g, id)] = -1.0;
    }
    assert!(matches!(
        verify_1_eigenpair(&g, &same, 1.0 / 3.0).unwrap(),
        CertOutcome::Infeasible { .. }
    ));
    assert!(verify_1_eigenpair(&g, &signed, 1.0 / 3.0).unwrap().is_feasible());
}
