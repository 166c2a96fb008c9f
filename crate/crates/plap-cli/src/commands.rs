//! Subcommand implementations: input loading, module wiring, report assembly.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::{json, Value};

use plap_core::check;
use plap_core::degenerate::{
    certified_inf_spectrum, certified_one_spectrum, verify_1_eigenpair, verify_edge_inf_dual,
    verify_edge_one_dual, verify_inf_eigenpair, CertOutcome,
};
use plap_core::duality::{edge_eigen_residual, kernel_dims, node_to_edge_dual};
use plap_core::geometry::{
    self, PartitionMode, DEFAULT_CHEEGER_CAP, DEFAULT_SUBSET_CAP,
};
use plap_core::graph::{EdgeFn, Graph, NodeFn};
use plap_core::nodal::{classify_support_components, nodal_boundary_ratio, nodal_domains};
use plap_core::ops::{eigen_residual, rayleigh_pow, EigenKind, Eigenpair, PValue};
use plap_core::solver::{estimate_spectrum, p_scan, FlowConfig};
use plap_core::{GeomError, GraphError, OpError, SolveError};

use crate::report::Report;

pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError {
            exit_code: 2,
            message: msg.into(),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<OpError> for CliError {
    fn from(e: OpError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NoConvergence(..) => CliError {
                exit_code: 3,
                message: e.to_string(),
            },
            SolveError::Precondition(_) => CliError::input(e.to_string()),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::CapExceeded(..) => CliError {
                exit_code: 4,
                message: e.to_string(),
            },
            GeomError::Precondition(_) => CliError::input(e.to_string()),
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(Graph::load(path)?)
}

fn load_node_fn(g: &Graph, path: &Path) -> Result<NodeFn, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read `{}`: {e}", path.display())))?;
    let map: HashMap<String, f64> = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("function JSON `{}`: {e}", path.display())))?;
    Ok(NodeFn::from_id_map(g, &map)?)
}

fn node_fn_json(g: &Graph, f: &NodeFn) -> Value {
    let map: serde_json::Map<String, Value> = f
        .to_id_map(g)
        .into_iter()
        .map(|(k, v)| (k, json!(v)))
        .collect();
    Value::Object(map)
}

fn edge_fn_json(g: &Graph, gf: &EdgeFn) -> Value {
    let mut map = serde_json::Map::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let key = format!("{}->{}", g.node_id(edge.a), g.node_id(edge.b));
        map.insert(key, json!(gf.values[e]));
    }
    Value::Object(map)
}

fn ids_json(g: &Graph, interior: &[usize]) -> Value {
    Value::Array(
        interior
            .iter()
            .map(|&i| json!(g.node_id(g.interior_node(i))))
            .collect(),
    )
}

fn parse_set(g: &Graph, set: &str) -> Result<Vec<usize>, CliError> {
    set.split(',')
        .map(|id| {
            let id = id.trim();
            let u = g
                .node_index(id)
                .ok_or_else(|| CliError::input(format!("unknown node id `{id}`")))?;
            g.interior_index(u)
                .ok_or_else(|| CliError::input(format!("node `{id}` is a boundary node")))
        })
        .collect()
}

fn draw_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn flow_config(tol: f64, max_iters: usize, restarts: usize, seed: u64) -> FlowConfig {
    FlowConfig {
        tol,
        max_iters,
        restarts,
        seed,
        ..FlowConfig::default()
    }
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Exponent: a float > 1, or the literals `1` / `inf`.
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Flow stopping tolerance on the relative eigen-residual.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 50_000)]
    max_iters: usize,
}

pub fn cmd_spectrum(args: SpectrumArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let p = PValue::parse(&args.p)?;
    let mut report = Report::new(
        "spectrum",
        json!({ "graph": args.graph.display().to_string(), "p": args.p,
                "restarts": args.restarts, "tol": args.tol, "max_iters": args.max_iters }),
    );
    let results = match p {
        PValue::Finite(_) => {
            let seed = draw_seed(args.seed);
            report.seed(seed);
            report.note("multi-start flow estimate; an under-approximation with no completeness claim");
            let cfg = flow_config(args.tol, args.max_iters, args.restarts, seed);
            let est = estimate_spectrum(&g, p, &cfg)?;
            if est.values.is_empty() {
                return Err(SolveError::NoConvergence(args.max_iters, f64::INFINITY).into());
            }
            json!({
                "critical_values": est.values.iter().map(|v| json!({
                    "lambda": v.lambda,
                    "nlambda": v.nlambda,
                    "residual": v.residual,
                    "witness": node_fn_json(&g, &v.witness.f),
                })).collect::<Vec<_>>(),
                "dedup_tol": est.dedup_tol,
            })
        }
        PValue::One => {
            report.note("certified indicator spectrum; no flow is run at p = 1");
            if g.interior_count() > DEFAULT_CHEEGER_CAP {
                return Err(GeomError::CapExceeded(g.interior_count(), DEFAULT_CHEEGER_CAP).into());
            }
            let values = certified_one_spectrum(&g, DEFAULT_CHEEGER_CAP)?;
            json!({
                "certified_values": values.iter().map(|(v, f)| json!({
                    "nlambda": v,
                    "witness": node_fn_json(&g, f),
                })).collect::<Vec<_>>(),
            })
        }
        PValue::Infinity => {
            report.note("certified cone spectrum; no flow is run at p = inf");
            let values = certified_inf_spectrum(&g)?;
            json!({
                "certified_values": values.iter().map(|(v, f)| json!({
                    "nlambda": v,
                    "witness": node_fn_json(&g, f),
                })).collect::<Vec<_>>(),
            })
        }
    };
    Ok(report.finish(results))
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Candidate function as JSON `{id: value}` over the interior nodes.
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    p: String,
    /// Unnormalized eigenvalue lambda (finite p only).
    #[arg(long)]
    lambda: Option<f64>,
    /// Normalized eigenvalue Lambda = lambda^(1/p).
    #[arg(long)]
    nlambda: Option<f64>,
    /// Strategy name from the registry, or `auto`.
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

pub fn cmd_verify(args: VerifyArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let f = load_node_fn(&g, &args.function)?;
    let p = PValue::parse(&args.p)?;
    let nlambda = match (args.lambda, args.nlambda) {
        (Some(_), Some(_)) => {
            return Err(CliError::input("give exactly one of --lambda / --nlambda"))
        }
        (None, None) => return Err(CliError::input("one of --lambda / --nlambda is required")),
        (None, Some(nl)) => nl,
        (Some(l), None) => match p {
            PValue::Finite(pf) => l.powf(1.0 / pf),
            _ => {
                return Err(CliError::input(
                    "--lambda is only meaningful for finite p; use --nlambda",
                ))
            }
        },
    };
    let method_name = if args.method == "auto" {
        check::auto_method(p)
    } else {
        Box::leak(args.method.clone().into_boxed_str())
    };
    let checker = check::by_name(method_name)
        .ok_or_else(|| CliError::input(format!("unknown method `{}`", args.method)))?;
    if !checker.supports(p) {
        return Err(CliError::input(format!(
            "method `{method_name}` is not defined at p = {p}"
        )));
    }
    let outcome = checker.run(&g, &f, p, nlambda, args.tol)?;
    let mut report = Report::new(
        "verify",
        json!({ "graph": args.graph.display().to_string(),
                "fn": args.function.display().to_string(),
                "p": args.p, "nlambda": nlambda, "method": method_name, "tol": args.tol }),
    );
    report.note("strategy registry dispatch");
    Ok(report.finish(json!({
        "method": outcome.method,
        "pass": outcome.pass,
        "reason": outcome.reason,
        "payload": outcome.payload,
    })))
}

#[derive(Args)]
pub struct GeometryArgs {
    #[arg(long)]
    graph: PathBuf,
    /// cheeger | dirichlet-h1 | dirichlet-hk | packing | independence |
    /// matching | st-bound | isoperimetric
    #[arg(long)]
    quantity: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<f64>,
    /// Comma-separated interior node ids.
    #[arg(long)]
    set: Option<String>,
    #[arg(long)]
    cap: Option<usize>,
}

pub fn cmd_geometry(args: GeometryArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let need_k = || args.k.ok_or_else(|| CliError::input("--k is required"));
    let results = match args.quantity.as_str() {
        "cheeger" => {
            let cap = args.cap.unwrap_or(DEFAULT_CHEEGER_CAP);
            let (value, family) = geometry::cheeger_hk(&g, need_k()?, cap)?;
            json!({
                "value": value,
                "family": family.subsets.iter().map(|s| ids_json(&g, s)).collect::<Vec<_>>(),
                "per_subset": family.values,
            })
        }
        "dirichlet-h1" => {
            let set = parse_set(
                &g,
                args.set
                    .as_deref()
                    .ok_or_else(|| CliError::input("--set is required"))?,
            )?;
            let cap = args.cap.unwrap_or(DEFAULT_SUBSET_CAP.max(16));
            let (value, witness) = geometry::dirichlet_h1(&g, &set, cap)?;
            json!({ "value": value, "witness": ids_json(&g, &witness) })
        }
        "dirichlet-hk" => {
            let cap = args.cap.unwrap_or(DEFAULT_SUBSET_CAP);
            let (value, witness) = geometry::dirichlet_hk(&g, need_k()?, cap)?;
            json!({ "value": value, "witness": ids_json(&g, &witness) })
        }
        "packing" => {
            let (value, witness) = geometry::packing_radius(&g, need_k()?)?;
            json!({
                "value": value,
                "witness": witness.nodes,
                "min_pairwise": witness.min_pairwise,
                "min_boundary": witness.min_boundary,
            })
        }
        "independence" => {
            let l = args.l.ok_or_else(|| CliError::input("--l is required"))?;
            let (alpha, set) = geometry::independence_alpha(&g, l)?;
            json!({
                "value": alpha,
                "witness": set.iter().map(|&u| g.node_id(u)).collect::<Vec<_>>(),
            })
        }
        "matching" => {
            let (beta, edges) = geometry::matching_number(&g);
            json!({
                "value": beta,
                "witness": edges.iter().map(|&e| {
                    let edge = g.edge(e);
                    format!("{}-{}", g.node_id(edge.a), g.node_id(edge.b))
                }).collect::<Vec<_>>(),
            })
        }
        "st-bound" => {
            let cap = args.cap.unwrap_or(DEFAULT_SUBSET_CAP);
            let value = geometry::st_subpartition_bound(&g, need_k()?, cap)?;
            json!({ "value": value })
        }
        "isoperimetric" => {
            let set = parse_set(
                &g,
                args.set
                    .as_deref()
                    .ok_or_else(|| CliError::input("--set is required"))?,
            )?;
            json!({ "value": geometry::isoperimetric_c(&g, &set)? })
        }
        other => return Err(CliError::input(format!("unknown quantity `{other}`"))),
    };
    let report = Report::new(
        "geometry",
        json!({ "graph": args.graph.display().to_string(), "quantity": args.quantity,
                "k": args.k, "l": args.l, "set": args.set }),
    );
    Ok(report.finish(results))
}

#[derive(Args)]
pub struct NodalArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long = "fn")]
    function: PathBuf,
    /// Also report the boundary ratio of the given nodal domain at this p.
    #[arg(long)]
    ratio_set: Option<String>,
    #[arg(long)]
    p: Option<f64>,
}

pub fn cmd_nodal(args: NodalArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let f = load_node_fn(&g, &args.function)?;
    let report_data = nodal_domains(&g, &f)?;
    let comps = classify_support_components(&g, &f)?;
    let domain_json = |d: &plap_core::nodal::Domain| {
        json!({ "nodes": ids_json(&g, &d.nodes), "sign": format!("{:?}", d.sign).to_lowercase() })
    };
    let mut results = json!({
        "strong_count": report_data.strong_count(),
        "weak_count": report_data.weak_count(),
        "perfect_count": report_data.perfect_count(),
        "strong": report_data.strong.iter().map(domain_json).collect::<Vec<_>>(),
        "weak": report_data.weak.iter().map(domain_json).collect::<Vec<_>>(),
        "perfect": report_data.perfect,
        "zero_set": ids_json(&g, &report_data.zero_set),
        "support_components": comps.iter().map(|c| json!({
            "nodes": ids_json(&g, &c.nodes),
            "rayleigh_inf": c.rayleigh_inf,
            "class": format!("{:?}", c.class).to_lowercase(),
        })).collect::<Vec<_>>(),
        "perturbation_margin": plap_core::nodal::nodal_perturbation_margin(&f),
    });
    if let Some(set) = &args.ratio_set {
        let p = args
            .p
            .ok_or_else(|| CliError::input("--p is required with --ratio-set"))?;
        let set = parse_set(&g, set)?;
        let ratio = nodal_boundary_ratio(&g, &f, &set, PValue::finite(p)?)?;
        results["boundary_ratio"] = json!(ratio);
    }
    let report = Report::new(
        "nodal",
        json!({ "graph": args.graph.display().to_string(), "fn": args.function.display().to_string() }),
    );
    Ok(report.finish(results))
}

#[derive(Args)]
pub struct DualArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

pub fn cmd_dual(args: DualArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let f = load_node_fn(&g, &args.function)?;
    let p = PValue::parse(&args.p)?;
    let (d1, d2) = kernel_dims(&g);
    let mut report = Report::new(
        "dual",
        json!({ "graph": args.graph.display().to_string(),
                "fn": args.function.display().to_string(), "p": args.p }),
    );
    let results = match p {
        PValue::Finite(pf) => {
            let lambda = rayleigh_pow(&g, &f, pf)?;
            let residual = eigen_residual(&g, &f, lambda, p)?;
            if residual > args.tol {
                return Err(OpError::ResidualTooLarge(residual, args.tol).into());
            }
            let pair = Eigenpair {
                nlambda: lambda.powf(1.0 / pf),
                f,
                lambda,
                p,
                kind: EigenKind::Classical,
            };
            let dual = node_to_edge_dual(&g, &pair)?;
            let edge_residual = edge_eigen_residual(&g, &dual.gf, dual.eta, dual.q)?;
            json!({
                "q": format!("{}", dual.q),
                "eta": dual.eta,
                "nlambda": dual.nlambda,
                "edge_fn": edge_fn_json(&g, &dual.gf),
                "edge_residual": edge_residual,
                "kernel_dims": { "d1": d1, "d2": d2 },
            })
        }
        PValue::One => {
            let nlambda = plap_core::ops::rayleigh_p(&g, &f, PValue::One)?;
            match verify_1_eigenpair(&g, &f, nlambda)? {
                CertOutcome::Feasible(cert) => {
                    let verified = verify_edge_inf_dual(&g, &cert.xi_edge, nlambda)?;
                    report.note("dual pair emitted from the 1-certificate edge subgradient");
                    json!({
                        "q": "inf",
                        "nlambda": nlambda,
                        "edge_fn": edge_fn_json(&g, &cert.xi_edge),
                        "edge_subgradient_verified": verified,
                        "kernel_dims": { "d1": d1, "d2": d2 },
                    })
                }
                _ => return Err(CliError::input("function is not a certified 1-eigenpair")),
            }
        }
        PValue::Infinity => {
            let nlambda = plap_core::ops::rayleigh_p(&g, &f, PValue::Infinity)?;
            match verify_inf_eigenpair(&g, &f, nlambda)? {
                CertOutcome::Feasible(cert) => {
                    let doubled =
                        EdgeFn::new(cert.xi_edge.values.iter().map(|v| 2.0 * v).collect());
                    let verified = verify_edge_one_dual(&g, &doubled, nlambda)?;
                    report.note("dual pair emitted from the inf-certificate edge subgradient");
                    json!({
                        "q": "1",
                        "nlambda": nlambda,
                        "edge_fn": edge_fn_json(&g, &doubled),
                        "edge_subgradient_verified": verified,
                        "kernel_dims": { "d1": d1, "d2": d2 },
                    })
                }
                _ => return Err(CliError::input("function is not a certified inf-eigenpair")),
            }
        }
    };
    Ok(report.finish(results))
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated increasing grid of p values, all > 1.
    #[arg(long)]
    grid: String,
    #[arg(long, default_value_t = 3)]
    k_track: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 24)]
    restarts: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Also write the scan as CSV (`p,lambda_1,...`).
    #[arg(long)]
    csv: Option<PathBuf>,
}

pub fn cmd_scan(args: ScanArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let grid: Vec<f64> = args
        .grid
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("bad grid entry `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    let seed = draw_seed(args.seed);
    let cfg = flow_config(args.tol, 50_000, args.restarts, seed);
    let rows = p_scan(&g, &grid, args.k_track, &cfg)?;

    let mut csv = String::new();
    csv.push('p');
    for k in 1..=args.k_track {
        csv.push_str(&format!(",lambda_{k}"));
    }
    for k in 1..=args.k_track {
        csv.push_str(&format!(",edge_norm_{k}"));
    }
    for k in 1..=args.k_track {
        csv.push_str(&format!(",mass_norm_{k}"));
    }
    csv.push('\n');
    for row in &rows {
        csv.push_str(&format!("{}", row.p));
        let cell = |v: Option<&f64>| match v {
            Some(x) => format!(",{x}"),
            None => ",".to_string(),
        };
        for k in 0..args.k_track {
            csv.push_str(&cell(row.lambdas.get(k)));
        }
        for k in 0..args.k_track {
            csv.push_str(&cell(row.norm_edge.get(k)));
        }
        for k in 0..args.k_track {
            csv.push_str(&cell(row.norm_mass.get(k)));
        }
        csv.push('\n');
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, &csv)
            .map_err(|e| CliError::input(format!("cannot write `{}`: {e}", path.display())))?;
    }

    let mut report = Report::new(
        "scan",
        json!({ "graph": args.graph.display().to_string(), "grid": grid,
                "k_track": args.k_track, "restarts": args.restarts }),
    );
    report.seed(seed);
    Ok(report.finish(json!({
        "rows": rows.iter().map(|r| json!({
            "p": r.p,
            "lambdas": r.lambdas,
            "edge_normalized": r.norm_edge,
            "mass_normalized": r.norm_mass,
        })).collect::<Vec<_>>(),
        "csv": csv,
    })))
}

#[derive(Args)]
pub struct PartitionArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// disjoint | nonadjacent
    #[arg(long, default_value = "disjoint")]
    mode: String,
    #[arg(long, default_value_t = 1)]
    order: u8,
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    cap: usize,
}

pub fn cmd_partition(args: PartitionArgs) -> Result<Value, CliError> {
    let g = load_graph(&args.graph)?;
    let mode = match args.mode.as_str() {
        "disjoint" => PartitionMode::Disjoint,
        "nonadjacent" => PartitionMode::Nonadjacent,
        other => return Err(CliError::input(format!("unknown mode `{other}`"))),
    };
    let (value, family) = geometry::spectral_min_partition(&g, args.k, mode, args.order, args.cap)?;
    let report = Report::new(
        "partition",
        json!({ "graph": args.graph.display().to_string(), "k": args.k,
                "mode": args.mode, "order": args.order }),
    );
    Ok(report.finish(json!({
        "value": value,
        "inverse_value": if value > 0.0 { json!(1.0 / value) } else { json!(null) },
        "family": family.iter().map(|s| ids_json(&g, s)).collect::<Vec<_>>(),
    })))
}
