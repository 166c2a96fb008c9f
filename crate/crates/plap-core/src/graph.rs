//! Graph data model: weighted undirected graphs with an optional Dirichlet
//! boundary, node measures, the shortest-path metric, and the incidence /
//! divergence operators that everything else is built on.
//!
//! Edge weights `omega` are reciprocal edge lengths: the distance between two
//! nodes is the minimum over connecting paths of the sum of `1/omega`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::error::GraphError;

/// Dense index of a node in load order (interior and boundary alike).
pub type NodeIdx = usize;
/// Dense index into the interior node list.
pub type InteriorIdx = usize;
/// Dense index into the undirected edge list.
pub type EdgeIdx = usize;

#[derive(Debug, Clone)]
struct NodeData {
    id: String,
    boundary: bool,
    /// Node measure nu; meaningful for interior nodes only.
    measure: f64,
}

/// An undirected edge stored once, with endpoints ordered `a < b`.
///
/// The canonical orientation of edge functions is `a -> b`.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub a: NodeIdx,
    pub b: NodeIdx,
    /// Reciprocal edge length.
    pub omega: f64,
}

/// Weighted undirected graph with boundary set and interior node measure.
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<NodeData>,
    edges: Vec<Edge>,
    /// adjacency[u] = (neighbour, edge index)
    adj: Vec<Vec<(NodeIdx, EdgeIdx)>>,
    /// Global index -> interior index (None for boundary nodes).
    interior_of: Vec<Option<InteriorIdx>>,
    /// Interior index -> global index.
    interior: Vec<NodeIdx>,
    id_of: HashMap<String, NodeIdx>,
}

impl Graph {
    /// Number of nodes including the boundary.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// N = |V \ B|, the dimension of the function space.
    pub fn interior_count(&self) -> usize {
        self.interior.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> Edge {
        self.edges[e]
    }

    pub fn node_id(&self, u: NodeIdx) -> &str {
        &self.nodes[u].id
    }

    pub fn node_index(&self, id: &str) -> Option<NodeIdx> {
        self.id_of.get(id).copied()
    }

    pub fn is_boundary(&self, u: NodeIdx) -> bool {
        self.nodes[u].boundary
    }

    pub fn has_boundary(&self) -> bool {
        self.interior.len() < self.nodes.len()
    }

    pub fn boundary_nodes(&self) -> impl Iterator<Item = NodeIdx> + '_ {
        (0..self.nodes.len()).filter(|&u| self.nodes[u].boundary)
    }

    /// Interior indices in load order.
    pub fn interior_nodes(&self) -> &[NodeIdx] {
        &self.interior
    }

    pub fn interior_index(&self, u: NodeIdx) -> Option<InteriorIdx> {
        self.interior_of[u]
    }

    pub fn interior_node(&self, i: InteriorIdx) -> NodeIdx {
        self.interior[i]
    }

    /// Measure nu of an interior node (by interior index).
    pub fn measure(&self, i: InteriorIdx) -> f64 {
        self.nodes[self.interior[i]].measure
    }

    /// Total measure of the interior, |nu|.
    pub fn total_measure(&self) -> f64 {
        self.interior.iter().map(|&u| self.nodes[u].measure).sum()
    }

    pub fn neighbors(&self, u: NodeIdx) -> &[(NodeIdx, EdgeIdx)] {
        &self.adj[u]
    }

    /// True when all omega = 1 and all interior measures = 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.omega == 1.0)
            && self.interior.iter().all(|&u| self.nodes[u].measure == 1.0)
    }

    /// True when the whole graph (boundary included) is connected.
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Connected components of the subgraph induced by `nodes` (interior indices).
    pub fn components_of(&self, nodes: &[InteriorIdx]) -> Vec<Vec<InteriorIdx>> {
        let member: std::collections::HashSet<InteriorIdx> = nodes.iter().copied().collect();
        let mut seen: std::collections::HashSet<InteriorIdx> = Default::default();
        let mut out = Vec::new();
        for &start in nodes {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(i) = stack.pop() {
                comp.push(i);
                let u = self.interior[i];
                for &(v, _) in &self.adj[u] {
                    if let Some(j) = self.interior_of[v] {
                        if member.contains(&j) && seen.insert(j) {
                            stack.push(j);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort();
        out
    }

    /// Loads a graph from the `GRAPH v1` text format.
    pub fn load(path: &Path) -> Result<Graph, GraphError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GraphError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    /// Parses the `GRAPH v1` text format (UTF-8, line oriented, `#` comments).
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut builder = GraphBuilder::new();
        let mut lines = text.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((n, line)) => {
                    let line = strip_comment(line).trim();
                    if line.is_empty() {
                        continue;
                    }
                    break (n + 1, line.to_string());
                }
                None => return Err(GraphError::Parse(1, "empty file, expected `GRAPH v1`".into())),
            }
        };
        if header.1 != "GRAPH v1" {
            return Err(GraphError::Parse(header.0, format!("expected `GRAPH v1`, found `{}`", header.1)));
        }
        for (n, raw) in lines {
            let lineno = n + 1;
            let line = strip_comment(raw).trim().to_string();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "node" => {
                    if tokens.len() < 2 {
                        return Err(GraphError::Parse(lineno, "node line needs an id".into()));
                    }
                    let id = tokens[1];
                    let mut boundary = false;
                    let mut measure = None;
                    for tok in &tokens[2..] {
                        if *tok == "boundary" {
                            boundary = true;
                        } else if let Some(val) = tok.strip_prefix("measure=") {
                            let m: f64 = val
                                .parse()
                                .map_err(|_| GraphError::Parse(lineno, format!("bad measure `{val}`")))?;
                            measure = Some(m);
                        } else {
                            return Err(GraphError::Parse(lineno, format!("unknown node attribute `{tok}`")));
                        }
                    }
                    if boundary && measure.is_some() {
                        return Err(GraphError::Parse(
                            lineno,
                            format!("boundary node `{id}` may not carry a measure"),
                        ));
                    }
                    if let Some(m) = measure {
                        if m <= 0.0 {
                            return Err(GraphError::NonpositiveMeasure(id.to_string()));
                        }
                    }
                    builder
                        .declare_node(id, boundary, measure.unwrap_or(1.0))
                        .map_err(|msg| GraphError::Parse(lineno, msg))?;
                }
                "edge" => {
                    if tokens.len() != 4 {
                        return Err(GraphError::Parse(lineno, "edge line is `edge <id> <id> <omega>`".into()));
                    }
                    let omega: f64 = tokens[3]
                        .parse()
                        .map_err(|_| GraphError::Parse(lineno, format!("bad omega `{}`", tokens[3])))?;
                    builder
                        .add_edge(tokens[1], tokens[2], omega)
                        .map_err(|e| match e {
                            EdgeDeclError::Nonpositive => GraphError::NonpositiveOmega(format!("{} {}", tokens[1], tokens[2])),
                            EdgeDeclError::SelfLoop => GraphError::Parse(lineno, format!("self-loop at `{}`", tokens[1])),
                            EdgeDeclError::Duplicate => GraphError::DuplicateEdge(format!("{} {}", tokens[1], tokens[2])),
                        })?;
                }
                other => {
                    return Err(GraphError::Parse(lineno, format!("unknown directive `{other}`")));
                }
            }
        }
        builder.build()
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

enum EdgeDeclError {
    Nonpositive,
    SelfLoop,
    Duplicate,
}

/// Incremental graph construction, used by the parser and by tests.
pub struct GraphBuilder {
    nodes: Vec<NodeData>,
    id_of: HashMap<String, NodeIdx>,
    declared: Vec<bool>,
    edges: Vec<Edge>,
    edge_set: std::collections::HashSet<(NodeIdx, NodeIdx)>,
}

impl GraphBuilder {
    fn new() -> Self {
        GraphBuilder {
            nodes: Vec::new(),
            id_of: HashMap::new(),
            declared: Vec::new(),
            edges: Vec::new(),
            edge_set: Default::default(),
        }
    }

    fn intern(&mut self, id: &str) -> NodeIdx {
        if let Some(&u) = self.id_of.get(id) {
            return u;
        }
        let u = self.nodes.len();
        self.nodes.push(NodeData {
            id: id.to_string(),
            boundary: false,
            measure: 1.0,
        });
        self.declared.push(false);
        self.id_of.insert(id.to_string(), u);
        u
    }

    fn declare_node(&mut self, id: &str, boundary: bool, measure: f64) -> Result<(), String> {
        let u = self.intern(id);
        if self.declared[u] {
            return Err(format!("node `{id}` declared twice"));
        }
        self.declared[u] = true;
        self.nodes[u].boundary = boundary;
        self.nodes[u].measure = measure;
        Ok(())
    }

    /// Adds an interior node (declared; defaults when absent from the file).
    pub fn node(&mut self, id: &str) -> &mut Self {
        let _ = self.declare_node(id, false, 1.0);
        self
    }

    pub fn node_measured(&mut self, id: &str, measure: f64) -> &mut Self {
        let _ = self.declare_node(id, false, measure);
        self
    }

    pub fn boundary_node(&mut self, id: &str) -> &mut Self {
        let _ = self.declare_node(id, true, 1.0);
        self
    }

    fn add_edge(&mut self, x: &str, y: &str, omega: f64) -> Result<(), EdgeDeclError> {
        if omega <= 0.0 {
            return Err(EdgeDeclError::Nonpositive);
        }
        let u = self.intern(x);
        let v = self.intern(y);
        if u == v {
            return Err(EdgeDeclError::SelfLoop);
        }
        let key = (u.min(v), u.max(v));
        if !self.edge_set.insert(key) {
            return Err(EdgeDeclError::Duplicate);
        }
        self.edges.push(Edge {
            a: key.0,
            b: key.1,
            omega,
        });
        Ok(())
    }

    pub fn edge(&mut self, x: &str, y: &str, omega: f64) -> &mut Self {
        self.add_edge(x, y, omega).map_err(|_| ()).expect("builder edge must be valid");
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut interior = Vec::new();
        let mut interior_of = vec![None; self.nodes.len()];
        for (u, data) in self.nodes.iter().enumerate() {
            if data.measure <= 0.0 {
                return Err(GraphError::NonpositiveMeasure(data.id.clone()));
            }
            if !data.boundary {
                interior_of[u] = Some(interior.len());
                interior.push(u);
            }
        }
        if interior.is_empty() {
            return Err(GraphError::NoInterior);
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[edge.a].push((edge.b, e));
            adj[edge.b].push((edge.a, e));
        }
        Ok(Graph {
            nodes: self.nodes,
            edges: self.edges,
            adj,
            interior_of,
            interior,
            id_of: self.id_of,
        })
    }

    pub fn build_unchecked(self) -> Graph {
        self.build().expect("builder graph must be valid")
    }
}

/// Real-valued function on the interior nodes, implicitly zero on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeFn {
    pub values: Vec<f64>,
}

impl NodeFn {
    pub fn new(values: Vec<f64>) -> Self {
        NodeFn { values }
    }

    pub fn zeros(g: &Graph) -> Self {
        NodeFn {
            values: vec![0.0; g.interior_count()],
        }
    }

    pub fn constant(g: &Graph, c: f64) -> Self {
        NodeFn {
            values: vec![c; g.interior_count()],
        }
    }

    /// Indicator of a set of interior indices.
    pub fn indicator(g: &Graph, set: &[InteriorIdx]) -> Self {
        let mut f = Self::zeros(g);
        for &i in set {
            f.values[i] = 1.0;
        }
        f
    }

    /// Value at a global node index; boundary nodes read as zero.
    pub fn at(&self, g: &Graph, u: NodeIdx) -> f64 {
        match g.interior_index(u) {
            Some(i) => self.values[i],
            None => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Builds a NodeFn from an id -> value map, requiring every interior id.
    pub fn from_id_map(g: &Graph, map: &HashMap<String, f64>) -> Result<Self, GraphError> {
        for id in map.keys() {
            match g.node_index(id) {
                None => return Err(GraphError::UnknownNode(id.clone())),
                Some(u) if g.is_boundary(u) => {
                    return Err(GraphError::BoundaryValue(id.clone()));
                }
                _ => {}
            }
        }
        let mut values = Vec::with_capacity(g.interior_count());
        for &u in g.interior_nodes() {
            match map.get(g.node_id(u)) {
                Some(&v) => values.push(v),
                None => return Err(GraphError::MissingValue(g.node_id(u).to_string())),
            }
        }
        Ok(NodeFn { values })
    }

    pub fn to_id_map(&self, g: &Graph) -> HashMap<String, f64> {
        g.interior_nodes()
            .iter()
            .enumerate()
            .map(|(i, &u)| (g.node_id(u).to_string(), self.values[i]))
            .collect()
    }
}

impl fmt::Display for NodeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

/// Antisymmetric function on directed edges, stored once per undirected edge
/// in the canonical `a -> b` orientation. `G(b, a) = -values[e]` by storage.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFn {
    pub values: Vec<f64>,
}

impl EdgeFn {
    pub fn new(values: Vec<f64>) -> Self {
        EdgeFn { values }
    }

    pub fn zeros(g: &Graph) -> Self {
        EdgeFn {
            values: vec![0.0; g.edge_count()],
        }
    }

    /// Directed value G(u, v) for an adjacent pair.
    pub fn directed(&self, g: &Graph, e: EdgeIdx, from: NodeIdx) -> f64 {
        if g.edge(e).a == from {
            self.values[e]
        } else {
            -self.values[e]
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

/// Discrete gradient: `Kf(u, v) = omega_uv (f(v) - f(u))`, boundary reads 0.
pub fn incidence_apply(g: &Graph, f: &NodeFn) -> EdgeFn {
    let values = g
        .edges()
        .iter()
        .map(|e| e.omega * (f.at(g, e.b) - f.at(g, e.a)))
        .collect();
    EdgeFn { values }
}

/// Discrete divergence, the adjoint of the gradient:
/// `div G(u) = (1/2) sum_{v~u} omega_uv (G(v,u) - G(u,v)) = -sum_{v~u} omega_uv G(u,v)`,
/// so that `<Kf, G>_E = <f, div G>` and `div(|Kf|^{p-2} Kf) = Delta_p f`.
pub fn divergence_apply(g: &Graph, gf: &EdgeFn) -> NodeFn {
    let mut out = NodeFn::zeros(g);
    for (e, edge) in g.edges().iter().enumerate() {
        let flow = edge.omega * gf.values[e];
        // G(a,b) = +values[e]: node a loses, node b gains.
        if let Some(i) = g.interior_index(edge.a) {
            out.values[i] -= flow;
        }
        if let Some(i) = g.interior_index(edge.b) {
            out.values[i] += flow;
        }
    }
    out
}

/// All-pairs shortest path distances with edge lengths `1/omega`, plus
/// distances to the boundary (infinite when B is empty).
#[derive(Debug, Clone)]
pub struct DistanceOracle {
    dist: Vec<Vec<f64>>,
    d_boundary: Vec<f64>,
}

impl DistanceOracle {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut dist = vec![vec![f64::INFINITY; n]; n];
        for u in 0..n {
            dist[u][u] = 0.0;
        }
        for e in g.edges() {
            let len = 1.0 / e.omega;
            if len < dist[e.a][e.b] {
                dist[e.a][e.b] = len;
                dist[e.b][e.a] = len;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if dist[i][k].is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let via = dist[i][k] + dist[k][j];
                    if via < dist[i][j] {
                        dist[i][j] = via;
                    }
                }
            }
        }
        let d_boundary = (0..n)
            .map(|u| {
                g.boundary_nodes()
                    .map(|b| dist[u][b])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        DistanceOracle { dist, d_boundary }
    }

    pub fn distance(&self, u: NodeIdx, v: NodeIdx) -> f64 {
        self.dist[u][v]
    }

    pub fn boundary_distance(&self, u: NodeIdx) -> f64 {
        self.d_boundary[u]
    }

    /// Graph diameter over the given nodes (max finite pairwise distance).
    pub fn diameter_over(&self, nodes: &[NodeIdx]) -> f64 {
        let mut d = 0.0f64;
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                let duv = self.dist[u][v];
                if duv.is_finite() {
                    d = d.max(duv);
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::{p7, star_weighted};

    #[test]
    fn parse_p7_file() {
        let text = "\
GRAPH v1
# a path on seven nodes
edge 1 2 1
edge 2 3 1
edge 3 4 1
edge 4 5 1
edge 5 6 1
edge 6 7 1
";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.interior_count(), 7);
        assert_eq!(g.edge_count(), 6);
        assert!(!g.has_boundary());
        assert!(g.is_unweighted());
    }

    #[test]
    fn parse_rejects_zero_omega() {
        let text = "GRAPH v1\nedge a b 0\n";
        let err = Graph::parse(text).unwrap_err();
        assert!(matches!(err, GraphError::NonpositiveOmega(_)), "{err}");
    }

    #[test]
    fn parse_rejects_duplicate_edge() {
        let text = "GRAPH v1\nedge a b 1\nedge b a 2\n";
        let err = Graph::parse(text).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge(_)));
    }

    #[test]
    fn parse_star_with_weights() {
        let text = "\
GRAPH v1
node v1
node v2
node v3
node v4
edge v1 v2 2
edge v1 v3 1
edge v1 v4 1.5
";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 3);
        // d(v2, v3) = 1/2 + 1 = 3/2 through the hub.
        let o = DistanceOracle::new(&g);
        let v2 = g.node_index("v2").unwrap();
        let v3 = g.node_index("v3").unwrap();
        assert!((o.distance(v2, v3) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn parse_boundary_with_measure_rejected() {
        let text = "GRAPH v1\nnode a boundary measure=2\n";
        assert!(Graph::parse(text).is_err());
    }

    #[test]
    fn distances_on_p7() {
        let g = p7();
        let o = DistanceOracle::new(&g);
        let n1 = g.node_index("1").unwrap();
        let n7 = g.node_index("7").unwrap();
        assert_eq!(o.distance(n1, n7), 6.0);
    }

    #[test]
    fn disconnected_distance_is_infinite() {
        let mut b = Graph::builder();
        b.node("a").node("b");
        let g = b.build_unchecked();
        let o = DistanceOracle::new(&g);
        assert!(o.distance(0, 1).is_infinite());
    }

    #[test]
    fn boundary_distances() {
        let g = p7();
        let o = DistanceOracle::new(&g);
        for u in 0..7 {
            assert!(o.boundary_distance(u).is_infinite());
        }

        let gb = crate::test_graphs::p7_with_boundary(&["1"]);
        let ob = DistanceOracle::new(&gb);
        let n4 = gb.node_index("4").unwrap();
        assert_eq!(ob.boundary_distance(n4), 3.0);

        let gb2 = crate::test_graphs::p7_with_boundary(&["1", "7"]);
        let ob2 = DistanceOracle::new(&gb2);
        let n4 = gb2.node_index("4").unwrap();
        assert_eq!(ob2.boundary_distance(n4), 3.0);
    }

    #[test]
    fn incidence_on_cone_profile() {
        let g = p7();
        let f = NodeFn::new(vec![1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0, -1.0 / 3.0, -2.0 / 3.0, -1.0]);
        let kf = incidence_apply(&g, &f);
        for e in 0..6 {
            assert!((kf.values[e] + 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn incidence_constant_is_zero() {
        let g = p7();
        let f = NodeFn::constant(&g, 3.25);
        let kf = incidence_apply(&g, &f);
        assert!(kf.is_zero());
    }

    #[test]
    fn incidence_sees_boundary_zero() {
        let g = crate::test_graphs::p7_with_boundary(&["4"]);
        let mut f = NodeFn::zeros(&g);
        for id in ["1", "2", "3"] {
            let i = g.interior_index(g.node_index(id).unwrap()).unwrap();
            f.values[i] = 1.0;
        }
        let kf = incidence_apply(&g, &f);
        let e34 = g
            .edges()
            .iter()
            .position(|e| {
                let (x, y) = (g.node_id(e.a), g.node_id(e.b));
                (x == "3" && y == "4") || (x == "4" && y == "3")
            })
            .unwrap();
        // Kf(3,4) = f(4) - f(3) = -1 with the boundary value 0.
        let n3 = g.node_index("3").unwrap();
        assert_eq!(kf.directed(&g, e34, n3), -1.0);
    }

    #[test]
    fn divergence_of_indicator_gradient_is_laplacian() {
        let g = p7();
        let f = NodeFn::indicator(&g, &[0, 1, 2]);
        let kf = incidence_apply(&g, &f);
        let div = divergence_apply(&g, &kf);
        let expected = [0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0];
        for i in 0..7 {
            assert!((div.values[i] - expected[i]).abs() < 1e-15, "node {i}");
        }
    }

    #[test]
    fn adjointness_spot_check() {
        let g = star_weighted();
        let f = NodeFn::new(vec![0.3, -1.2, 0.7, 2.0]);
        let gf = EdgeFn::new(vec![0.5, -0.25, 1.5]);
        let kf = incidence_apply(&g, &f);
        let lhs: f64 = kf
            .values
            .iter()
            .zip(&gf.values)
            .map(|(a, b)| a * b)
            .sum();
        let div = divergence_apply(&g, &gf);
        let rhs: f64 = f.values.iter().zip(&div.values).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn components() {
        let g = p7();
        assert_eq!(g.components_of(&[0, 1, 2]).len(), 1);
        assert_eq!(g.components_of(&[0, 1, 4, 5]).len(), 2);
        assert!(g.components_of(&[]).is_empty());
    }

    #[test]
    fn node_fn_from_map_requires_all_interior() {
        let g = p7();
        let mut map = HashMap::new();
        for i in 1..=6 {
            map.insert(i.to_string(), 1.0);
        }
        assert!(matches!(
            NodeFn::from_id_map(&g, &map),
            Err(GraphError::MissingValue(_))
        ));
        map.insert("7".into(), 0.5);
        assert!(NodeFn::from_id_map(&g, &map).is_ok());
    }
}
