//! Exact combinatorial invariants at desk scale: isoperimetric and Cheeger
//! constants, Dirichlet Cheeger constants, packing radii, l-independence
//! numbers, the matching number, singleton/triangle subpartition lower
//! bounds, and spectral minimal partitions of the infinity Laplacian.
//!
//! Every search is exhaustive with explicit caps; exceeding a cap is an
//! error, never a silent heuristic, because these values serve as oracles.

use serde::Serialize;

use crate::error::GeomError;
use crate::graph::{DistanceOracle, EdgeIdx, Graph, InteriorIdx, NodeIdx};

pub const DEFAULT_CHEEGER_CAP: usize = 16;
pub const DEFAULT_SUBSET_CAP: usize = 12;

type Mask = u64;

fn mask_of(set: &[InteriorIdx]) -> Mask {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

fn set_of(mask: Mask, n: usize) -> Vec<InteriorIdx> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Cut weight toward the complement (boundary included) and nu-mass of an
/// interior subset given as a bitmask over interior indices.
fn cut_and_mass(g: &Graph, mask: Mask) -> (f64, f64) {
    let mut cut = 0.0;
    for edge in g.edges() {
        let ina = g
            .interior_index(edge.a)
            .is_some_and(|i| mask & (1 << i) != 0);
        let inb = g
            .interior_index(edge.b)
            .is_some_and(|i| mask & (1 << i) != 0);
        if ina != inb {
            cut += edge.omega;
        }
    }
    let mass: f64 = (0..g.interior_count())
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| g.measure(i))
        .sum();
    (cut, mass)
}

/// Isoperimetric constant `c(A) = omega(E(A, A^c)) / nu(A)`; each undirected
/// cut edge counts once and edges into the boundary count.
pub fn isoperimetric_c(g: &Graph, a: &[InteriorIdx]) -> Result<f64, GeomError> {
    if a.is_empty() {
        return Err(GeomError::Precondition("subset must be nonempty".into()));
    }
    let (cut, mass) = cut_and_mass(g, mask_of(a));
    Ok(cut / mass)
}

fn connected_masks(g: &Graph) -> Vec<Mask> {
    let n = g.interior_count();
    // Interior-to-interior adjacency as masks.
    let mut adj = vec![0 as Mask; n];
    for edge in g.edges() {
        if let (Some(i), Some(j)) = (g.interior_index(edge.a), g.interior_index(edge.b)) {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut out = Vec::new();
    for mask in 1..(1u64 << n) {
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            let mut rest = frontier;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= adj[i] & mask & !seen;
            }
            seen |= next;
            frontier = next;
        }
        if seen == mask {
            out.push(mask);
        }
    }
    out
}

/// A family of pairwise-disjoint subsets with their isoperimetric values.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetFamily {
    pub subsets: Vec<Vec<InteriorIdx>>,
    pub values: Vec<f64>,
    pub max_value: f64,
}

struct Scored {
    mask: Mask,
    /// Mask of the subset together with its interior neighbours.
    closure: Mask,
    score: f64,
}

fn closure_of(g: &Graph, mask: Mask) -> Mask {
    let mut closure = mask;
    for edge in g.edges() {
        if let (Some(i), Some(j)) = (g.interior_index(edge.a), g.interior_index(edge.b)) {
            if mask & (1 << i) != 0 {
                closure |= 1 << j;
            }
            if mask & (1 << j) != 0 {
                closure |= 1 << i;
            }
        }
    }
    closure
}

fn pack_search(
    cands: &[Scored],
    k: usize,
    nonadjacent: bool,
    used: Mask,
    used_closure: Mask,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    for i in start..cands.len() {
        let c = &cands[i];
        if c.mask & used != 0 {
            continue;
        }
        if nonadjacent && (c.mask & used_closure != 0) {
            continue;
        }
        chosen.push(i);
        if pack_search(
            cands,
            k,
            nonadjacent,
            used | c.mask,
            used_closure | c.closure,
            i + 1,
            chosen,
        ) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Minimizes `max score` over families of k pairwise-disjoint (optionally
/// pairwise non-adjacent) candidate sets. Candidates must be sorted by score.
fn min_max_family(
    cands: &[Scored],
    k: usize,
    nonadjacent: bool,
) -> Option<(f64, Vec<Mask>)> {
    // Distinct thresholds in ascending order; take the smallest feasible.
    let mut upper_ends: Vec<usize> = Vec::new();
    for i in 0..cands.len() {
        if i + 1 == cands.len() || cands[i + 1].score > cands[i].score {
            upper_ends.push(i);
        }
    }
    let mut lo = 0usize;
    let mut hi = upper_ends.len();
    let mut best: Option<(f64, Vec<Mask>)> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let end = upper_ends[mid];
        let mut chosen = Vec::new();
        if pack_search(&cands[..=end], k, nonadjacent, 0, 0, 0, &mut chosen) {
            // Feasible at this threshold; record the witness with its true max.
            let masks: Vec<Mask> = chosen.iter().map(|&i| cands[i].mask).collect();
            let value = chosen
                .iter()
                .map(|&i| cands[i].score)
                .fold(f64::NEG_INFINITY, f64::max);
            best = Some((value, masks));
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    best
}

/// k-th Cheeger constant: exact minimum over families of k disjoint nonempty
/// interior subsets of the maximal isoperimetric constant, with an optimal
/// family witness (smallest-index family among the optima).
pub fn cheeger_hk(g: &Graph, k: usize, cap: usize) -> Result<(f64, SubsetFamily), GeomError> {
    let n = g.interior_count();
    if n > cap {
        return Err(GeomError::CapExceeded(n, cap));
    }
    if k < 1 || k > n {
        return Err(GeomError::Precondition(format!(
            "k must lie in 1..={n}, got {k}"
        )));
    }
    // Disconnected sets never beat their best component, so connected
    // candidates are enough.
    let mut cands: Vec<Scored> = connected_masks(g)
        .into_iter()
        .map(|mask| {
            let (cut, mass) = cut_and_mass(g, mask);
            Scored {
                mask,
                closure: closure_of(g, mask),
                score: cut / mass,
            }
        })
        .collect();
    cands.sort_by(|a, b| a.score.partial_cmp(&b.score).unwrap().then(a.mask.cmp(&b.mask)));
    let (value, masks) =
        min_max_family(&cands, k, false).ok_or_else(|| {
            GeomError::Precondition(format!("no family of {k} disjoint subsets exists"))
        })?;
    let subsets: Vec<Vec<InteriorIdx>> = masks.iter().map(|&m| set_of(m, n)).collect();
    let values: Vec<f64> = masks
        .iter()
        .map(|&m| {
            let (cut, mass) = cut_and_mass(g, m);
            cut / mass
        })
        .collect();
    Ok((
        value,
        SubsetFamily {
            subsets,
            values,
            max_value: value,
        },
    ))
}

/// Dirichlet Cheeger constant of a subset: `h_1(A) = min over nonempty
/// B subset of A of c(B)`, returning an optimal B.
pub fn dirichlet_h1(
    g: &Graph,
    a: &[InteriorIdx],
    cap: usize,
) -> Result<(f64, Vec<InteriorIdx>), GeomError> {
    if a.is_empty() {
        return Err(GeomError::Precondition("subset must be nonempty".into()));
    }
    if a.len() > cap {
        return Err(GeomError::CapExceeded(a.len(), cap));
    }
    let full = mask_of(a);
    let mut best = f64::INFINITY;
    let mut best_mask = 0;
    // Standard submask enumeration.
    let mut sub = full;
    loop {
        if sub != 0 {
            let (cut, mass) = cut_and_mass(g, sub);
            let c = cut / mass;
            if c < best {
                best = c;
                best_mask = sub;
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & full;
    }
    Ok((best, set_of(best_mask, g.interior_count())))
}

/// k-th Dirichlet Cheeger constant: `H_k = max over |A| >= N-k+1 of h_1(A)`.
/// Monotonicity puts the optimum at `|A| = N-k+1` exactly.
pub fn dirichlet_hk(
    g: &Graph,
    k: usize,
    cap: usize,
) -> Result<(f64, Vec<InteriorIdx>), GeomError> {
    let n = g.interior_count();
    if n > cap {
        return Err(GeomError::CapExceeded(n, cap));
    }
    if k < 1 || k > n {
        return Err(GeomError::Precondition(format!(
            "k must lie in 1..={n}, got {k}"
        )));
    }
    let size = n - k + 1;
    let mut best = f64::NEG_INFINITY;
    let mut best_a = Vec::new();
    for mask in 1..(1u64 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let a = set_of(mask, n);
        let (h, _) = dirichlet_h1(g, &a, cap)?;
        if h > best {
            best = h;
            best_a = a;
        }
    }
    Ok((best, best_a))
}

/// Witness of a packing: k centers with their separation quantities.
#[derive(Debug, Clone, Serialize)]
pub struct PackingWitness {
    pub nodes: Vec<String>,
    pub min_pairwise: f64,
    pub min_boundary: f64,
    pub radius: f64,
}

/// k-th packing radius: the exact maximum over k interior centers of
/// `min(min pairwise distance / 2, min boundary distance)`.
pub fn packing_radius(g: &Graph, k: usize) -> Result<(f64, PackingWitness), GeomError> {
    let interior = g.interior_nodes();
    if k < 1 || k > interior.len() {
        return Err(GeomError::Precondition(format!(
            "k must lie in 1..={}, got {k}",
            interior.len()
        )));
    }
    let oracle = DistanceOracle::new(g);
    let mut best_radius = f64::NEG_INFINITY;
    let mut best_set: Vec<NodeIdx> = Vec::new();

    fn search(
        interior: &[NodeIdx],
        oracle: &DistanceOracle,
        k: usize,
        start: usize,
        current: &mut Vec<NodeIdx>,
        score: f64,
        best_radius: &mut f64,
        best_set: &mut Vec<NodeIdx>,
    ) {
        if current.len() == k {
            if score > *best_radius {
                *best_radius = score;
                *best_set = current.clone();
            }
            return;
        }
        for idx in start..interior.len() {
            let u = interior[idx];
            let mut s = score.min(oracle.boundary_distance(u));
            for &v in current.iter() {
                s = s.min(oracle.distance(u, v) / 2.0);
            }
            if s <= *best_radius {
                continue;
            }
            current.push(u);
            search(interior, oracle, k, idx + 1, current, s, best_radius, best_set);
            current.pop();
        }
    }
    let mut current = Vec::new();
    search(
        interior,
        &oracle,
        k,
        0,
        &mut current,
        f64::INFINITY,
        &mut best_radius,
        &mut best_set,
    );

    let mut min_pairwise = f64::INFINITY;
    for i in 0..best_set.len() {
        for j in (i + 1)..best_set.len() {
            min_pairwise = min_pairwise.min(oracle.distance(best_set[i], best_set[j]));
        }
    }
    let min_boundary = best_set
        .iter()
        .map(|&u| oracle.boundary_distance(u))
        .fold(f64::INFINITY, f64::min);
    Ok((
        best_radius,
        PackingWitness {
            nodes: best_set.iter().map(|&u| g.node_id(u).to_string()).collect(),
            min_pairwise,
            min_boundary,
            radius: best_radius,
        },
    ))
}

const DIST_TOL: f64 = 1e-9;

/// l-independence number: the exact maximum number of nodes with pairwise
/// distance at least l, with a witness set.
pub fn independence_alpha(g: &Graph, l: f64) -> Result<(usize, Vec<NodeIdx>), GeomError> {
    let oracle = DistanceOracle::new(g);
    independence_alpha_impl(g, &oracle, l)
}

fn independence_alpha_impl(
    g: &Graph,
    oracle: &DistanceOracle,
    l: f64,
) -> Result<(usize, Vec<NodeIdx>), GeomError> {
    if l <= 0.0 {
        return Err(GeomError::Precondition("l must be positive".into()));
    }
    // l beyond the diameter is allowed: a singleton satisfies the pairwise
    // condition vacuously, matching alpha_2(K_N) = 1.
    let nodes: Vec<NodeIdx> = (0..g.node_count()).collect();
    let mut best: Vec<NodeIdx> = Vec::new();
    let mut current: Vec<NodeIdx> = Vec::new();
    fn search(
        nodes: &[NodeIdx],
        oracle: &DistanceOracle,
        l: f64,
        start: usize,
        current: &mut Vec<NodeIdx>,
        best: &mut Vec<NodeIdx>,
    ) {
        if current.len() + (nodes.len() - start) <= best.len() {
            return;
        }
        if current.len() > best.len() {
            *best = current.clone();
        }
        for idx in start..nodes.len() {
            let u = nodes[idx];
            if current
                .iter()
                .all(|&v| oracle.distance(u, v) >= l - DIST_TOL)
            {
                current.push(u);
                search(nodes, oracle, l, idx + 1, current, best);
                current.pop();
            }
        }
    }
    search(&nodes, oracle, l, 0, &mut current, &mut best);
    Ok((best.len(), best))
}

/// A maximum l-independent set containing a pair at exact distance l, with
/// that pair first. Returns None when no maximum set realizes an exact pair.
pub fn independence_alpha_with_anchor(
    g: &Graph,
    oracle: &DistanceOracle,
    l: f64,
) -> Result<Option<(usize, Vec<NodeIdx>)>, GeomError> {
    let (alpha, _) = independence_alpha_impl(g, oracle, l)?;
    let nodes: Vec<NodeIdx> = (0..g.node_count()).collect();
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            let d = oracle.distance(u, v);
            if (d - l).abs() > DIST_TOL * l.max(1.0) {
                continue;
            }
            // Complete {u, v} to a maximum set.
            let mut current = vec![u, v];
            let mut best: Vec<NodeIdx> = Vec::new();
            fn complete(
                nodes: &[NodeIdx],
                oracle: &DistanceOracle,
                l: f64,
                alpha: usize,
                start: usize,
                current: &mut Vec<NodeIdx>,
                best: &mut Vec<NodeIdx>,
            ) -> bool {
                if current.len() == alpha {
                    *best = current.clone();
                    return true;
                }
                if current.len() + (nodes.len() - start) < alpha {
                    return false;
                }
                for idx in start..nodes.len() {
                    let w = nodes[idx];
                    if current.contains(&w) {
                        continue;
                    }
                    if current
                        .iter()
                        .all(|&z| oracle.distance(w, z) >= l - DIST_TOL)
                    {
                        current.push(w);
                        if complete(nodes, oracle, l, alpha, idx + 1, current, best) {
                            return true;
                        }
                        current.pop();
                    }
                }
                false
            }
            if complete(&nodes, oracle, l, alpha, 0, &mut current, &mut best) {
                return Ok(Some((alpha, best)));
            }
        }
    }
    Ok(None)
}

/// Maximum matching by branch and bound with memoization on the covered
/// vertex set; returns the matching number and a witness matching.
pub fn matching_number(g: &Graph) -> (usize, Vec<EdgeIdx>) {
    use std::collections::HashMap;
    let n = g.node_count();
    assert!(n <= 64, "matching search expects desk-scale graphs");
    let mut memo: HashMap<Mask, usize> = HashMap::new();

    fn solve(g: &Graph, covered: Mask, memo: &mut std::collections::HashMap<Mask, usize>) -> usize {
        // First uncovered vertex with at least one uncovered neighbour.
        let n = g.node_count();
        let mut pivot = None;
        for u in 0..n {
            if covered & (1 << u) != 0 {
                continue;
            }
            if g.neighbors(u).iter().any(|&(v, _)| covered & (1 << v) == 0) {
                pivot = Some(u);
                break;
            }
        }
        let u = match pivot {
            Some(u) => u,
            None => return 0,
        };
        if let Some(&v) = memo.get(&covered) {
            return v;
        }
        // Either u stays unmatched, or it matches one of its free neighbours.
        let mut best = solve(g, covered | (1 << u), memo);
        for &(v, _) in g.neighbors(u) {
            if covered & (1 << v) == 0 {
                best = best.max(1 + solve(g, covered | (1 << u) | (1 << v), memo));
            }
        }
        memo.insert(covered, best);
        best
    }

    let beta = solve(g, 0, &mut memo);
    // Reconstruct a witness greedily against the memoized values.
    let mut covered: Mask = 0;
    let mut witness = Vec::new();
    'outer: while witness.len() < beta {
        for u in 0..n {
            if covered & (1 << u) != 0 {
                continue;
            }
            for &(v, e) in g.neighbors(u) {
                if covered & (1 << v) != 0 {
                    continue;
                }
                let with = covered | (1 << u) | (1 << v);
                if 1 + solve(g, with, &mut memo) + witness.len() == beta {
                    witness.push(e);
                    covered = with;
                    continue 'outer;
                }
            }
        }
        break;
    }
    (beta, witness)
}

/// Lower bound on the k-th variational 1-eigenvalue from singleton/triangle
/// subpartitions: the exact maximum over subpartitions P with weight
/// `l(P) = N - k + 1` of `h_*(P) = min over transversal subsets A of c(A)`.
pub fn st_subpartition_bound(g: &Graph, k: usize, cap: usize) -> Result<f64, GeomError> {
    let n = g.interior_count();
    if n > cap {
        return Err(GeomError::CapExceeded(n, cap));
    }
    if k < 1 || k > n {
        return Err(GeomError::Precondition(format!(
            "k must lie in 1..={n}, got {k}"
        )));
    }
    let weight = n - k + 1;

    // Interior triangles.
    let mut adj = vec![0 as Mask; n];
    for edge in g.edges() {
        if let (Some(i), Some(j)) = (g.interior_index(edge.a), g.interior_index(edge.b)) {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if adj[i] & (1 << j) == 0 {
                continue;
            }
            for t in (j + 1)..n {
                if adj[i] & (1 << t) != 0 && adj[j] & (1 << t) != 0 {
                    triangles.push([i, j, t]);
                }
            }
        }
    }

    // Enumerate disjoint part families with the exact weight; parts are
    // singletons (weight 1) or triangles (weight 2) in canonical order.
    let mut best = f64::NEG_INFINITY;
    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        g: &Graph,
        n: usize,
        triangles: &[[usize; 3]],
        next_single: usize,
        next_triangle: usize,
        used: Mask,
        weight_left: usize,
        parts: &mut Vec<Vec<usize>>,
        best: &mut f64,
    ) {
        if weight_left == 0 {
            let h = transversal_min(g, parts);
            if h > *best {
                *best = h;
            }
            return;
        }
        for idx in next_single..n {
            if used & (1 << idx) == 0 {
                parts.push(vec![idx]);
                enumerate(
                    g,
                    n,
                    triangles,
                    idx + 1,
                    next_triangle,
                    used | (1 << idx),
                    weight_left - 1,
                    parts,
                    best,
                );
                parts.pop();
            }
        }
        if weight_left >= 2 {
            for ti in next_triangle..triangles.len() {
                let tri = triangles[ti];
                let mask = (1u64 << tri[0]) | (1 << tri[1]) | (1 << tri[2]);
                if used & mask == 0 {
                    parts.push(tri.to_vec());
                    enumerate(
                        g,
                        n,
                        triangles,
                        n, // triangles are canonically ordered after singles
                        ti + 1,
                        used | mask,
                        weight_left - 2,
                        parts,
                        best,
                    );
                    parts.pop();
                }
            }
        }
    }

    // Weight-l(P) families mix singletons and triangles; enumerate with
    // triangles allowed before singletons as well by running the recursion
    // over a combined canonical order: singles ascending then triangles
    // ascending is complete because part order inside a family is irrelevant.
    let mut parts = Vec::new();
    enumerate(g, n, &triangles, 0, 0, 0, weight, &mut parts, &mut best);
    if best == f64::NEG_INFINITY {
        return Err(GeomError::Precondition(format!(
            "no singleton/triangle subpartition of weight {weight} exists"
        )));
    }
    Ok(best)
}

/// `h_*(P)`: minimum of c over nonempty transversal subsets (at most one
/// vertex per part).
fn transversal_min(g: &Graph, parts: &[Vec<usize>]) -> f64 {
    let mut best = f64::INFINITY;
    let mut choice: Vec<usize> = Vec::new();
    fn rec(g: &Graph, parts: &[Vec<usize>], at: usize, choice: &mut Vec<usize>, best: &mut f64) {
        if at == parts.len() {
            if !choice.is_empty() {
                let (cut, mass) = cut_and_mass(g, mask_of(choice));
                let c = cut / mass;
                if c < *best {
                    *best = c;
                }
            }
            return;
        }
        rec(g, parts, at + 1, choice, best);
        for &v in &parts[at] {
            choice.push(v);
            rec(g, parts, at + 1, choice, best);
            choice.pop();
        }
    }
    rec(g, parts, 0, &mut choice, &mut best);
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionMode {
    Disjoint,
    Nonadjacent,
}

/// Spectral minimal partition cost of the infinity Laplacian: the exact
/// minimum over families of k disjoint (or pairwise non-adjacent) interior
/// subsets of `max_i Lambda_order(V_i)`, where `Lambda_1(V) = 1/in-radius`
/// and `Lambda_2(V) = 1/R_2(V)` with the complement acting as boundary.
pub fn spectral_min_partition(
    g: &Graph,
    k: usize,
    mode: PartitionMode,
    order: u8,
    cap: usize,
) -> Result<(f64, Vec<Vec<InteriorIdx>>), GeomError> {
    let n = g.interior_count();
    if n > cap {
        return Err(GeomError::CapExceeded(n, cap));
    }
    if k < 1 || k > n {
        return Err(GeomError::Precondition(format!(
            "k must lie in 1..={n}, got {k}"
        )));
    }
    if order != 1 && order != 2 {
        return Err(GeomError::Precondition("order must be 1 or 2".into()));
    }
    let oracle = DistanceOracle::new(g);

    // Distance from an interior node to the complement of the subset
    // (interior outside the mask, plus the original boundary).
    let d_out = |u: NodeIdx, mask: Mask| -> f64 {
        let mut d = oracle.boundary_distance(u);
        for j in 0..n {
            if mask & (1 << j) == 0 {
                d = d.min(oracle.distance(u, g.interior_node(j)));
            }
        }
        d
    };
    let score = |mask: Mask| -> f64 {
        let members: Vec<NodeIdx> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| g.interior_node(i))
            .collect();
        match order {
            1 => {
                let inradius = members
                    .iter()
                    .map(|&u| d_out(u, mask))
                    .fold(f64::NEG_INFINITY, f64::max);
                if inradius.is_infinite() {
                    0.0
                } else {
                    1.0 / inradius
                }
            }
            _ => {
                // R_2 of the sub-problem: best pair of centers inside.
                let mut r2 = f64::NEG_INFINITY;
                for i in 0..members.len() {
                    for j in (i + 1)..members.len() {
                        let (u, v) = (members[i], members[j]);
                        let r = (oracle.distance(u, v) / 2.0)
                            .min(d_out(u, mask))
                            .min(d_out(v, mask));
                        r2 = r2.max(r);
                    }
                }
                if r2 == f64::NEG_INFINITY {
                    f64::INFINITY
                } else if r2.is_infinite() {
                    0.0
                } else {
                    1.0 / r2
                }
            }
        }
    };

    let mut cands: Vec<Scored> = (1..(1u64 << n))
        .map(|mask| Scored {
            mask,
            closure: closure_of(g, mask),
            score: score(mask),
        })
        .filter(|c| c.score.is_finite())
        .collect();
    cands.sort_by(|a, b| a.score.partial_cmp(&b.score).unwrap().then(a.mask.cmp(&b.mask)));
    let (value, masks) = min_max_family(&cands, k, mode == PartitionMode::Nonadjacent)
        .ok_or_else(|| {
            GeomError::Precondition(format!("no admissible family of {k} subsets exists"))
        })?;
    Ok((value, masks.iter().map(|&m| set_of(m, n)).collect()))
}
