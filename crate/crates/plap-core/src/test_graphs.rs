//! Small named graphs used across the test suite and the examples.

use crate::graph::Graph;

/// Unweighted path on `n` nodes with ids "1".."n", no boundary.
pub fn path(n: usize) -> Graph {
    let mut b = Graph::builder();
    for i in 1..=n {
        b.node(&i.to_string());
    }
    for i in 1..n {
        b.edge(&i.to_string(), &(i + 1).to_string(), 1.0);
    }
    b.build_unchecked()
}

/// The path on seven nodes.
pub fn p7() -> Graph {
    path(7)
}

/// P7 with the listed node ids marked as boundary.
pub fn p7_with_boundary(boundary: &[&str]) -> Graph {
    path_with_boundary(7, boundary)
}

pub fn path_with_boundary(n: usize, boundary: &[&str]) -> Graph {
    let mut b = Graph::builder();
    for i in 1..=n {
        let id = i.to_string();
        if boundary.contains(&id.as_str()) {
            b.boundary_node(&id);
        } else {
            b.node(&id);
        }
    }
    for i in 1..n {
        b.edge(&i.to_string(), &(i + 1).to_string(), 1.0);
    }
    b.build_unchecked()
}

/// Unweighted cycle on `n` nodes with ids "1".."n".
pub fn cycle(n: usize) -> Graph {
    let mut b = Graph::builder();
    for i in 1..=n {
        b.node(&i.to_string());
    }
    for i in 1..n {
        b.edge(&i.to_string(), &(i + 1).to_string(), 1.0);
    }
    b.edge(&n.to_string(), "1", 1.0);
    b.build_unchecked()
}

/// Unweighted complete graph on `n` nodes with ids "1".."n".
pub fn complete(n: usize) -> Graph {
    let mut b = Graph::builder();
    for i in 1..=n {
        b.node(&i.to_string());
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            b.edge(&i.to_string(), &j.to_string(), 1.0);
        }
    }
    b.build_unchecked()
}

/// The weighted star: hub v1 with omega_12 = 2, omega_13 = 1, omega_14 = 3/2.
pub fn star_weighted() -> Graph {
    let mut b = Graph::builder();
    b.node("v1").node("v2").node("v3").node("v4");
    b.edge("v1", "v2", 2.0);
    b.edge("v1", "v3", 1.0);
    b.edge("v1", "v4", 1.5);
    b.build_unchecked()
}

/// Unweighted star with one hub and `k` leaves.
pub fn star_unweighted(k: usize) -> Graph {
    let mut b = Graph::builder();
    b.node("c");
    for i in 1..=k {
        b.node(&format!("l{i}"));
    }
    for i in 1..=k {
        b.edge("c", &format!("l{i}"), 1.0);
    }
    b.build_unchecked()
}

/// The four-node, five-edge graph whose p-Laplacian has more eigenvalues
/// than the dimension of the space: edges 12, 14, 23, 24, 34.
pub fn diamond() -> Graph {
    let mut b = Graph::builder();
    b.node("1").node("2").node("3").node("4");
    b.edge("1", "2", 1.0);
    b.edge("1", "4", 1.0);
    b.edge("2", "3", 1.0);
    b.edge("2", "4", 1.0);
    b.edge("3", "4", 1.0);
    b.build_unchecked()
}

/// Tripod with three legs of length `n`: hub v, legs x1..xn, y1..yn, z1..zn.
pub fn tripod(n: usize) -> Graph {
    let mut b = Graph::builder();
    b.node("v");
    for leg in ["x", "y", "z"] {
        for i in 1..=n {
            b.node(&format!("{leg}{i}"));
        }
        b.edge("v", &format!("{leg}1"), 1.0);
        for i in 1..n {
            b.edge(&format!("{leg}{i}"), &format!("{leg}{}", i + 1), 1.0);
        }
    }
    b.build_unchecked()
}

/// The 13-vertex tree whose second 1-Laplacian eigenvalue has multiplicity 3:
/// a center with three pendant "claws" and one extra claw of two leaves.
pub fn thirteen_tree() -> Graph {
    let mut b = Graph::builder();
    for i in 1..=13 {
        b.node(&i.to_string());
    }
    for (x, y) in [
        (1, 3),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (5, 7),
        (4, 8),
        (8, 9),
        (8, 10),
        (4, 11),
        (11, 12),
        (11, 13),
    ] {
        b.edge(&x.to_string(), &y.to_string(), 1.0);
    }
    b.build_unchecked()
}

/// Weighted triangle whose p-Rayleigh quotient is
/// (5|x1-x2|^p + |x1-x3|^p + 1.5|x2-x3|^p) / sum |x_i|^p.
pub fn triangle_weighted(p: f64) -> Graph {
    let mut b = Graph::builder();
    b.node("1").node("2").node("3");
    b.edge("1", "2", 5f64.powf(1.0 / p));
    b.edge("1", "3", 1.0);
    b.edge("2", "3", 1.5f64.powf(1.0 / p));
    b.build_unchecked()
}

/// Helper: interior index of a node id (panics on unknown/boundary ids).
pub fn ii(g: &Graph, id: &str) -> usize {
    g.interior_index(g.node_index(id).expect("node id"))
        .expect("interior node")
}

/// Seeded random connected graph: a random spanning tree plus `extra` edges,
/// with weights and measures drawn from [0.5, 2] when `weighted`.
pub fn random_connected(seed: u64, n: usize, extra: usize, weighted: bool) -> Graph {
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut b = Graph::builder();
    for i in 1..=n {
        if weighted {
            b.node_measured(&i.to_string(), rng.gen_range(0.5..2.0));
        } else {
            b.node(&i.to_string());
        }
    }
    let weight = |rng: &mut rand_chacha::ChaCha8Rng| {
        if weighted {
            rng.gen_range(0.5..2.0)
        } else {
            1.0
        }
    };
    let mut present = std::collections::HashSet::new();
    for i in 2..=n {
        let parent = rng.gen_range(1..i);
        present.insert((parent.min(i), parent.max(i)));
        let w = weight(&mut rng);
        b.edge(&parent.to_string(), &i.to_string(), w);
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 50 * (extra + 1) {
        attempts += 1;
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            let w = weight(&mut rng);
            b.edge(&u.to_string(), &v.to_string(), w);
            added += 1;
        }
    }
    b.build_unchecked()
}

/// Seeded random tree on `n` unweighted nodes.
pub fn random_tree(seed: u64, n: usize) -> Graph {
    random_connected(seed, n, 0, false)
}
