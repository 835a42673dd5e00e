#![allow(dead_code)]

use alpha_energy::graph::{complete, complete_bipartite, cycle, petersen, Graph};
use alpha_energy::AlphaValue;
use rand::Rng;

pub fn al(x: f64) -> AlphaValue {
    AlphaValue::new(x).unwrap()
}

/// C3..C10, K2..K8, K2,2..K4,4, Petersen.
pub fn regular_bases() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=10 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for n in 2..=8 {
        out.push((format!("K{n}"), complete(n).unwrap()));
    }
    for n in 2..=4 {
        out.push((format!("K{n},{n}"), complete_bipartite(n, n).unwrap()));
    }
    out.push(("petersen".into(), petersen()));
    out
}

/// Erdős–Rényi graph with a random edge probability.
pub fn random_graph<R: Rng>(rng: &mut R, p: usize) -> Graph {
    let density: f64 = rng.gen_range(0.05..0.9);
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(p, edges).unwrap()
}

pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Vertex and edge counts of an operated graph, from the base alone.
pub fn expected_size(g: &Graph, op: alpha_energy::OpDescriptor) -> (usize, usize) {
    use alpha_energy::OpDescriptor::*;
    let (p, q) = (g.p(), g.q());
    let pairs: usize = (0..p).map(|v| choose2(g.degree(v))).sum();
    match op {
        Middle => (p + q, 2 * q + pairs),
        Central => (p + q, q + choose2(p)),
        Splitting(m) => (p * (m + 1), q * (2 * m + 1)),
        ClosedSplitting => (2 * p, 3 * q + p),
        Shadow(m) => (m * p, m * m * q),
        ClosedShadow => (2 * p, 4 * q + p),
        Ebd => (2 * p, 2 * q + p),
        Line(0) => (p, q),
        Line(k) => {
            let l = alpha_energy::ops::line_graph(g).unwrap();
            expected_size(&l, Line(k - 1))
        }
        Duplicate(m) => (p << m, q << m),
    }
}
