//! Simple undirected graphs with deterministic vertex indexing.
//!
//! Vertices are `0..p`. Edges are stored as `(i, j)` with `i < j`, sorted
//! lexicographically; that order is the edge indexing used by the incidence
//! matrix and by every operation that creates one vertex per edge.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::linalg::SymMatrix;

/// Largest vertex count any constructor will produce.
pub const MAX_VERTICES: usize = 4096;

/// An immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    p: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

/// Per-vertex degrees plus the common degree when the graph is regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degrees: Vec<usize>,
    pub regular: Option<usize>,
}

impl Graph {
    /// Builds a graph from unordered pairs. Pairs may be given in either
    /// orientation; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(p: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if p > MAX_VERTICES {
            return Err(Error::SizeCap {
                requested: p,
                cap: MAX_VERTICES,
            });
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            if u >= p || v >= p {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for p = {p}"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(p, list))
    }

    fn from_sorted(p: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); p];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        Graph {
            p,
            edges,
            neighbors,
        }
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order; the position is the edge index.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.p && v < self.p && self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let degrees: Vec<usize> = (0..self.p).map(|v| self.degree(v)).collect();
        let regular = match (degrees.iter().min(), degrees.iter().max()) {
            (Some(&lo), Some(&hi)) if lo == hi => Some(lo),
            _ => None,
        };
        DegreeInfo { degrees, regular }
    }

    /// Common degree if every vertex has the same degree.
    pub fn regularity(&self) -> Option<usize> {
        self.degree_info().regular
    }

    pub fn is_connected(&self) -> bool {
        if self.p == 0 {
            return true;
        }
        let mut seen = vec![false; self.p];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.p
    }

    /// Two-colouring check by BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.p];
        for start in 0..self.p {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let s = side[v].unwrap();
                for &w in &self.neighbors[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.p);
        for &(u, v) in &self.edges {
            m.set(u, v, 1.0);
        }
        m
    }

    pub fn degree_matrix(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.p);
        for v in 0..self.p {
            m.set(v, v, self.degree(v) as f64);
        }
        m
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let q = self.q();
        let mut entries = vec![0u8; self.p * q];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            entries[u * q + e] = 1;
            entries[v * q + e] = 1;
        }
        IncidenceMatrix {
            p: self.p,
            q,
            entries,
        }
    }
}

/// The p×q vertex-edge incidence matrix, columns in edge-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    p: usize,
    q: usize,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.q
    }

    pub fn get(&self, v: usize, e: usize) -> u8 {
        self.entries[v * self.q + e]
    }

    /// R Rᵀ, a p×p integer matrix (row-major).
    pub fn row_gram(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.p * self.p];
        for i in 0..self.p {
            for j in 0..self.p {
                out[i * self.p + j] = (0..self.q)
                    .map(|e| i64::from(self.get(i, e) * self.get(j, e)))
                    .sum();
            }
        }
        out
    }

    /// Rᵀ R, a q×q integer matrix (row-major).
    pub fn col_gram(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.q * self.q];
        for a in 0..self.q {
            for b in 0..self.q {
                out[a * self.q + b] = (0..self.p)
                    .map(|v| i64::from(self.get(v, a) * self.get(v, b)))
                    .sum();
            }
        }
        out
    }
}

fn require_positive(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be at least 1"
        )));
    }
    Ok(())
}

/// The cycle C_n, edges {i, i+1 mod n}.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    require_positive("complete graph order", n)?;
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// K_{a,b} with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    require_positive("part size", a)?;
    require_positive("part size", b)?;
    Graph::new(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))))
}

pub fn path(n: usize) -> Result<Graph> {
    require_positive("path order", n)?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Outer 5-cycle on 0..5, inner pentagram on 5..10, spokes i ~ i+5.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).expect("petersen graph is simple")
}

/// Parses the edge-list format: a `p q` header followed by `q` lines `i j`.
/// Blank lines and lines starting with `#` are skipped.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (p, q) = parse_pair(header).ok_or_else(|| ParseError::MalformedHeader {
        line: hline,
        text: header.to_string(),
    })?;
    if p > MAX_VERTICES {
        return Err(Error::SizeCap {
            requested: p,
            cap: MAX_VERTICES,
        });
    }

    let mut edges = Vec::with_capacity(q);
    let mut seen = std::collections::HashSet::with_capacity(q);
    for (line, text) in lines {
        let (u, v) = parse_pair(text).ok_or_else(|| ParseError::MalformedEdge {
            line,
            text: text.to_string(),
        })?;
        for vertex in [u, v] {
            if vertex >= p {
                return Err(ParseError::VertexOutOfRange { line, vertex, p }.into());
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u }.into());
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: key.0,
                v: key.1,
            }
            .into());
        }
        edges.push(key);
    }
    if edges.len() != q {
        return Err(ParseError::EdgeCountMismatch {
            declared: q,
            found: edges.len(),
        }
        .into());
    }
    Graph::new(p, edges)
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Canonical edge-list text; always ends with a newline.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.p(), g.q());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
