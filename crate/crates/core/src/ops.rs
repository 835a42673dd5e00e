//! Unary graph operations.
//!
//! Labelling is part of the contract. Original vertices keep their indices
//! `0..p`. A vertex created for edge `e` (lexicographic index) is `p + e`. The
//! `i`-th copy of vertex `v` is `i·p + v`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// One of the nine supported operations, with its parameter where it has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpDescriptor {
    Middle,
    Central,
    /// m-splitting graph, m ≥ 1.
    Splitting(usize),
    ClosedSplitting,
    /// m-shadow graph, m ≥ 2.
    Shadow(usize),
    ClosedShadow,
    /// Extended bipartite double.
    Ebd,
    /// k-th iterated line graph, k ≥ 0.
    Line(usize),
    /// m-fold duplicate graph, m ≥ 1.
    Duplicate(usize),
}

impl OpDescriptor {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            OpDescriptor::Middle => middle_graph(g),
            OpDescriptor::Central => central_graph(g),
            OpDescriptor::Splitting(m) => splitting_graph(g, m),
            OpDescriptor::ClosedSplitting => closed_splitting_graph(g),
            OpDescriptor::Shadow(m) => shadow_graph(g, m),
            OpDescriptor::ClosedShadow => closed_shadow_graph(g),
            OpDescriptor::Ebd => ebd_graph(g),
            OpDescriptor::Line(k) => iterated_line_graph(g, k),
            OpDescriptor::Duplicate(m) => duplicate_graph(g, m),
        }
    }

    /// Rejects out-of-range parameters.
    pub fn validate(&self) -> Result<()> {
        match *self {
            OpDescriptor::Splitting(0) => Err(param("splitting needs m >= 1")),
            OpDescriptor::Shadow(m) if m < 2 => Err(param("shadow needs m >= 2")),
            OpDescriptor::Duplicate(0) => Err(param("duplicate needs m >= 1")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OpDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpDescriptor::Middle => write!(f, "middle"),
            OpDescriptor::Central => write!(f, "central"),
            OpDescriptor::Splitting(m) => write!(f, "splitting:{m}"),
            OpDescriptor::ClosedSplitting => write!(f, "closed-splitting"),
            OpDescriptor::Shadow(m) => write!(f, "shadow:{m}"),
            OpDescriptor::ClosedShadow => write!(f, "closed-shadow"),
            OpDescriptor::Ebd => write!(f, "ebd"),
            OpDescriptor::Line(k) => write!(f, "line:{k}"),
            OpDescriptor::Duplicate(m) => write!(f, "duplicate:{m}"),
        }
    }
}

impl FromStr for OpDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<usize> {
            a.and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::UnknownOperation(s.to_string()))
        };
        let op = match (name, arg) {
            ("middle", None) => OpDescriptor::Middle,
            ("central", None) => OpDescriptor::Central,
            ("closed-splitting", None) => OpDescriptor::ClosedSplitting,
            ("closed-shadow", None) => OpDescriptor::ClosedShadow,
            ("ebd", None) => OpDescriptor::Ebd,
            ("splitting", a) => OpDescriptor::Splitting(num(a)?),
            ("shadow", a) => OpDescriptor::Shadow(num(a)?),
            ("line", a) => OpDescriptor::Line(num(a)?),
            ("duplicate", a) => OpDescriptor::Duplicate(num(a)?),
            _ => return Err(Error::UnknownOperation(s.to_string())),
        };
        op.validate()?;
        Ok(op)
    }
}

fn param(msg: &str) -> Error {
    Error::InvalidParameter(msg.to_string())
}

fn check_size(n: Option<usize>) -> Result<usize> {
    match n {
        Some(n) if n <= MAX_VERTICES => Ok(n),
        Some(n) => Err(Error::SizeCap {
            requested: n,
            cap: MAX_VERTICES,
        }),
        None => Err(Error::SizeCap {
            requested: usize::MAX,
            cap: MAX_VERTICES,
        }),
    }
}

/// Pairs of edge indices sharing an endpoint (the line-graph adjacency).
fn adjacent_edge_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.p()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut pairs = Vec::new();
    for list in &incident {
        for (a, &e) in list.iter().enumerate() {
            for &f in &list[a + 1..] {
                pairs.push((e, f));
            }
        }
    }
    pairs
}

/// Vertices `0..p` and `p + e`; edge-vertices adjacent when the edges share
/// an endpoint, vertex–edge pairs adjacent on incidence.
pub fn middle_graph(g: &Graph) -> Result<Graph> {
    let p = g.p();
    let n = check_size(p.checked_add(g.q()))?;
    let incidences = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, &(u, v))| [(u, p + e), (v, p + e)]);
    let line = adjacent_edge_pairs(g)
        .into_iter()
        .map(|(e, f)| (p + e, p + f));
    Graph::new(n, incidences.chain(line))
}

/// Each edge `e = uv` subdivided through `p + e`; non-adjacent original pairs
/// joined.
pub fn central_graph(g: &Graph) -> Result<Graph> {
    let p = g.p();
    let n = check_size(p.checked_add(g.q()))?;
    let subdivided = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, &(u, v))| [(u, p + e), (v, p + e)]);
    let complement = (0..p)
        .flat_map(|u| (u + 1..p).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v));
    Graph::new(n, subdivided.chain(complement))
}

/// Copy `i` (1..=m) of `v` is `i·p + v`, adjacent to the original
/// neighbours of `v`.
pub fn splitting_graph(g: &Graph, m: usize) -> Result<Graph> {
    OpDescriptor::Splitting(m).validate()?;
    let p = g.p();
    let n = check_size(m.checked_add(1).and_then(|k| k.checked_mul(p)))?;
    let copies = (1..=m).flat_map(|i| {
        g.edges()
            .iter()
            .flat_map(move |&(u, v)| [(i * p + u, v), (i * p + v, u)])
    });
    Graph::new(n, g.edges().iter().copied().chain(copies))
}

/// Splitting graph plus the matching `u – u′`, with `u′ = p + u`.
pub fn closed_splitting_graph(g: &Graph) -> Result<Graph> {
    let p = g.p();
    let n = check_size(p.checked_mul(2))?;
    let matching = (0..p).map(|u| (u, p + u));
    let cross = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, p + v), (v, p + u)]);
    Graph::new(n, g.edges().iter().copied().chain(matching).chain(cross))
}

/// `m` copies; `u_i ~ w_j` whenever `u ~ w` in `g`, for every pair of copies
/// including `i = j`.
pub fn shadow_graph(g: &Graph, m: usize) -> Result<Graph> {
    OpDescriptor::Shadow(m).validate()?;
    let p = g.p();
    let n = check_size(m.checked_mul(p))?;
    let edges = (0..m).flat_map(|i| {
        (0..m).flat_map(move |j| g.edges().iter().map(move |&(u, v)| (i * p + u, j * p + v)))
    });
    Graph::new(n, edges)
}

/// 2-shadow graph plus the matching `u – u′`.
pub fn closed_shadow_graph(g: &Graph) -> Result<Graph> {
    let p = g.p();
    let n = check_size(p.checked_mul(2))?;
    let inner = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (p + u, p + v)]);
    let cross = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, p + v), (v, p + u)]);
    let matching = (0..p).map(|u| (u, p + u));
    Graph::new(n, inner.chain(cross).chain(matching))
}

/// Bipartite on `{0..p}` and `{p..2p}`; `v_i ~ u_j` iff `i = j` or `ij` is an
/// edge.
pub fn ebd_graph(g: &Graph) -> Result<Graph> {
    let p = g.p();
    let n = check_size(p.checked_mul(2))?;
    let matching = (0..p).map(|u| (u, p + u));
    let cross = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, p + v), (v, p + u)]);
    Graph::new(n, matching.chain(cross))
}

/// Vertices are edge indices of `g`.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let n = check_size(Some(g.q()))?;
    Graph::new(n, adjacent_edge_pairs(g))
}

/// `L⁰(G) = G`, `Lᵏ(G) = L(Lᵏ⁻¹(G))`.
pub fn iterated_line_graph(g: &Graph, k: usize) -> Result<Graph> {
    let mut cur = g.clone();
    for _ in 0..k {
        cur = line_graph(&cur)?;
    }
    Ok(cur)
}

/// One application doubles the vertex set (`v′ = p + v`) with edges
/// `u – v′` and `v – u′` for each edge `uv`; applied `m` times.
pub fn duplicate_graph(g: &Graph, m: usize) -> Result<Graph> {
    OpDescriptor::Duplicate(m).validate()?;
    let growth = u32::try_from(m)
        .ok()
        .and_then(|m| 2usize.checked_pow(m))
        .and_then(|f| f.checked_mul(g.p()));
    check_size(growth)?;
    let mut cur = g.clone();
    for _ in 0..m {
        let p = cur.p();
        let edges: Vec<(usize, usize)> = cur
            .edges()
            .iter()
            .flat_map(|&(u, v)| [(u, p + v), (v, p + u)])
            .collect();
        cur = Graph::new(2 * p, edges)?;
    }
    Ok(cur)
}
