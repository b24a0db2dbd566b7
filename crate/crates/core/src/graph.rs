//! Simple undirected graphs over dense 1-based vertex indices, the edge-list
//! text format, generators for the standard families and degeneracy orderings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Vertex index, 1-based.
pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {{{u}, {w}}}")]
    DuplicateEdge { line: usize, u: Vertex, w: Vertex },
    #[error("line {line}: expected a positive integer, found {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: vertex index must be at least 1")]
    ZeroIndex { line: usize },
    #[error("line {line}: malformed line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("edge {{{u}, {w}}} exceeds the declared vertex count {n}")]
    VertexOutOfRange { u: Vertex, w: Vertex, n: usize },
    #[error("a matching needs an even number of vertices, got {0}")]
    OddMatching(usize),
    #[error("graph needs at least one vertex")]
    Empty,
    #[error("not a permutation of 1..={n}: {reason}")]
    BadOrdering { n: usize, reason: String },
}

/// Simple undirected graph on the vertices `1..=n`.
///
/// Edges are stored normalised as `(u, w)` with `u < w`. The value is
/// immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge iterator; endpoints may come in any order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == 0 || b == 0 {
                return Err(GraphError::ZeroIndex { line: 0 });
            }
            if a == b {
                return Err(GraphError::SelfLoop { line: 0, vertex: a });
            }
            let e = (a.min(b), a.max(b));
            if e.1 as usize > n {
                return Err(GraphError::VertexOutOfRange { u: e.0, w: e.1, n });
            }
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge { line: 0, u: e.0, w: e.1 });
            }
        }
        Ok(Self::from_normalised(n, set))
    }

    fn from_normalised(n: usize, edges: BTreeSet<(Vertex, Vertex)>) -> Self {
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(u, w) in &edges {
            adjacency[u as usize].push(w);
            adjacency[w as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency }
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_normalised(n, BTreeSet::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }

    /// Edges in lexicographic order, each with `u < w`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, w: Vertex) -> bool {
        self.edges.contains(&(u.min(w), u.max(w)))
    }

    /// Sorted neighbour list; empty for indices outside `1..=n`.
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        self.adjacency.get(v as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbours(v).len()
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Same vertex set with the given edge removed.
    pub fn without_edge(&self, u: Vertex, w: Vertex) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(&(u.min(w), u.max(w)));
        Self::from_normalised(self.n, edges)
    }

    /// Same vertex numbering with every edge at `v` removed; `v` stays as an
    /// isolated index so the remaining ids are stable.
    pub fn without_vertex_edges(&self, v: Vertex) -> Self {
        let edges = self.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        Self::from_normalised(self.n, edges)
    }
}

/// A permutation of `1..=n` giving the order in which vertices are processed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering(Vec<Vertex>);

impl VertexOrdering {
    pub fn new(order: Vec<Vertex>) -> Result<Self, GraphError> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &v in &order {
            if v == 0 || v as usize > n {
                return Err(GraphError::BadOrdering { n, reason: format!("index {v} out of range") });
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(GraphError::BadOrdering { n, reason: format!("index {v} repeated") });
            }
        }
        Ok(VertexOrdering(order))
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering((1..=n as Vertex).collect())
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest number of earlier neighbours any vertex has in this order.
    pub fn max_back_degree(&self, g: &Graph) -> usize {
        let mut position = vec![usize::MAX; g.n() + 1];
        for (i, &v) in self.0.iter().enumerate() {
            position[v as usize] = i;
        }
        self.0
            .iter()
            .enumerate()
            .map(|(i, &v)| g.neighbours(v).iter().filter(|&&u| position[u as usize] < i).count())
            .max()
            .unwrap_or(0)
    }

    /// Parses whitespace-separated vertex ids; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut order = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for token in line.split_whitespace() {
                order.push(parse_index(token, idx + 1)?);
            }
        }
        Self::new(order)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.0 {
            let _ = writeln!(out, "{v}");
        }
        out
    }
}

/// A vertex ordering in which every vertex has at most `d` earlier neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyResult {
    pub ordering: VertexOrdering,
    pub d: usize,
}

/// Min-degree peeling, smallest index first among ties. The returned
/// ordering is the reverse of the peel sequence, so each vertex has at most
/// `d` neighbours earlier in it.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyResult {
    let n = g.n();
    let mut degree: Vec<usize> = (0..=n).map(|v| g.degree(v as Vertex)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|v| (degree[v as usize], v)).collect();
    let mut removed = vec![false; n + 1];
    let mut peeled = Vec::with_capacity(n);
    let mut d = 0;
    while let Some((deg, v)) = queue.pop_first() {
        d = d.max(deg);
        removed[v as usize] = true;
        peeled.push(v);
        for &u in g.neighbours(v) {
            if !removed[u as usize] {
                let du = &mut degree[u as usize];
                queue.remove(&(*du, u));
                *du -= 1;
                queue.insert((*du, u));
            }
        }
    }
    peeled.reverse();
    DegeneracyResult { ordering: VertexOrdering(peeled), d }
}

fn parse_index(token: &str, line: usize) -> Result<Vertex, GraphError> {
    let v: Vertex = token.parse().map_err(|_| GraphError::BadToken { line, token: token.to_string() })?;
    if v == 0 {
        return Err(GraphError::ZeroIndex { line });
    }
    Ok(v)
}

/// Parses the edge-list format: optional `p <n> <m>` header, one `u w` pair
/// per line, `#` comment lines.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = BTreeSet::new();
    let mut max_seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "p" {
            if tokens.len() != 3 || header.is_some() {
                return Err(GraphError::Malformed { line: line_no, text: line.to_string() });
            }
            let n = parse_index(tokens[1], line_no)? as usize;
            let m = tokens[2]
                .parse::<usize>()
                .map_err(|_| GraphError::BadToken { line: line_no, token: tokens[2].to_string() })?;
            header = Some((n, m));
            continue;
        }
        if tokens.len() != 2 {
            return Err(GraphError::Malformed { line: line_no, text: line.to_string() });
        }
        let a = parse_index(tokens[0], line_no)?;
        let b = parse_index(tokens[1], line_no)?;
        if a == b {
            return Err(GraphError::SelfLoop { line: line_no, vertex: a });
        }
        let e = (a.min(b), a.max(b));
        if !edges.insert(e) {
            return Err(GraphError::DuplicateEdge { line: line_no, u: e.0, w: e.1 });
        }
        max_seen = max_seen.max(e.1 as usize);
    }
    let n = match header {
        Some((n, m)) => {
            if m != edges.len() {
                return Err(GraphError::EdgeCountMismatch { declared: m, found: edges.len() });
            }
            if max_seen > n {
                let &(u, w) = edges.iter().find(|e| e.1 as usize > n).expect("edge beyond n");
                return Err(GraphError::VertexOutOfRange { u, w, n });
            }
            n
        }
        None => max_seen,
    };
    if n == 0 {
        return Err(GraphError::Empty);
    }
    Ok(Graph::from_normalised(n, edges))
}

/// Emits `p n m` followed by the edges in lexicographic order.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for (u, w) in g.edges() {
        let _ = writeln!(out, "{u} {w}");
    }
    out
}

/// The path `1 - 2 - ... - n`.
pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    Graph::new(n, (1..n as Vertex).map(|v| (v, v + 1)))
}

/// The perfect matching `{1,2}, {3,4}, ...` on `n` vertices.
pub fn matching_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n % 2 == 1 {
        return Err(GraphError::OddMatching(n));
    }
    Graph::new(n, (0..(n / 2) as Vertex).map(|k| (2 * k + 1, 2 * k + 2)))
}

pub fn complete_graph_of(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let n32 = n as Vertex;
    Graph::new(n, (1..=n32).flat_map(|u| (u + 1..=n32).map(move |w| (u, w))))
}

/// The cycle `1 - 2 - ... - n - 1`.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Malformed { line: 0, text: format!("cycle needs n >= 3, got {n}") });
    }
    Graph::new(n, (1..=n as Vertex).map(|v| (v, v % n as Vertex + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c4_with_header() {
        let g = parse_edge_list("p 4 4\n1 2\n2 3\n3 4\n4 1").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        assert!(g.has_edge(1, 4));
        assert_eq!(g, cycle_graph(4).unwrap());
    }

    #[test]
    fn parses_k2_without_header() {
        let g = parse_edge_list("1 2").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g, path_graph(2).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_edge_list("1 1"), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(parse_edge_list("1 2\n2 1"), Err(GraphError::DuplicateEdge { .. })));
        assert!(matches!(parse_edge_list("1 x"), Err(GraphError::BadToken { .. })));
        assert!(matches!(parse_edge_list("0 2"), Err(GraphError::ZeroIndex { .. })));
        assert!(matches!(parse_edge_list("p 3 2\n1 2"), Err(GraphError::EdgeCountMismatch { .. })));
        assert!(matches!(parse_edge_list("p 2 1\n1 3"), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(parse_edge_list("1 2 3"), Err(GraphError::Malformed { .. })));
    }

    #[test]
    fn comments_and_isolated_vertices() {
        let g = parse_edge_list("# a comment\np 5 1\n\n2 3\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(1), 0);
        assert_eq!(g.min_degree(), 0);
    }

    #[test]
    fn serializer_is_sorted() {
        let g = parse_edge_list("4 1\n3 2\n1 2").unwrap();
        assert_eq!(serialize_edge_list(&g), "p 4 3\n1 2\n1 4\n2 3\n");
    }

    #[test]
    fn generators() {
        let m4 = matching_graph(4).unwrap();
        assert_eq!(m4.edges().collect::<Vec<_>>(), vec![(1, 2), (3, 4)]);
        assert_eq!(matching_graph(3), Err(GraphError::OddMatching(3)));
        assert_eq!(complete_graph_of(4).unwrap().m(), 6);
        assert_eq!(path_graph(5).unwrap().m(), 4);
    }

    #[test]
    fn degeneracy_of_small_families() {
        assert_eq!(degeneracy_ordering(&path_graph(4).unwrap()).d, 1);
        assert_eq!(degeneracy_ordering(&cycle_graph(4).unwrap()).d, 2);
        assert_eq!(degeneracy_ordering(&complete_graph_of(4).unwrap()).d, 3);
        assert_eq!(degeneracy_ordering(&Graph::empty(3)).d, 0);
    }

    #[test]
    fn degeneracy_tie_break_is_smallest_index() {
        // P4 peels 1 (deg 1), then 2, 3, 4; reversed.
        let r = degeneracy_ordering(&path_graph(4).unwrap());
        assert_eq!(r.ordering.as_slice(), &[4, 3, 2, 1]);
    }

    #[test]
    fn ordering_validation() {
        assert!(VertexOrdering::new(vec![2, 1, 3]).is_ok());
        assert!(VertexOrdering::new(vec![1, 1, 3]).is_err());
        assert!(VertexOrdering::new(vec![1, 4, 3]).is_err());
        assert_eq!(VertexOrdering::parse("1 3\n2 # tail").unwrap().as_slice(), &[1, 3, 2]);
    }
}
