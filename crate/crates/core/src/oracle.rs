//! Brute-force reference implementations and seeded graph generators.
//! Everything here is deliberately naive and independent of the fast paths.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codec::Decoded;
use crate::graph::{Graph, GraphError, Vertex};
use crate::labelling::SumLabelling;
use crate::par::{self, Parallelism};

/// Largest `n + s_max` the sum number search accepts.
pub const MAX_SEARCH_VERTICES: usize = 9;
/// Largest label the sum number search accepts.
pub const MAX_SEARCH_LABEL: u64 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("label {0} appears more than once")]
    DuplicateLabel(BigUint),
    #[error("search too large: n + s_max = {total} exceeds {MAX_SEARCH_VERTICES} or max label {max_label} exceeds {MAX_SEARCH_LABEL}")]
    Guard { total: usize, max_label: u64 },
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Cubic triple scan over every ordered `(i, j, k)`. Same output shape as
/// `codec::decode`.
pub fn brute_force_decode(labels: &[BigUint]) -> Result<Decoded, OracleError> {
    let mut sorted = labels.to_vec();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(OracleError::DuplicateLabel(w[0].clone()));
        }
    }
    let len = sorted.len();
    let mut edges = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let s = &sorted[i] + &sorted[j];
            if (0..len).any(|k| sorted[k] == s) {
                edges.push((i as Vertex + 1, j as Vertex + 1));
            }
        }
    }
    let graph = Graph::new(len, edges)?;
    let isolates = (0..len).filter(|&i| graph.degree(i as Vertex + 1) == 0).collect();
    Ok(Decoded { graph, isolates })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaOutcome {
    /// The smallest isolate count and the lexicographically first vertex
    /// labelling attaining it.
    Found {
        sigma: usize,
        witness: SumLabelling,
    },
    Exhausted,
}

/// Sum number of `g` among labellings using labels `1..=max_label` and at
/// most `max_isolates` isolates.
pub fn brute_force_sum_number(g: &Graph, max_isolates: usize, max_label: u64) -> Result<SigmaOutcome, OracleError> {
    brute_force_sum_number_with(g, max_isolates, max_label, Parallelism::default())
}

pub fn brute_force_sum_number_with(
    g: &Graph,
    max_isolates: usize,
    max_label: u64,
    mode: Parallelism,
) -> Result<SigmaOutcome, OracleError> {
    let n = g.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if n + max_isolates > MAX_SEARCH_VERTICES || max_label > MAX_SEARCH_LABEL {
        return Err(OracleError::Guard { total: n + max_isolates, max_label });
    }
    let search = Search::new(g, max_label);
    for s in 0..=max_isolates {
        let firsts: Vec<u64> = (1..=max_label).collect();
        let branches = par::map(&firsts, mode, |&first| search.first_with(first, s));
        if let Some((labels, isolates)) = branches.into_iter().flatten().next() {
            let witness = SumLabelling::from_sequence(
                g.clone(),
                labels.into_iter().map(BigUint::from).collect(),
                isolates.into_iter().map(BigUint::from).collect(),
            )
            .expect("witness labels are positive");
            return Ok(SigmaOutcome::Found { sigma: s, witness });
        }
    }
    Ok(SigmaOutcome::Exhausted)
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    max_label: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, max_label: u64) -> Self {
        Search { g, n: g.n(), max_label }
    }

    /// First labelling (in lexicographic order of vertex labels) with vertex
    /// 1 labelled `first` and at most `s` isolates.
    fn first_with(&self, first: u64, s: usize) -> Option<(Vec<u64>, Vec<u64>)> {
        let mut labels = vec![first];
        self.extend(&mut labels, s)
    }

    fn extend(&self, labels: &mut Vec<u64>, s: usize) -> Option<(Vec<u64>, Vec<u64>)> {
        if !self.partial_ok(labels, s) {
            return None;
        }
        if labels.len() == self.n {
            return self.complete(labels, s).map(|iso| (labels.clone(), iso));
        }
        for l in 1..=self.max_label {
            if labels.contains(&l) {
                continue;
            }
            labels.push(l);
            let found = self.extend(labels, s);
            labels.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Pruning on the labelled prefix: edge sums must stay in range, no
    /// non-adjacent pair may sum to a vertex label, and the sums no vertex
    /// can still witness must fit in the isolate budget.
    fn partial_ok(&self, labels: &[u64], s: usize) -> bool {
        let k = labels.len();
        let mut missing = BTreeSet::new();
        for a in 0..k {
            for b in a + 1..k {
                let sum = labels[a] + labels[b];
                let edge = self.g.has_edge(a as Vertex + 1, b as Vertex + 1);
                if edge {
                    if sum > self.max_label {
                        return false;
                    }
                    if !labels.contains(&sum) {
                        missing.insert(sum);
                    }
                } else if labels.contains(&sum) {
                    return false;
                }
            }
        }
        missing.len() <= s + (self.n - k)
    }

    /// Isolates forced by a full vertex labelling, if the result is a valid
    /// labelling of exactly `g` with at most `s` isolates.
    fn complete(&self, labels: &[u64], s: usize) -> Option<Vec<u64>> {
        let mut isolates = BTreeSet::new();
        for (u, w) in self.g.edges() {
            let sum = labels[u as usize - 1] + labels[w as usize - 1];
            if !labels.contains(&sum) {
                isolates.insert(sum);
            }
        }
        if isolates.len() > s {
            return None;
        }
        let all: BTreeSet<u64> = labels.iter().copied().chain(isolates.iter().copied()).collect();
        let owner = |x: u64| labels.iter().position(|&l| l == x);
        let values: Vec<u64> = all.iter().copied().collect();
        for (i, &a) in values.iter().enumerate() {
            for &b in &values[i + 1..] {
                if all.contains(&(a + b)) {
                    match (owner(a), owner(b)) {
                        (Some(u), Some(w)) if self.g.has_edge(u as Vertex + 1, w as Vertex + 1) => {}
                        _ => return None,
                    }
                }
            }
        }
        Some(isolates.into_iter().collect())
    }
}

/// Seeded random simple graph with `m` edges. With `min_degree` 1 every
/// vertex gets at least one edge from a random pairing first.
pub fn random_graph(n: usize, m: usize, seed: u64, min_degree: usize) -> Result<Graph, OracleError> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(OracleError::Infeasible(format!("{m} edges exceed C({n}, 2) = {pairs}")));
    }
    if min_degree > 1 {
        return Err(OracleError::Infeasible("min_degree must be 0 or 1".into()));
    }
    if min_degree == 1 && (n < 2 || m < n.div_ceil(2)) {
        return Err(OracleError::Infeasible(format!("{n} vertices need at least {} edges", n.div_ceil(2))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let ordered = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
    if min_degree == 1 {
        let mut perm: Vec<Vertex> = (1..=n as Vertex).collect();
        perm.shuffle(&mut rng);
        for pair in perm.chunks(2) {
            match *pair {
                [a, b] => {
                    edges.insert(ordered(a, b));
                }
                [a] => {
                    let b = *perm[..n - 1].choose(&mut rng).expect("n >= 2");
                    edges.insert(ordered(a, b));
                }
                _ => unreachable!(),
            }
        }
    }
    let mut rest: Vec<(Vertex, Vertex)> = (1..=n as Vertex)
        .flat_map(|u| (u + 1..=n as Vertex).map(move |w| (u, w)))
        .filter(|e| !edges.contains(e))
        .collect();
    rest.shuffle(&mut rng);
    let needed = m - edges.len();
    edges.extend(rest.into_iter().take(needed));
    Ok(Graph::new(n, edges)?)
}

/// Seeded graph where vertex `v > 1` joins `1..=min(d, v - 1)` random
/// earlier vertices, so its degeneracy is at most `d`.
pub fn random_degenerate_graph(n: usize, d: usize, seed: u64) -> Result<Graph, OracleError> {
    if n == 0 {
        return Err(OracleError::Infeasible("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 2..=n as Vertex {
        let cap = d.min(v as usize - 1);
        if cap == 0 {
            continue;
        }
        let k = rng.random_range(1..=cap);
        let earlier: Vec<Vertex> = (1..v).collect();
        for &u in earlier.choose_multiple(&mut rng, k) {
            edges.push((u, v));
        }
    }
    Ok(Graph::new(n, edges)?)
}
