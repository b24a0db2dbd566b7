//! Closed-form labellings for matchings, complete graphs, the two-isolate
//! path ordering and the incidence-matrix scheme.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::graph::{complete_graph_of, matching_graph, Graph, GraphError, Vertex, VertexOrdering};
use crate::labelling::{LabellingError, SumLabelling};

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("matching schemes need an even vertex count of at least 2, got {0}")]
    OddOrEmpty(usize),
    #[error("{scheme} needs n >= {min}, got {n}")]
    TooSmall { scheme: &'static str, min: usize, n: usize },
    #[error("position must be at least 1")]
    ZeroPosition,
    #[error("vertex {0} is isolated; the incidence scheme needs every vertex on an edge")]
    IsolatedVertex(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
}

fn check_matching_size(n: usize) -> Result<(), SchemeError> {
    if n < 2 || n % 2 == 1 {
        return Err(SchemeError::OddOrEmpty(n));
    }
    Ok(())
}

/// Labels of the doubling matching scheme, first label 2: odd positions are
/// the sum of the previous two, even positions the predecessor plus one.
pub fn matching_recurrence(count: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(count);
    for k in 1..=count {
        let next = if k == 1 {
            BigUint::from(2u8)
        } else if k % 2 == 0 {
            &out[k - 2] + 1u8
        } else {
            &out[k - 3] + &out[k - 2]
        };
        out.push(next);
    }
    out
}

/// Matching on `n` vertices labelled by the doubling recurrence; the only
/// isolate carries the sum of the last pair.
pub fn matching_exponential(n: usize) -> Result<SumLabelling, SchemeError> {
    check_matching_size(n)?;
    let vertex_labels = matching_recurrence(n);
    let isolate = &vertex_labels[n - 2] + &vertex_labels[n - 1];
    Ok(SumLabelling::from_sequence(matching_graph(n)?, vertex_labels, vec![isolate])?)
}

/// Closed form of the recurrence: `3 * 2^(j-1)` at `k = 2j`, `3 * 2^j - 1` at
/// `k = 2j + 1`.
pub fn matching_closed_form(k: usize) -> Result<BigUint, SchemeError> {
    if k == 0 {
        return Err(SchemeError::ZeroPosition);
    }
    let three = BigUint::from(3u8);
    Ok(if k.is_multiple_of(2) { three << (k / 2 - 1) } else { (three << (k / 2)) - 1u8 })
}

/// Pairs `(n + i, 2n - 1 - i)`; every pair sums to the isolate `3n - 1`.
pub fn matching_linear(n: usize) -> Result<SumLabelling, SchemeError> {
    check_matching_size(n)?;
    let labels: Vec<BigUint> = (0..n / 2).flat_map(|i| [BigUint::from(n + i), BigUint::from(2 * n - 1 - i)]).collect();
    Ok(SumLabelling::from_sequence(matching_graph(n)?, labels, vec![BigUint::from(3 * n - 1)])?)
}

/// Matching on `2^(d+1)` vertices from interleaved bit blocks: pair `j` gets
/// `1 + 8(j-1) + 2^(4+d)(2^d - j)` and `2 + 8(2^d - j) + 2^(4+d)(j-1)`.
pub fn matching_block_union(d: u32) -> Result<SumLabelling, SchemeError> {
    let pairs = 1u64 << d;
    let high = BigUint::one() << (4 + d);
    let mut labels = Vec::with_capacity(2 * pairs as usize);
    for j in 1..=pairs {
        labels.push(BigUint::from(1 + 8 * (j - 1)) + &high * (pairs - j));
        labels.push(BigUint::from(2 + 8 * (pairs - j)) + &high * (j - 1));
    }
    let isolate = &labels[0] + &labels[1];
    Ok(SumLabelling::from_sequence(matching_graph(2 * pairs as usize)?, labels, vec![isolate])?)
}

/// `K_n` with vertex `i` labelled `4i - 3` and isolates `4j + 2` for
/// `j = 1..=2n-3`.
pub fn complete_graph_labelling(n: usize) -> Result<SumLabelling, SchemeError> {
    if n < 4 {
        return Err(SchemeError::TooSmall { scheme: "complete_graph_labelling", min: 4, n });
    }
    let vertices = (1..=n).map(|i| BigUint::from(4 * i - 3)).collect();
    let isolates = (1..=2 * n - 3).map(|j| BigUint::from(4 * j + 2)).collect();
    Ok(SumLabelling::from_sequence(complete_graph_of(n)?, vertices, isolates)?)
}

/// `1, 3, 5, ...` up the odd vertices, then back down the even ones. Fed to
/// the incremental labeller, a path needs only two isolates in this order.
pub fn path_optimal_ordering(n: usize) -> Result<VertexOrdering, SchemeError> {
    if n < 3 {
        return Err(SchemeError::TooSmall { scheme: "path_optimal_ordering", min: 3, n });
    }
    let n = n as Vertex;
    let odds = (1..=n).step_by(2);
    let evens = (2..=n).rev().filter(|v| v % 2 == 0);
    Ok(VertexOrdering::new(odds.chain(evens).collect())?)
}

/// Each label is an `(n+2)`-bit column. Vertex `i` is `01` followed by the
/// `i`-th identity column; edge `{u, w}` is `10` followed by its incidence
/// column. Row 1 is the most significant of the low `n` bits.
pub fn incidence_scheme(g: &Graph) -> Result<SumLabelling, SchemeError> {
    let n = g.n();
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(SchemeError::IsolatedVertex(v));
    }
    let bit = |row: Vertex| BigUint::one() << (n - row as usize);
    let top = BigUint::one() << n;
    let vertices = g.vertices().map(|v| &top + bit(v)).collect();
    let isolates = g.edges().map(|(u, w)| (&top << 1u8) + bit(u) + bit(w)).collect();
    Ok(SumLabelling::from_sequence(g.clone(), vertices, isolates)?)
}
