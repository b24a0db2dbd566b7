//! The sum number encoding: the sorted list of all labels of a sum graph.
//! It determines the graph up to isomorphism; adjacency of two positions is
//! one addition plus one binary search.

mod bits;
mod container;
mod gamma;
mod incidence;

use std::cell::Cell;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::labelling::{parse_label, SumLabelling};
use crate::par::Parallelism;
use crate::sums;

pub use bits::{BitReader, BitWriter};
pub use container::{Container, TAG_GAMMA, TAG_INCIDENCE};
pub use gamma::{gamma_bit_length, parse_gamma, serialize_gamma, GAMMA_MAGIC, GAMMA_VERSION};
pub use incidence::{incidence_bit_length, parse_incidence, serialize_incidence};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("labels must be positive")]
    ZeroLabel,
    #[error("label {0} appears more than once")]
    DuplicateLabel(BigUint),
    #[error("labels must be strictly increasing")]
    NotSorted,
    #[error("position {index} is out of range for {len} labels")]
    OutOfRange { index: usize, len: usize },
    #[error("a vertex is never adjacent to itself (position {0})")]
    SamePosition(usize),
    #[error("label {0} is not in the encoding")]
    UnknownLabel(BigUint),
    #[error("cannot serialise an empty encoding")]
    Empty,
    #[error("incidence format needs at least one edge")]
    NoEdges,
    #[error("bad magic byte {0:#04x}")]
    BadMagic(u8),
    #[error("unsupported version {0}")]
    BadVersion(u8),
    #[error("unknown container tag {0:#04x}")]
    BadTag(u8),
    #[error("stream ends early")]
    Truncated,
    #[error("unexpected data after the last field")]
    TrailingData,
    #[error("malformed stream: {0}")]
    Malformed(String),
    #[error("endpoint index {index} is not below n = {n}")]
    IndexOutOfRange { index: u64, n: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Strictly increasing list of positive labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumEncoding {
    labels: Vec<BigUint>,
}

impl SumEncoding {
    pub fn new(labels: Vec<BigUint>) -> Result<Self, CodecError> {
        if labels.iter().any(Zero::is_zero) {
            return Err(CodecError::ZeroLabel);
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CodecError::NotSorted);
        }
        Ok(SumEncoding { labels })
    }

    /// Sorts the labels; repeated values are an error.
    pub fn from_unsorted(mut labels: Vec<BigUint>) -> Result<Self, CodecError> {
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(CodecError::DuplicateLabel(w[0].clone()));
        }
        Self::new(labels)
    }

    pub fn labels(&self) -> &[BigUint] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &BigUint) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn contains(&self, label: &BigUint) -> bool {
        count_search();
        self.labels.binary_search(label).is_ok()
    }

    /// One label per line; `#` starts a comment.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.labels {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    /// Whitespace-separated labels in any order; `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self, CodecError> {
        let mut labels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for token in line.split_whitespace() {
                labels.push(parse_label(token).map_err(|message| CodecError::Parse { line: idx + 1, message })?);
            }
        }
        Self::from_unsorted(labels)
    }
}

thread_local! {
    static SEARCHES: Cell<u64> = const { Cell::new(0) };
}

fn count_search() {
    SEARCHES.with(|c| c.set(c.get() + 1));
}

/// Membership searches performed by adjacency queries on this thread.
pub fn membership_search_count() -> u64 {
    SEARCHES.with(Cell::get)
}

/// Sorted union of all labels; fails on repeated labels.
pub fn encode(labelling: &SumLabelling) -> Result<SumEncoding, CodecError> {
    SumEncoding::from_unsorted(labelling.all_labels().cloned().collect())
}

/// Graph read back from an encoding. Vertex `i + 1` of `graph` is the label
/// at position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub graph: Graph,
    /// Positions (0-based) of degree-0 labels.
    pub isolates: Vec<usize>,
}

impl Decoded {
    /// Edges as pairs of labels, smaller label first.
    pub fn label_edges<'a>(&'a self, enc: &'a SumEncoding) -> impl Iterator<Item = (&'a BigUint, &'a BigUint)> + 'a {
        self.graph.edges().map(move |(u, w)| (&enc.labels[u as usize - 1], &enc.labels[w as usize - 1]))
    }
}

pub fn decode(enc: &SumEncoding) -> Decoded {
    decode_with(enc, Parallelism::default())
}

pub fn decode_with(enc: &SumEncoding, mode: Parallelism) -> Decoded {
    let edges: Vec<(Vertex, Vertex)> = sums::sum_triples_big(&enc.labels, mode)
        .into_iter()
        .filter(|&(i, j, _)| i != j)
        .map(|(i, j, _)| (i as Vertex + 1, j as Vertex + 1))
        .collect();
    let graph = Graph::new(enc.len(), edges).expect("sum pairs are distinct and in range");
    let isolates = (0..enc.len()).filter(|&i| graph.degree(i as Vertex + 1) == 0).collect();
    Decoded { graph, isolates }
}

/// Whether positions `i` and `j` (0-based) are adjacent: one addition and one
/// binary search.
pub fn adjacent(enc: &SumEncoding, i: usize, j: usize) -> Result<bool, CodecError> {
    let len = enc.len();
    for index in [i, j] {
        if index >= len {
            return Err(CodecError::OutOfRange { index, len });
        }
    }
    if i == j {
        return Err(CodecError::SamePosition(i));
    }
    Ok(enc.contains(&(&enc.labels[i] + &enc.labels[j])))
}

/// `adjacent` addressed by label values instead of positions.
pub fn adjacent_labels(enc: &SumEncoding, a: &BigUint, b: &BigUint) -> Result<bool, CodecError> {
    let i = enc.position(a).ok_or_else(|| CodecError::UnknownLabel(a.clone()))?;
    let j = enc.position(b).ok_or_else(|| CodecError::UnknownLabel(b.clone()))?;
    adjacent(enc, i, j)
}
