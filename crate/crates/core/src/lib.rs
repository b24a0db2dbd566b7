//! Sum graph labellings with polynomially bounded labels.
//!
//! A simple graph is turned into a sum graph by giving each vertex a distinct
//! positive label and adding isolated "witness" vertices, so that two
//! vertices are adjacent exactly when their labels sum to another label. The
//! sorted label list (the sum number encoding) then represents the graph;
//! adjacency is one addition and one binary search.
//!
//! Modules:
//! - [`graph`]: graphs, vertex orderings, degeneracy, edge-list files
//! - [`labelling`], [`validity`]: the labelling artifact and its checks
//! - [`labeller`]: the incremental repair labeller and its traces
//! - [`dynamic`]: deletions in unique-isolate mode, exclusive lifting
//! - [`schemes`]: closed-form labellings for special families
//! - [`codec`]: encodings, decoding, adjacency queries, binary formats
//! - [`metrics`]: storage accounting and bound checks
//! - [`oracle`]: brute-force references and seeded generators
//!
//! The `parallel` feature (on by default) runs the data-parallel scans on
//! rayon; [`Parallelism::Sequential`] or disabling the feature gives the
//! sequential path with identical results.

pub mod codec;
pub mod dynamic;
pub mod graph;
pub mod labeller;
pub mod labelling;
pub mod metrics;
pub mod oracle;
pub mod par;
pub mod schemes;
mod sums;
pub mod validity;

pub use graph::{degeneracy_ordering, parse_edge_list, serialize_edge_list, Graph, GraphError, Vertex, VertexOrdering};
pub use labeller::{sum_label, sum_label_traced, LabelError, LabellerState, StepRecord};
pub use labelling::{LabellingError, SumLabelling};
pub use par::Parallelism;
pub use sums::{ceil_log2, ceil_log2_u64};
pub use validity::{check_valid, find_violations, is_exclusive, ValidityReport, Violation};
