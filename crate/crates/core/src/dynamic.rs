//! Updates on finished labellings: edge and vertex deletion for labellings
//! with one isolate per edge, and the mod-4 lift that turns a labelling whose
//! edges are all witnessed by added vertices into an exclusive one.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::labelling::{LabellingError, SumLabelling};
use crate::validity::{check_valid, Violation};

#[derive(Debug, Error)]
pub enum DynamicError {
    #[error("labelling was not built with one isolate per edge")]
    NotUniqueMode,
    #[error("edge {{{0}, {1}}} is not in the graph")]
    EdgeAbsent(Vertex, Vertex),
    #[error("vertex {0} is not labelled")]
    VertexAbsent(Vertex),
    #[error("no isolate labelled {sum} witnesses edge {{{u}, {w}}}")]
    WitnessMissing { u: Vertex, w: Vertex, sum: BigUint },
    #[error("input labels repeat the value {0}")]
    DuplicateLabel(BigUint),
    #[error("input labels do not induce the base graph: {0}")]
    NotARealisation(String),
    #[error("edge {{{u}, {w}}} is witnessed only by base-graph vertices and would not survive the lift")]
    NotWitnessedByExtra { u: Vertex, w: Vertex },
    #[error("internal: lifted labelling is invalid: {0}")]
    InvalidResult(Violation),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
}

fn require_unique(labelling: &SumLabelling) -> Result<(), DynamicError> {
    if labelling.unique_isolates() {
        Ok(())
    } else {
        Err(DynamicError::NotUniqueMode)
    }
}

fn remove_witness(isolates: &mut Vec<BigUint>, u: Vertex, w: Vertex, sum: BigUint) -> Result<(), DynamicError> {
    match isolates.iter().position(|l| *l == sum) {
        Some(i) => {
            isolates.remove(i);
            Ok(())
        }
        None => Err(DynamicError::WitnessMissing { u, w, sum }),
    }
}

/// Removes an edge by dropping its witnessing isolate. Vertex labels are
/// untouched.
pub fn delete_edge(labelling: &SumLabelling, u: Vertex, w: Vertex) -> Result<SumLabelling, DynamicError> {
    require_unique(labelling)?;
    let graph = labelling.base_graph();
    if !graph.has_edge(u, w) {
        return Err(DynamicError::EdgeAbsent(u, w));
    }
    let (u, w) = (u.min(w), u.max(w));
    let sum = labelling.label(u).expect("endpoint labelled") + labelling.label(w).expect("endpoint labelled");
    let mut isolates = labelling.isolate_labels().to_vec();
    remove_witness(&mut isolates, u, w, sum)?;
    let out = SumLabelling::new(graph.without_edge(u, w), labelling.vertex_labels().clone(), isolates)?;
    Ok(out.with_unique_isolates(true))
}

/// Removes a vertex together with the isolates of its edges. The vertex id
/// stays unlabelled afterwards; other ids are unchanged.
pub fn delete_vertex(labelling: &SumLabelling, v: Vertex) -> Result<SumLabelling, DynamicError> {
    require_unique(labelling)?;
    let Some(own) = labelling.label(v) else {
        return Err(DynamicError::VertexAbsent(v));
    };
    let graph = labelling.base_graph();
    let mut isolates = labelling.isolate_labels().to_vec();
    for &u in graph.neighbours(v) {
        let sum = own + labelling.label(u).expect("neighbour labelled");
        remove_witness(&mut isolates, u.min(v), u.max(v), sum)?;
    }
    let mut vertex_labels = labelling.vertex_labels().clone();
    vertex_labels.remove(&v);
    let out = SumLabelling::new(graph.without_vertex_edges(v), vertex_labels, isolates)?;
    Ok(out.with_unique_isolates(true))
}

/// `4x + 1` for base vertices and `4x + 2` for extra vertices.
pub fn lift_labels(vertex_labels: &[BigUint], extra_labels: &[BigUint]) -> (Vec<BigUint>, Vec<BigUint>) {
    let lift = |x: &BigUint, r: u32| (x << 2u32) + r;
    (vertex_labels.iter().map(|x| lift(x, 1)).collect(), extra_labels.iter().map(|x| lift(x, 2)).collect())
}

/// Lifts a labelling of `g` plus extra vertices (which may themselves carry
/// edges) to an exclusive labelling in which the extras are isolates.
///
/// Every edge of `g` must have its label sum on an extra vertex: a sum
/// that lands on a base vertex becomes `4x + 1` on one side and `4x + 2`
/// on the other and the edge would vanish, so such inputs are rejected.
pub fn exclusive_lift(
    g: &Graph,
    vertex_labels: &BTreeMap<Vertex, BigUint>,
    extra_labels: &[BigUint],
) -> Result<SumLabelling, DynamicError> {
    let mut seen = BTreeSet::new();
    for l in vertex_labels.values().chain(extra_labels) {
        if !seen.insert(l) {
            return Err(DynamicError::DuplicateLabel(l.clone()));
        }
    }
    // The labels must induce exactly `g` on the base vertices.
    let induced = SumLabelling::from_labels(vertex_labels.clone(), extra_labels.to_vec())?;
    if induced.base_graph().edge_set() != g.edge_set() {
        let extra: Vec<_> = induced.base_graph().edge_set().symmetric_difference(g.edge_set()).collect();
        return Err(DynamicError::NotARealisation(format!("edge sets differ on {extra:?}")));
    }
    let extras: BTreeSet<&BigUint> = extra_labels.iter().collect();
    for (u, w) in g.edges() {
        let sum = &vertex_labels[&u] + &vertex_labels[&w];
        if !extras.contains(&sum) {
            return Err(DynamicError::NotWitnessedByExtra { u, w });
        }
    }

    let ids: Vec<Vertex> = vertex_labels.keys().copied().collect();
    let values: Vec<BigUint> = vertex_labels.values().cloned().collect();
    let (lifted, lifted_extras) = lift_labels(&values, extra_labels);
    let map = ids.into_iter().zip(lifted).collect();
    let out = SumLabelling::new(g.clone(), map, lifted_extras)?;
    let report = check_valid(&out, false);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(DynamicError::InvalidResult(v));
    }
    Ok(out)
}
