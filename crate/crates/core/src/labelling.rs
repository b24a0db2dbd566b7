//! The labelling artifact: labels for the vertices of a base graph plus an
//! ordered list of isolate labels, with its text and JSON file forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::par::Parallelism;
use crate::sums;

#[derive(Debug, Error)]
pub enum LabellingError {
    #[error("labels must be positive integers (vertex {0} has label 0)")]
    ZeroVertexLabel(Vertex),
    #[error("isolate #{0} has label 0")]
    ZeroIsolateLabel(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {{{u}, {w}}} has an unlabelled endpoint")]
    UnlabelledEndpoint { u: Vertex, w: Vertex },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Labels for the vertices of `base_graph` plus the labels of the added
/// isolates.
///
/// Vertices of the base graph without a label count as deleted: they must
/// carry no edges. Isolate labels may repeat only while a labelling is under
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumLabelling {
    vertex_labels: BTreeMap<Vertex, BigUint>,
    isolate_labels: Vec<BigUint>,
    base_graph: Graph,
    unique_isolates: bool,
}

impl SumLabelling {
    pub fn new(
        base_graph: Graph,
        vertex_labels: BTreeMap<Vertex, BigUint>,
        isolate_labels: Vec<BigUint>,
    ) -> Result<Self, LabellingError> {
        let n = base_graph.n();
        for (&v, label) in &vertex_labels {
            if v == 0 || v as usize > n {
                return Err(LabellingError::VertexOutOfRange { vertex: v, n });
            }
            if label.is_zero() {
                return Err(LabellingError::ZeroVertexLabel(v));
            }
        }
        if let Some(i) = isolate_labels.iter().position(Zero::is_zero) {
            return Err(LabellingError::ZeroIsolateLabel(i));
        }
        if let Some((u, w)) =
            base_graph.edges().find(|(u, w)| !vertex_labels.contains_key(u) || !vertex_labels.contains_key(w))
        {
            return Err(LabellingError::UnlabelledEndpoint { u, w });
        }
        Ok(SumLabelling { vertex_labels, isolate_labels, base_graph, unique_isolates: false })
    }

    /// Labels for vertices `1..=k` in slice order.
    pub fn from_sequence(
        base_graph: Graph,
        vertex_labels: Vec<BigUint>,
        isolate_labels: Vec<BigUint>,
    ) -> Result<Self, LabellingError> {
        let map = vertex_labels.into_iter().enumerate().map(|(i, l)| (i as Vertex + 1, l)).collect();
        Self::new(base_graph, map, isolate_labels)
    }

    /// Labelling whose intended graph is the one the labels themselves
    /// induce on the listed vertices. This is the reading used for labelling
    /// files, which carry no edge list.
    pub fn from_labels(
        vertex_labels: BTreeMap<Vertex, BigUint>,
        isolate_labels: Vec<BigUint>,
    ) -> Result<Self, LabellingError> {
        let n = vertex_labels.keys().next_back().copied().unwrap_or(0) as usize;
        let mut values: Vec<BigUint> = vertex_labels.values().chain(isolate_labels.iter()).cloned().collect();
        values.sort();
        values.dedup();
        let mut owners: BTreeMap<&BigUint, Vec<Vertex>> = BTreeMap::new();
        for (&v, l) in &vertex_labels {
            owners.entry(l).or_default().push(v);
        }
        let mut edges = Vec::new();
        for (i, j, _) in sums::sum_triples_big(&values, Parallelism::Sequential) {
            if i == j {
                continue;
            }
            if let (Some(a), Some(b)) = (owners.get(&values[i]), owners.get(&values[j])) {
                for &u in a {
                    for &w in b {
                        edges.push((u, w));
                    }
                }
            }
        }
        let graph = Graph::new(n, edges)?;
        Self::new(graph, vertex_labels, isolate_labels)
    }

    pub(crate) fn with_unique_isolates(mut self, flag: bool) -> Self {
        self.unique_isolates = flag;
        self
    }

    pub fn vertex_labels(&self) -> &BTreeMap<Vertex, BigUint> {
        &self.vertex_labels
    }

    pub fn label(&self, v: Vertex) -> Option<&BigUint> {
        self.vertex_labels.get(&v)
    }

    pub fn isolate_labels(&self) -> &[BigUint] {
        &self.isolate_labels
    }

    pub fn base_graph(&self) -> &Graph {
        &self.base_graph
    }

    /// Set for labellings built so that every edge has its own isolate.
    pub fn unique_isolates(&self) -> bool {
        self.unique_isolates
    }

    pub fn isolate_count(&self) -> usize {
        self.isolate_labels.len()
    }

    /// Number of labelled vertices, isolates included.
    pub fn total_vertices(&self) -> usize {
        self.vertex_labels.len() + self.isolate_labels.len()
    }

    pub fn all_labels(&self) -> impl Iterator<Item = &BigUint> {
        self.vertex_labels.values().chain(self.isolate_labels.iter())
    }

    pub fn max_label(&self) -> Option<&BigUint> {
        self.all_labels().max()
    }

    pub fn min_label(&self) -> Option<&BigUint> {
        self.all_labels().min()
    }

    /// Vertex labels in vertex-id order.
    pub fn vertex_label_list(&self) -> Vec<BigUint> {
        self.vertex_labels.values().cloned().collect()
    }

    pub(crate) fn into_parts(self) -> (BTreeMap<Vertex, BigUint>, Vec<BigUint>, Graph) {
        (self.vertex_labels, self.isolate_labels, self.base_graph)
    }

    /// Text form: a `vertices` section of `id label` lines, then an
    /// `isolates` section with one label per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("vertices\n");
        for (v, l) in &self.vertex_labels {
            let _ = writeln!(out, "{v} {l}");
        }
        out.push_str("isolates\n");
        for l in &self.isolate_labels {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, LabellingError> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Vertices,
            Isolates,
        }
        let mut section = Section::None;
        let mut vertices = BTreeMap::new();
        let mut isolates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "vertices" => {
                    section = Section::Vertices;
                    continue;
                }
                "isolates" => {
                    section = Section::Isolates;
                    continue;
                }
                _ => {}
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |message: String| LabellingError::Parse { line: line_no, message };
            match section {
                Section::None => return Err(parse_err("expected a 'vertices' section first".into())),
                Section::Vertices => {
                    if tokens.len() != 2 {
                        return Err(parse_err(format!("expected 'id label', found {line:?}")));
                    }
                    let v =
                        tokens[0].parse::<Vertex>().map_err(|_| parse_err(format!("bad vertex id {:?}", tokens[0])))?;
                    let l = parse_label(tokens[1]).map_err(parse_err)?;
                    if vertices.insert(v, l).is_some() {
                        return Err(parse_err(format!("vertex {v} listed twice")));
                    }
                }
                Section::Isolates => {
                    for t in tokens {
                        isolates.push(parse_label(t).map_err(parse_err)?);
                    }
                }
            }
        }
        Self::from_labels(vertices, isolates)
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> =
            self.vertex_labels.iter().map(|(v, l)| json!({ "id": v, "label": label_to_json(l) })).collect();
        let isolates: Vec<Value> = self.isolate_labels.iter().map(label_to_json).collect();
        json!({ "vertices": vertices, "isolates": isolates })
    }

    pub fn from_json(value: &Value) -> Result<Self, LabellingError> {
        let err = |m: &str| LabellingError::Json(m.to_string());
        let obj = value.as_object().ok_or_else(|| err("expected an object"))?;
        let mut vertices = BTreeMap::new();
        for entry in obj.get("vertices").and_then(Value::as_array).ok_or_else(|| err("missing 'vertices' array"))? {
            let id = entry
                .get("id")
                .and_then(Value::as_u64)
                .and_then(|v| Vertex::try_from(v).ok())
                .ok_or_else(|| err("vertex entry needs an integer 'id'"))?;
            let label = entry.get("label").ok_or_else(|| err("vertex entry needs a 'label'"))?;
            if vertices.insert(id, label_from_json(label)?).is_some() {
                return Err(LabellingError::Json(format!("vertex {id} listed twice")));
            }
        }
        let isolates = obj
            .get("isolates")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing 'isolates' array"))?
            .iter()
            .map(label_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_labels(vertices, isolates)
    }

    /// Accepts either file form, choosing JSON when the text starts with `{`.
    pub fn parse_any(text: &str) -> Result<Self, LabellingError> {
        if text.trim_start().starts_with('{') {
            let value: Value = serde_json::from_str(text).map_err(|e| LabellingError::Json(e.to_string()))?;
            Self::from_json(&value)
        } else {
            Self::parse_text(text)
        }
    }
}

pub(crate) fn parse_label(token: &str) -> Result<BigUint, String> {
    let l = BigUint::from_str(token).map_err(|_| format!("bad label {token:?}"))?;
    if l.is_zero() {
        return Err("labels must be positive".into());
    }
    Ok(l)
}

/// Labels that fit a `u64` are written as JSON numbers, larger ones as
/// decimal strings.
pub fn label_to_json(l: &BigUint) -> Value {
    match l.to_u64() {
        Some(x) => Value::from(x),
        None => Value::from(l.to_string()),
    }
}

pub fn label_from_json(v: &Value) -> Result<BigUint, LabellingError> {
    let parsed = match v {
        Value::Number(n) => n.as_u64().map(BigUint::from).ok_or_else(|| format!("bad label {n}")),
        Value::String(s) => parse_label(s),
        other => Err(format!("bad label {other}")),
    };
    let l = parsed.map_err(LabellingError::Json)?;
    if l.is_zero() {
        return Err(LabellingError::Json("labels must be positive".into()));
    }
    Ok(l)
}

/// Shorthand for building label vectors in tests and examples.
pub fn labels<I: IntoIterator<Item = u64>>(values: I) -> Vec<BigUint> {
    values.into_iter().map(BigUint::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph_of, path_graph};

    fn k4_example() -> SumLabelling {
        SumLabelling::from_sequence(complete_graph_of(4).unwrap(), labels([1, 5, 9, 13]), labels([6, 10, 14, 18, 22]))
            .unwrap()
    }

    #[test]
    fn text_round_trip() {
        let l = k4_example();
        let text = l.to_text();
        assert!(text.starts_with("vertices\n1 1\n2 5\n"));
        let back = SumLabelling::parse_text(&text).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn json_round_trip_with_big_labels() {
        let big = BigUint::from(1u8) << 100u32;
        let l = SumLabelling::from_sequence(
            Graph::empty(2),
            vec![BigUint::from(1u8), big.clone() + 1u8],
            vec![big.clone() * 3u8],
        )
        .unwrap();
        let v = l.to_json();
        assert!(v["vertices"][1]["label"].is_string());
        let back = SumLabelling::from_json(&v).unwrap();
        assert_eq!(back, l);
        assert_eq!(SumLabelling::parse_any(&v.to_string()).unwrap(), l);
    }

    #[test]
    fn from_labels_recovers_induced_graph() {
        let l = SumLabelling::from_labels(
            [(1, BigUint::from(1u8)), (2, BigUint::from(4u8)), (3, BigUint::from(3u8))].into(),
            labels([5, 7]),
        )
        .unwrap();
        assert_eq!(l.base_graph().edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn rejects_unlabelled_endpoint_and_zero() {
        let g = path_graph(3).unwrap();
        let r = SumLabelling::new(g.clone(), [(1, BigUint::from(1u8))].into(), vec![]);
        assert!(matches!(r, Err(LabellingError::UnlabelledEndpoint { .. })));
        let r = SumLabelling::from_sequence(g, labels([1, 0, 3]), vec![]);
        assert!(matches!(r, Err(LabellingError::ZeroVertexLabel(2))));
        assert!(SumLabelling::parse_text("vertices\n1 x\n").is_err());
        assert!(SumLabelling::parse_text("1 2\n").is_err());
    }
}
