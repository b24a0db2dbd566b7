//! Storage accounting in bits and checks against the proven label bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::codec::{self, gamma_bit_length, SumEncoding};
use crate::labelling::SumLabelling;
use crate::sums::{ceil_log2, ceil_log2_u64};
use crate::validity::{check_valid, is_exclusive};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("the labelling has no labels")]
    NoLabels,
    #[error("range bounds need a graph with at least one edge")]
    NoEdges,
}

/// Sum of `ceil(log2 l)` over all labels; a label of 1 costs 0 bits.
pub fn storage_bits<'a, I: IntoIterator<Item = &'a BigUint>>(labels: I) -> u64 {
    labels.into_iter().map(ceil_log2).sum()
}

/// Label count times `ceil(log2 max)`.
pub fn storage_max_bits<'a, I: IntoIterator<Item = &'a BigUint>>(labels: I) -> u64 {
    let mut count = 0u64;
    let mut max: Option<&BigUint> = None;
    for l in labels {
        count += 1;
        if max.is_none_or(|m| l > m) {
            max = Some(l);
        }
    }
    max.map_or(0, |m| count * ceil_log2(m))
}

/// `ceil(log2 N!)`, computed on the exact factorial.
pub fn stirling_lower_bound(total_vertices: u64) -> u64 {
    let fact = (2..=total_vertices).fold(BigUint::from(1u8), |acc, k| acc * k);
    ceil_log2(&fact)
}

/// `(n + 2m + 2) ceil(log2 n) + 2 ceil(log2 m) + 2`.
pub fn compressed_incidence_cost(n: u64, m: u64) -> u64 {
    (n + 2 * m + 2) * ceil_log2_u64(n) + 2 * ceil_log2_u64(m) + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Baselines {
    pub adjacency_matrix_bits: u64,
    pub adjacency_list_bits: u64,
    pub compressed_incidence_bits: Option<u64>,
}

pub fn baseline_costs(n: u64, m: u64) -> Baselines {
    let ln = ceil_log2_u64(n);
    Baselines {
        adjacency_matrix_bits: n * n,
        adjacency_list_bits: 2 * m * ln + n * ln,
        compressed_incidence_bits: (n >= 2 && m >= 1).then(|| compressed_incidence_cost(n, m)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeReport {
    pub range: String,
    pub min_label: String,
    pub max_label: String,
    pub range_exceeds_min: bool,
    pub double_range_exceeds_max: bool,
}

impl RangeReport {
    pub fn holds(&self) -> bool {
        self.range_exceeds_min && self.double_range_exceeds_max
    }
}

/// Range of the labels with the two checks that hold for every valid
/// labelling of a graph with an edge: `range > min` and `2 range > max`.
pub fn range_report(labelling: &SumLabelling) -> Result<RangeReport, MetricsError> {
    if labelling.base_graph().m() == 0 {
        return Err(MetricsError::NoEdges);
    }
    let (min, max) = labelling.min_label().zip(labelling.max_label()).ok_or(MetricsError::NoLabels)?;
    let range = max - min;
    Ok(RangeReport {
        range_exceeds_min: &range > min,
        double_range_exceeds_max: &(&range * 2u32) > max,
        range: range.to_string(),
        min_label: min.to_string(),
        max_label: max.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub value: String,
    pub bound: String,
    pub holds: bool,
}

impl BoundCheck {
    fn exact(value: &BigUint, bound: BigUint) -> Self {
        BoundCheck { value: value.to_string(), holds: *value <= bound, bound: bound.to_string() }
    }

    fn real(value: u64, bound: f64) -> Self {
        // Slack for rounding in the logarithms.
        BoundCheck { value: value.to_string(), bound: format!("{bound:.3}"), holds: value as f64 <= bound + 1e-9 }
    }
}

/// Named checks of the labeller's guarantees for a graph on `n` vertices and
/// `m` edges; `d` enables the degeneracy-ordering bounds.
pub fn bound_report(labelling: &SumLabelling, n: u64, m: u64, d: Option<u64>) -> BTreeMap<String, BoundCheck> {
    let n_big = BigUint::from(n);
    let cube = &n_big * &n_big * &n_big;
    let square = &n_big * &n_big;
    let zero = BigUint::default();
    let max_vertex = labelling.vertex_labels().values().max().unwrap_or(&zero);
    let max_label = labelling.max_label().unwrap_or(&zero);
    let store_max = storage_max_bits(labelling.all_labels());
    let log_n = (n.max(1) as f64).log2();

    let mut out = BTreeMap::new();
    out.insert("vertex_label<=4n^3".to_string(), BoundCheck::exact(max_vertex, &cube * 4u32));
    out.insert("label<=8n^3".to_string(), BoundCheck::exact(max_label, &cube * 8u32));
    out.insert(
        "isolates<=m".to_string(),
        BoundCheck::exact(&BigUint::from(labelling.isolate_count()), BigUint::from(m)),
    );
    out.insert("storage_max<=9m(log2n+1)".to_string(), BoundCheck::real(store_max, 9.0 * m as f64 * (log_n + 1.0)));
    if let Some(d) = d {
        out.insert("vertex_label<=6dn^2".to_string(), BoundCheck::exact(max_vertex, &square * (6 * d)));
        out.insert("label<=12dn^2".to_string(), BoundCheck::exact(max_label, &square * (12 * d)));
        if d >= 1 {
            let bound = 3.0 * m as f64 * (2.0 * log_n + (12.0 * d as f64).log2());
            out.insert("storage_max<=3m(2log2n+log2(12d))".to_string(), BoundCheck::real(store_max, bound));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StorageReport {
    pub storage_bits: u64,
    pub storage_max_bits: u64,
    pub gamma_bits: Option<u64>,
    pub range: String,
    pub min_label: String,
    pub max_label: String,
    pub total_vertices: usize,
    pub isolate_count: usize,
    pub valid: bool,
    pub exclusive: bool,
    pub stirling_lower_bound: u64,
    pub baselines: Baselines,
    pub range_check: Option<RangeReport>,
    pub bounds: BTreeMap<String, BoundCheck>,
}

impl StorageReport {
    /// Report for `labelling`; bound checks are filled in only when `bounds`
    /// is given as `(d)` (use `Some(None)` for no degeneracy bounds).
    pub fn new(labelling: &SumLabelling, bounds: Option<Option<u64>>) -> Result<Self, MetricsError> {
        let (min, max) = labelling.min_label().zip(labelling.max_label()).ok_or(MetricsError::NoLabels)?;
        let g = labelling.base_graph();
        let n = labelling.vertex_labels().len() as u64;
        let m = g.m() as u64;
        let total = labelling.total_vertices();
        Ok(StorageReport {
            storage_bits: storage_bits(labelling.all_labels()),
            storage_max_bits: storage_max_bits(labelling.all_labels()),
            gamma_bits: codec::encode(labelling).ok().map(|e: SumEncoding| gamma_bit_length(&e) as u64),
            range: (max - min).to_string(),
            min_label: min.to_string(),
            max_label: max.to_string(),
            total_vertices: total,
            isolate_count: labelling.isolate_count(),
            valid: check_valid(labelling, false).ok,
            exclusive: is_exclusive(labelling),
            stirling_lower_bound: stirling_lower_bound(total as u64),
            baselines: baseline_costs(n, m),
            range_check: range_report(labelling).ok(),
            bounds: bounds.map(|d| bound_report(labelling, n, m, d)).unwrap_or_default(),
        })
    }

    pub fn bounds_hold(&self) -> bool {
        self.bounds.values().all(|b| b.holds) && self.range_check.as_ref().is_none_or(RangeReport::holds)
    }

    /// Two-column aligned table.
    pub fn to_text(&self) -> String {
        let opt = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        let mut rows: Vec<(String, String)> = vec![
            ("storage_bits".into(), self.storage_bits.to_string()),
            ("storage_max_bits".into(), self.storage_max_bits.to_string()),
            ("gamma_bits".into(), opt(self.gamma_bits)),
            ("min_label".into(), self.min_label.clone()),
            ("max_label".into(), self.max_label.clone()),
            ("range".into(), self.range.clone()),
            ("total_vertices".into(), self.total_vertices.to_string()),
            ("isolates".into(), self.isolate_count.to_string()),
            ("valid".into(), self.valid.to_string()),
            ("exclusive".into(), self.exclusive.to_string()),
            ("stirling_lower_bound".into(), self.stirling_lower_bound.to_string()),
            ("adjacency_matrix_bits".into(), self.baselines.adjacency_matrix_bits.to_string()),
            ("adjacency_list_bits".into(), self.baselines.adjacency_list_bits.to_string()),
            ("compressed_incidence_bits".into(), opt(self.baselines.compressed_incidence_bits)),
        ];
        if let Some(r) = &self.range_check {
            rows.push(("range>min".into(), r.range_exceeds_min.to_string()));
            rows.push(("2*range>max".into(), r.double_range_exceeds_max.to_string()));
        }
        for (name, b) in &self.bounds {
            let verdict = if b.holds { "ok" } else { "FAIL" };
            rows.push((format!("bound {name}"), format!("{} <= {} {verdict}", b.value, b.bound)));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph_of, path_graph};
    use crate::labelling::labels;

    fn k4() -> SumLabelling {
        SumLabelling::from_sequence(complete_graph_of(4).unwrap(), labels([1, 5, 9, 13]), labels([6, 10, 14, 18, 22]))
            .unwrap()
    }

    #[test]
    fn storage_examples() {
        assert_eq!(storage_bits(&labels([1, 5, 6, 9, 10, 13, 14, 18, 22])), 32);
        assert_eq!(storage_bits(&labels([1])), 0);
        assert_eq!(storage_bits(&labels([2, 4, 8])), 6);
        assert_eq!(storage_max_bits(k4().all_labels()), 45);
        assert_eq!(storage_max_bits(&labels([1])), 0);
        assert_eq!(storage_max_bits(&labels([1, 5, 9, 17, 29, 6, 14, 26, 46])), 54);
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_lower_bound(4), 5);
        assert_eq!(stirling_lower_bound(1), 0);
        assert_eq!(stirling_lower_bound(10), 22);
    }

    #[test]
    fn cost_examples() {
        assert_eq!(compressed_incidence_cost(6, 6), 68);
        assert_eq!(compressed_incidence_cost(2, 1), 8);
        assert_eq!(compressed_incidence_cost(4, 6), 44);
        assert_eq!(baseline_costs(4, 0).adjacency_matrix_bits, 16);
        assert_eq!(baseline_costs(100, 100).adjacency_matrix_bits, 10000);
        assert_eq!(baseline_costs(8, 4).adjacency_list_bits, 48);
    }

    #[test]
    fn range_examples() {
        let tri =
            SumLabelling::from_sequence(complete_graph_of(3).unwrap(), labels([1, 4, 3]), labels([5, 7])).unwrap();
        let r = range_report(&tri).unwrap();
        assert_eq!(r.range, "6");
        assert!(r.holds());
        let r = range_report(&k4()).unwrap();
        assert_eq!(r.range, "21");
        assert!(r.holds());
        let empty = SumLabelling::from_sequence(crate::graph::Graph::empty(1), labels([1]), vec![]).unwrap();
        assert_eq!(range_report(&empty), Err(MetricsError::NoEdges));
    }

    #[test]
    fn bound_examples() {
        let b = bound_report(&k4(), 4, 6, None);
        assert!(b.values().all(|c| c.holds));
        assert_eq!(b["vertex_label<=4n^3"].bound, "256");
        let p5 =
            SumLabelling::from_sequence(path_graph(5).unwrap(), labels([1, 5, 9, 17, 29]), labels([6, 14, 26, 46]))
                .unwrap();
        let b = bound_report(&p5, 5, 4, None);
        assert_eq!((b["vertex_label<=4n^3"].value.as_str(), b["vertex_label<=4n^3"].bound.as_str()), ("29", "500"));
        assert_eq!((b["label<=8n^3"].value.as_str(), b["label<=8n^3"].bound.as_str()), ("46", "1000"));
        assert!(b.values().all(|c| c.holds));
    }

    #[test]
    fn report_for_k4() {
        let r = StorageReport::new(&k4(), Some(None)).unwrap();
        assert_eq!(r.storage_bits, 32);
        assert_eq!(r.storage_max_bits, 45);
        assert!(r.valid && r.exclusive && r.bounds_hold());
        assert!(r.to_text().contains("storage_bits"));
        assert!(serde_json::to_value(&r).unwrap()["bounds"].is_object());
    }
}
