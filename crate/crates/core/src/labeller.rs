//! Incremental sum labelling.
//!
//! Vertices arrive one at a time. The first gets label 1; every later vertex
//! starts at 5 and, together with one new isolate per earlier neighbour
//! (labelled with the edge sum), moves up in steps of 4 until no violation
//! is left. Vertex labels stay `1 mod 4` and isolate labels `2 mod 4`, which
//! makes the result exclusive and confines violations to three shapes:
//!
//! * the candidate equals an existing vertex label;
//! * candidate plus a non-neighbour's label hits an existing isolate;
//! * a new isolate equals the sum of two non-adjacent earlier vertices.
//!
//! Each increment removes at least one violation for good, which bounds
//! the number of increments per step.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexOrdering};
use crate::labelling::{LabellingError, SumLabelling};
use crate::validity::{check_valid, Violation};

#[derive(Debug, Error)]
pub enum LabelError {
    #[error("ordering has {ordering} entries but the graph has {graph} vertices")]
    OrderingMismatch { ordering: usize, graph: usize },
    #[error("vertex {0} was already processed")]
    AlreadyProcessed(Vertex),
    #[error("vertex 0 is not a valid index")]
    ZeroVertex,
    #[error("neighbour {neighbour} of vertex {vertex} has not been processed yet")]
    UnprocessedNeighbour { vertex: Vertex, neighbour: Vertex },
    #[error("internal: step {step} exhausted its budget of {budget} increments")]
    BudgetExhausted { step: usize, budget: u64 },
    #[error("internal: label search at step {step} left a violation: {detail}")]
    RepairFailed { step: usize, detail: String },
    #[error("internal: label arithmetic overflowed at step {step}")]
    Overflow { step: usize },
    #[error("internal: finalised labelling is invalid: {0}")]
    InvalidResult(Violation),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
}

/// Statistics of one incremental step. `step` is the number of vertices
/// processed before this one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub vertex: Vertex,
    pub step: usize,
    pub label: u64,
    /// Earlier neighbours, one candidate isolate each.
    pub neighbours: usize,
    /// Distinct isolates present before the step.
    pub isolates_before: usize,
    /// Isolates actually added (fresh labels only).
    pub isolates_added: usize,
    pub increments: u64,
    /// Violations seen and repaired during the step.
    pub violations_repaired: usize,
}

impl StepRecord {
    /// Worst-case increments from counting every possible violation:
    /// `i * r_i + t_i * i * (i - 1) / 2`.
    pub fn violation_bound(&self) -> u64 {
        let i = self.step as u64;
        i * self.isolates_before as u64 + self.neighbours as u64 * i * i.saturating_sub(1) / 2
    }

    /// The general per-step bound `i^3 - i^2`.
    pub fn cubic_bound(&self) -> u64 {
        let i = self.step as u64;
        i * i * i - i * i
    }
}

/// Increment cap for a step with `i` processed vertices. The theoretical
/// need is at most `i^3 - i^2`; hitting this cap means a bug.
pub fn increment_cap(i: usize) -> u64 {
    4 * (i as u64).pow(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum RepairKey {
    Pair(Vertex),
    /// Candidate plus a non-neighbour hit an existing isolate label.
    OldIsolate(Vertex, u64),
    /// New isolate `k` equals a sum of two non-adjacent vertices.
    NewIsolate(Vertex, Vertex, usize),
    /// Unique mode: new isolate `k` collides with an existing isolate label.
    Collision(usize, u64),
}

/// Running state of the incremental labeller over the processed prefix.
#[derive(Debug, Clone, Default)]
pub struct LabellerState {
    unique_isolates: bool,
    order: Vec<Vertex>,
    label_of: HashMap<Vertex, u64>,
    vertex_at: HashMap<u64, Vertex>,
    /// Vertex labels, ascending.
    vertex_sorted: Vec<u64>,
    edges: HashSet<(Vertex, Vertex)>,
    /// Isolate labels in creation order, repeats included.
    isolates: Vec<u64>,
    isolate_labels: HashSet<u64>,
    /// Distinct isolate labels, ascending.
    isolate_sorted: Vec<u64>,
    /// Label sums of processed non-adjacent pairs, ascending, with
    /// multiplicity.
    non_edge_sums: Vec<u64>,
    /// Distinct isolates so far.
    r: usize,
    /// Isolates added by the last step.
    t: usize,
    increment_count: u64,
    budget: u64,
    steps: Vec<StepRecord>,
}

/// Candidates examined per window of the label search.
const WINDOW: u64 = 1024;

/// The part of an ascending slice lying in `lo..hi`.
fn in_range(sorted: &[u64], lo: u64, hi: u64) -> &[u64] {
    let start = sorted.partition_point(|&x| x < lo);
    let end = sorted.partition_point(|&x| x < hi);
    &sorted[start..end.max(start)]
}

/// Merges `extra` into the ascending vector `into`, keeping duplicates.
fn merge_sorted(into: &mut Vec<u64>, mut extra: Vec<u64>) {
    if extra.is_empty() {
        return;
    }
    extra.sort_unstable();
    let old = std::mem::take(into);
    let mut merged = Vec::with_capacity(old.len() + extra.len());
    let (mut i, mut j) = (0, 0);
    while i < old.len() && j < extra.len() {
        if old[i] <= extra[j] {
            merged.push(old[i]);
            i += 1;
        } else {
            merged.push(extra[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&old[i..]);
    merged.extend_from_slice(&extra[j..]);
    *into = merged;
}

impl LabellerState {
    pub fn new(unique_isolates: bool) -> Self {
        LabellerState { unique_isolates, ..Default::default() }
    }

    pub fn unique_isolates(&self) -> bool {
        self.unique_isolates
    }

    pub fn processed(&self) -> &[Vertex] {
        &self.order
    }

    pub fn label(&self, v: Vertex) -> Option<u64> {
        self.label_of.get(&v).copied()
    }

    /// Isolate labels in creation order, possibly repeated.
    pub fn isolates(&self) -> &[u64] {
        &self.isolates
    }

    /// Distinct isolates so far.
    pub fn isolate_count(&self) -> usize {
        self.r
    }

    pub fn edges_processed(&self) -> usize {
        self.edges.len()
    }

    /// Isolates added by the most recent step.
    pub fn last_added(&self) -> usize {
        self.t
    }

    pub fn increment_count(&self) -> u64 {
        self.increment_count
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    fn checked_neighbours(&self, vertex: Vertex, neighbours: &[Vertex]) -> Result<Vec<Vertex>, LabelError> {
        if vertex == 0 {
            return Err(LabelError::ZeroVertex);
        }
        if self.label_of.contains_key(&vertex) {
            return Err(LabelError::AlreadyProcessed(vertex));
        }
        let position: HashMap<Vertex, usize> = self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut nbrs: Vec<Vertex> = Vec::with_capacity(neighbours.len());
        for &u in neighbours {
            if !position.contains_key(&u) {
                return Err(LabelError::UnprocessedNeighbour { vertex, neighbour: u });
            }
            if !nbrs.contains(&u) {
                nbrs.push(u);
            }
        }
        nbrs.sort_by_key(|u| position[u]);
        Ok(nbrs)
    }

    /// Processes one more vertex whose already-processed neighbours are
    /// `neighbours`. Isolates are created in the order the neighbours were
    /// processed.
    ///
    /// Equivalent to trying `5, 9, 13, ...` one at a time, but every
    /// violation pins down the single candidate it rules out, so the
    /// candidates are screened a window at a time from the sorted label sets.
    pub fn extend(&mut self, vertex: Vertex, neighbours: &[Vertex]) -> Result<(), LabelError> {
        let nbrs = self.checked_neighbours(vertex, neighbours)?;
        let step = self.order.len();
        self.budget = increment_cap(step);
        self.increment_count = 0;
        if step == 0 {
            self.commit(vertex, 1, &nbrs, &[], 0, step);
            return Ok(());
        }

        let nbr_labels: Vec<u64> = nbrs.iter().map(|u| self.label_of[u]).collect();
        let nbr_set: HashSet<Vertex> = nbrs.iter().copied().collect();
        let others: Vec<u64> = self.order.iter().filter(|u| !nbr_set.contains(u)).map(|u| self.label_of[u]).collect();
        let mut repaired = 0usize;
        let mut lo: u64 = 5;
        let candidate = 'search: loop {
            let hi = lo.checked_add(4 * WINDOW).ok_or(LabelError::Overflow { step })?;
            let hits = self.window_hits(lo, hi, &others, &nbr_labels);
            for (slot, &count) in hits.iter().enumerate() {
                let candidate = lo + 4 * slot as u64;
                if count == 0 {
                    break 'search candidate;
                }
                repaired += count;
                if self.increment_count >= self.budget {
                    return Err(LabelError::BudgetExhausted { step, budget: self.budget });
                }
                self.increment_count += 1;
            }
            lo = hi;
        };
        let new_isolates = nbr_labels
            .iter()
            .map(|&l| candidate.checked_add(l))
            .collect::<Option<Vec<u64>>>()
            .ok_or(LabelError::Overflow { step })?;
        if let Some(key) = self.violations_for(candidate, &nbr_set, &new_isolates).into_iter().next() {
            return Err(LabelError::RepairFailed { step, detail: format!("{key:?}") });
        }
        self.commit(vertex, candidate, &nbrs, &new_isolates, repaired, step);
        Ok(())
    }

    /// Number of violations ruling out each candidate `lo, lo + 4, ..`
    /// below `hi`. `others` are the labels of processed non-neighbours.
    fn window_hits(&self, lo: u64, hi: u64, others: &[u64], nbr_labels: &[u64]) -> Vec<usize> {
        let mut hits = vec![0usize; ((hi - lo) / 4) as usize];
        let mut mark = |value: u64, count: usize| {
            if value >= lo && value < hi && (value - lo).is_multiple_of(4) {
                hits[((value - lo) / 4) as usize] += count;
            }
        };
        // Candidate equals a vertex label.
        for &l in in_range(&self.vertex_sorted, lo, hi) {
            mark(l, 1);
        }
        // Candidate plus a non-neighbour hits an existing isolate.
        for &l in others {
            for &y in in_range(&self.isolate_sorted, lo.saturating_add(l), hi.saturating_add(l)) {
                mark(y - l, 1);
            }
        }
        for &l in nbr_labels {
            let (a, b) = (lo.saturating_add(l), hi.saturating_add(l));
            // New isolate equals the sum of two non-adjacent vertices.
            for &s in in_range(&self.non_edge_sums, a, b) {
                mark(s - l, 1);
            }
            if self.unique_isolates {
                for &y in in_range(&self.isolate_sorted, a, b) {
                    mark(y - l, 1);
                }
            }
        }
        hits
    }

    /// Violations of one candidate, found by direct lookups. Used to
    /// confirm the outcome of the window search.
    fn violations_for(&self, candidate: u64, nbrs: &HashSet<Vertex>, new_isolates: &[u64]) -> Vec<RepairKey> {
        let mut found = Vec::new();
        if let Some(&v) = self.vertex_at.get(&candidate) {
            found.push(RepairKey::Pair(v));
        }
        for &u in &self.order {
            if nbrs.contains(&u) {
                continue;
            }
            if let Some(y) = candidate.checked_add(self.label_of[&u]) {
                if self.isolate_labels.contains(&y) {
                    found.push(RepairKey::OldIsolate(u, y));
                }
            }
        }
        for (k, &y) in new_isolates.iter().enumerate() {
            for &a in &self.order {
                let la = self.label_of[&a];
                if la >= y {
                    continue;
                }
                if let Some(&b) = self.vertex_at.get(&(y - la)) {
                    if a < b && !self.edges.contains(&(a, b)) {
                        found.push(RepairKey::NewIsolate(a, b, k));
                    }
                }
            }
            if self.unique_isolates && self.isolate_labels.contains(&y) {
                found.push(RepairKey::Collision(k, y));
            }
        }
        found
    }

    /// Reference search: one candidate at a time, recording every violation
    /// key and failing if a repaired one shows up again.
    #[cfg(test)]
    fn naive_label(&self, vertex: Vertex, neighbours: &[Vertex]) -> Result<(u64, u64, usize), LabelError> {
        let nbrs = self.checked_neighbours(vertex, neighbours)?;
        let step = self.order.len();
        if step == 0 {
            return Ok((1, 0, 0));
        }
        let nbr_labels: Vec<u64> = nbrs.iter().map(|u| self.label_of[u]).collect();
        let nbr_set: HashSet<Vertex> = nbrs.iter().copied().collect();
        let mut seen: HashSet<RepairKey> = HashSet::new();
        let mut candidate = 5u64;
        let mut increments = 0u64;
        loop {
            let new_isolates: Vec<u64> = nbr_labels.iter().map(|&l| candidate + l).collect();
            let found = self.violations_for(candidate, &nbr_set, &new_isolates);
            if found.is_empty() {
                return Ok((candidate, increments, seen.len()));
            }
            for key in found {
                if !seen.insert(key) {
                    return Err(LabelError::RepairFailed { step, detail: format!("{key:?} reappeared") });
                }
            }
            increments += 1;
            candidate += 4;
        }
    }

    fn commit(
        &mut self,
        vertex: Vertex,
        label: u64,
        nbrs: &[Vertex],
        new_isolates: &[u64],
        repaired: usize,
        step: usize,
    ) {
        let isolates_before = self.r;
        let mut added = 0;
        let mut fresh = Vec::new();
        for &y in new_isolates {
            self.isolates.push(y);
            if self.isolate_labels.insert(y) {
                fresh.push(y);
                added += 1;
            }
        }
        merge_sorted(&mut self.isolate_sorted, fresh);
        for &u in nbrs {
            self.edges.insert((u.min(vertex), u.max(vertex)));
        }
        let sums = self.order.iter().filter(|u| !nbrs.contains(u)).map(|u| label + self.label_of[u]).collect();
        merge_sorted(&mut self.non_edge_sums, sums);
        merge_sorted(&mut self.vertex_sorted, vec![label]);
        self.order.push(vertex);
        self.label_of.insert(vertex, label);
        self.vertex_at.insert(label, vertex);
        self.r += added;
        self.t = added;
        self.steps.push(StepRecord {
            vertex,
            step,
            label,
            neighbours: nbrs.len(),
            isolates_before,
            isolates_added: added,
            increments: self.increment_count,
            violations_repaired: repaired,
        });
    }

    fn base_graph(&self) -> Result<Graph, LabelError> {
        let n = self.order.iter().copied().max().unwrap_or(0) as usize;
        Ok(Graph::new(n, self.edges.iter().copied()).map_err(LabellingError::from)?)
    }

    fn vertex_map(&self) -> BTreeMap<Vertex, BigUint> {
        self.label_of.iter().map(|(&v, &l)| (v, BigUint::from(l))).collect()
    }

    /// The current labelling, repeated isolate labels kept.
    pub fn snapshot(&self) -> Result<SumLabelling, LabelError> {
        let isolates = self.isolates.iter().map(|&l| BigUint::from(l)).collect();
        let l = SumLabelling::new(self.base_graph()?, self.vertex_map(), isolates)?;
        Ok(l.with_unique_isolates(self.unique_isolates))
    }

    /// Drops repeated isolates (first occurrence wins) and verifies the
    /// result with a full scan.
    pub fn finalize(&self) -> Result<SumLabelling, LabelError> {
        let mut kept = HashSet::new();
        let isolates = self.isolates.iter().filter(|&&l| kept.insert(l)).map(|&l| BigUint::from(l)).collect();
        let labelling = SumLabelling::new(self.base_graph()?, self.vertex_map(), isolates)?
            .with_unique_isolates(self.unique_isolates);
        let report = check_valid(&labelling, false);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(LabelError::InvalidResult(v));
        }
        Ok(labelling)
    }
}

/// Labels `g` by processing its vertices in `ordering`.
pub fn sum_label(g: &Graph, ordering: &VertexOrdering, unique_isolates: bool) -> Result<SumLabelling, LabelError> {
    sum_label_traced(g, ordering, unique_isolates).map(|(l, _)| l)
}

/// `sum_label` that also returns the per-step records.
pub fn sum_label_traced(
    g: &Graph,
    ordering: &VertexOrdering,
    unique_isolates: bool,
) -> Result<(SumLabelling, Vec<StepRecord>), LabelError> {
    if ordering.len() != g.n() {
        return Err(LabelError::OrderingMismatch { ordering: ordering.len(), graph: g.n() });
    }
    let mut state = LabellerState::new(unique_isolates);
    for &v in ordering.as_slice() {
        let earlier: Vec<Vertex> = g.neighbours(v).iter().copied().filter(|u| state.label(*u).is_some()).collect();
        state.extend(v, &earlier)?;
    }
    let labelling = state.finalize()?;
    // The state only knows the vertices it saw; restore the full vertex count.
    let (vertex_labels, isolates, _) = labelling.into_parts();
    let labelling = SumLabelling::new(g.clone(), vertex_labels, isolates)?.with_unique_isolates(unique_isolates);
    Ok((labelling, state.steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph_of, cycle_graph, path_graph};
    use crate::labelling::labels;

    fn order(v: &[Vertex]) -> VertexOrdering {
        VertexOrdering::new(v.to_vec()).unwrap()
    }

    #[test]
    fn k4_identity() {
        let l = sum_label(&complete_graph_of(4).unwrap(), &order(&[1, 2, 3, 4]), false).unwrap();
        assert_eq!(l.vertex_label_list(), labels([1, 5, 9, 13]));
        assert_eq!(l.isolate_labels(), labels([6, 10, 14, 18, 22]).as_slice());
    }

    #[test]
    fn c4_orders() {
        let c4 = cycle_graph(4).unwrap();
        let l = sum_label(&c4, &order(&[1, 2, 3, 4]), false).unwrap();
        assert_eq!(l.vertex_label_list(), labels([1, 5, 9, 13]));
        assert_eq!(l.isolate_labels(), labels([6, 14, 22]).as_slice());
        let l = sum_label(&c4, &order(&[1, 2, 4, 3]), false).unwrap();
        assert_eq!(l.isolate_labels(), labels([6, 10, 18, 22]).as_slice());
    }

    #[test]
    fn p5_orders() {
        let p5 = path_graph(5).unwrap();
        let l = sum_label(&p5, &order(&[1, 2, 3, 4, 5]), false).unwrap();
        assert_eq!(l.vertex_label_list(), labels([1, 5, 9, 17, 29]));
        assert_eq!(l.isolate_labels(), labels([6, 14, 26, 46]).as_slice());
        let l = sum_label(&p5, &order(&[1, 3, 5, 4, 2]), false).unwrap();
        assert_eq!(l.vertex_label_list(), labels([1, 17, 5, 13, 9]));
        assert_eq!(l.isolate_labels(), labels([18, 22]).as_slice());
    }

    #[test]
    fn extend_on_a_path_prefix() {
        let mut s = LabellerState::new(false);
        s.extend(1, &[]).unwrap();
        s.extend(2, &[1]).unwrap();
        s.extend(3, &[2]).unwrap();
        assert_eq!(s.label(3), Some(9));
        assert_eq!(s.isolates(), &[6, 14]);
        assert_eq!(s.last_added(), 1);
    }

    #[test]
    fn extend_without_neighbours_adds_no_isolate() {
        let mut s = LabellerState::new(false);
        s.extend(1, &[]).unwrap();
        s.extend(2, &[1]).unwrap();
        s.extend(3, &[]).unwrap();
        // 5 is taken; 9 + 1 = 10 and 9 + 5 = 14 hit nothing.
        assert_eq!(s.label(3), Some(9));
        assert_eq!(s.isolates(), &[6]);
        assert_eq!(s.last_added(), 0);
    }

    #[test]
    fn extend_reuses_existing_isolate() {
        let mut s = LabellerState::new(false);
        s.extend(1, &[]).unwrap();
        s.extend(2, &[1]).unwrap();
        s.extend(3, &[2]).unwrap();
        s.extend(4, &[1, 3]).unwrap();
        assert_eq!(s.label(4), Some(13));
        assert_eq!(s.isolates(), &[6, 14, 14, 22]);
        assert_eq!(s.isolate_count(), 3);
        assert_eq!(s.last_added(), 1);
        assert_eq!(s.finalize().unwrap().isolate_labels(), labels([6, 14, 22]).as_slice());
    }

    #[test]
    fn extend_rejects_bad_input() {
        let mut s = LabellerState::new(false);
        s.extend(1, &[]).unwrap();
        assert!(matches!(s.extend(1, &[]), Err(LabelError::AlreadyProcessed(1))));
        assert!(matches!(s.extend(2, &[3]), Err(LabelError::UnprocessedNeighbour { .. })));
    }

    #[test]
    fn unique_mode_gives_one_isolate_per_edge() {
        let k4 = complete_graph_of(4).unwrap();
        let l = sum_label(&k4, &order(&[1, 2, 3, 4]), true).unwrap();
        assert_eq!(l.isolate_count(), 6);
        assert!(l.unique_isolates());
        assert!(check_valid(&l, false).ok);
    }

    #[test]
    fn graph_with_isolated_input_vertex() {
        let g = Graph::new(3, [(1, 3)]).unwrap();
        let l = sum_label(&g, &VertexOrdering::identity(3), false).unwrap();
        assert!(check_valid(&l, false).ok);
        assert_eq!(l.isolate_count(), 1);
    }

    #[test]
    fn ordering_must_cover_graph() {
        let r = sum_label(&path_graph(3).unwrap(), &VertexOrdering::identity(2), false);
        assert!(matches!(r, Err(LabelError::OrderingMismatch { .. })));
    }

    #[test]
    fn window_search_matches_naive_search() {
        use crate::oracle::random_graph;
        for seed in 0..40 {
            let n = 4 + (seed as usize % 9);
            let m = (n + (seed as usize * 7) % (n * (n - 1) / 2 - n + 1)).min(n * (n - 1) / 2);
            let g = random_graph(n, m, seed, 1).unwrap();
            for unique in [false, true] {
                let mut s = LabellerState::new(unique);
                for v in g.vertices() {
                    let earlier: Vec<Vertex> = g.neighbours(v).iter().copied().filter(|&u| u < v).collect();
                    let (label, increments, repaired) = s.naive_label(v, &earlier).unwrap();
                    s.extend(v, &earlier).unwrap();
                    let rec = s.steps().last().unwrap();
                    assert_eq!((rec.label, rec.increments, rec.violations_repaired), (label, increments, repaired));
                }
            }
        }
    }

    #[test]
    fn step_records() {
        let (_, steps) = sum_label_traced(&complete_graph_of(4).unwrap(), &VertexOrdering::identity(4), false).unwrap();
        assert_eq!(steps.len(), 4);
        assert_eq!(steps[2].increments, 1); // 5 collides with v2
        assert!(steps.iter().all(|s| s.increments <= s.cubic_bound()));
    }
}
