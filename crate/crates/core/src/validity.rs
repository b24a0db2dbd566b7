//! Validity checking of labellings: duplicate labels, unintended sums and
//! unwitnessed edges.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;

use crate::graph::Vertex;
use crate::labelling::SumLabelling;
use crate::par::Parallelism;
use crate::sums;

/// A vertex of the labelled graph: either a base-graph vertex or the
/// `index`-th added isolate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Vertex(Vertex),
    Isolate(usize),
}

impl Entry {
    pub fn is_isolate(self) -> bool {
        matches!(self, Entry::Isolate(_))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Vertex(v) => write!(f, "v{v}"),
            Entry::Isolate(i) => write!(f, "iso{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two vertices share a label.
    Pair { first: Entry, second: Entry, label: BigUint },
    /// `u + w = y` although `u` and `w` are not meant to be adjacent.
    /// Labels satisfy `u.1 <= w.1 < y.1`.
    Triple { u: (Entry, BigUint), w: (Entry, BigUint), y: (Entry, BigUint) },
    /// An edge of the base graph whose label sum is not present.
    MissingWitness { u: Vertex, w: Vertex, sum: BigUint },
}

impl Violation {
    /// Labels of a triple violation as `(u, w, y)`.
    pub fn triple_labels(&self) -> Option<(&BigUint, &BigUint, &BigUint)> {
        match self {
            Violation::Triple { u, w, y } => Some((&u.1, &w.1, &y.1)),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair { first, second, label } => {
                write!(f, "pair {first} and {second} share label {label}")
            }
            Violation::Triple { u, w, y } => write!(
                f,
                "triple ({}, {}, {}): {} + {} = {} but {} and {} are not adjacent",
                u.1, w.1, y.1, u.0, w.0, y.0, u.0, w.0
            ),
            Violation::MissingWitness { u, w, sum } => {
                write!(f, "edge {{v{u}, v{w}}} has no witness labelled {sum}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks that the labels realise exactly the base graph plus isolated
/// added vertices. With `during_construction`, equal labels on two isolates
/// are tolerated.
pub fn check_valid(labelling: &SumLabelling, during_construction: bool) -> ValidityReport {
    check_valid_with(labelling, during_construction, Parallelism::default())
}

pub fn check_valid_with(labelling: &SumLabelling, during_construction: bool, mode: Parallelism) -> ValidityReport {
    let violations = scan(labelling, during_construction, mode);
    ValidityReport { ok: violations.is_empty(), violations }
}

/// Every violation of the finalised labelling; empty iff `check_valid` is ok.
pub fn find_violations(labelling: &SumLabelling) -> Vec<Violation> {
    scan(labelling, false, Parallelism::default())
}

fn scan(labelling: &SumLabelling, during_construction: bool, mode: Parallelism) -> Vec<Violation> {
    let graph = labelling.base_graph();
    let mut groups: BTreeMap<&BigUint, Vec<Entry>> = BTreeMap::new();
    for (&v, l) in labelling.vertex_labels() {
        groups.entry(l).or_default().push(Entry::Vertex(v));
    }
    for (i, l) in labelling.isolate_labels().iter().enumerate() {
        groups.entry(l).or_default().push(Entry::Isolate(i));
    }
    let values: Vec<BigUint> = groups.keys().map(|&l| l.clone()).collect();
    let members: Vec<&Vec<Entry>> = groups.values().collect();

    let mut violations = Vec::new();
    for (value, group) in values.iter().zip(&members) {
        for (a, &first) in group.iter().enumerate() {
            for &second in &group[a + 1..] {
                if during_construction && first.is_isolate() && second.is_isolate() {
                    continue;
                }
                violations.push(Violation::Pair { first, second, label: value.clone() });
            }
        }
    }

    let intended = |a: Entry, b: Entry| match (a, b) {
        (Entry::Vertex(u), Entry::Vertex(w)) => graph.has_edge(u, w),
        _ => false,
    };
    let mut witnessed: HashSet<(Vertex, Vertex)> = HashSet::new();
    for (i, j, k) in sums::sum_triples_big(&values, mode) {
        let y = (members[k][0], values[k].clone());
        for (ai, &a) in members[i].iter().enumerate() {
            let partners: &[Entry] = if i == j { &members[j][ai + 1..] } else { members[j] };
            for &b in partners {
                if intended(a, b) {
                    if let (Entry::Vertex(u), Entry::Vertex(w)) = (a, b) {
                        witnessed.insert((u.min(w), u.max(w)));
                    }
                } else {
                    violations.push(Violation::Triple {
                        u: (a, values[i].clone()),
                        w: (b, values[j].clone()),
                        y: y.clone(),
                    });
                }
            }
        }
    }

    for (u, w) in graph.edges() {
        if !witnessed.contains(&(u, w)) {
            let sum = labelling.label(u).expect("endpoint labelled") + labelling.label(w).expect("endpoint labelled");
            violations.push(Violation::MissingWitness { u, w, sum });
        }
    }
    violations
}

/// True iff every edge's label sum is the label of an added isolate.
pub fn is_exclusive(labelling: &SumLabelling) -> bool {
    let isolates: BTreeSet<&BigUint> = labelling.isolate_labels().iter().collect();
    labelling.base_graph().edges().all(|(u, w)| match (labelling.label(u), labelling.label(w)) {
        (Some(a), Some(b)) => isolates.contains(&(a + b)),
        _ => false,
    })
}
