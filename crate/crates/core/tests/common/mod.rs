#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use sumlabel::codec::{self, Decoded, SumEncoding};
use sumlabel::{Graph, SumLabelling, Vertex};

/// Every permutation of `items`, in lexicographic order of positions.
pub fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Edges of the decoded graph translated back to base-graph vertex ids;
/// `None` when a decoded edge touches an isolate label.
pub fn decoded_base_edges(l: &SumLabelling, enc: &SumEncoding, d: &Decoded) -> Option<BTreeSet<(Vertex, Vertex)>> {
    let owner = |label: &BigUint| l.vertex_labels().iter().find(|(_, x)| *x == label).map(|(&v, _)| v);
    d.label_edges(enc)
        .map(|(a, b)| {
            let (u, w) = (owner(a)?, owner(b)?);
            Some((u.min(w), u.max(w)))
        })
        .collect()
}

/// Decode of the encoding equals the base graph and every added isolate
/// decodes as degree 0.
pub fn round_trips(l: &SumLabelling) -> bool {
    let enc = codec::encode(l).expect("distinct labels");
    let d = codec::decode(&enc);
    let edges = decoded_base_edges(l, &enc, &d);
    let expected: BTreeSet<_> = l.base_graph().edge_set().clone();
    let isolates_ok = l.isolate_labels().iter().all(|x| d.isolates.contains(&enc.position(x).expect("present")));
    edges.as_ref() == Some(&expected) && isolates_ok
}

pub fn graph(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}
