mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use sumlabel::codec::{
    self, gamma_bit_length, incidence_bit_length, parse_gamma, parse_incidence, serialize_gamma, serialize_incidence,
    Container, SumEncoding,
};
use sumlabel::metrics::{compressed_incidence_cost, storage_bits};
use sumlabel::oracle::random_graph;
use sumlabel::{
    ceil_log2_u64, parse_edge_list, serialize_edge_list, sum_label, Graph, SumLabelling, Vertex, VertexOrdering,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(Vertex, Vertex)> =
            (1..=n as Vertex).flat_map(|u| (u + 1..=n as Vertex).map(move |w| (u, w))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_encoding() -> impl Strategy<Value = SumEncoding> {
    let big = proptest::collection::vec(any::<u8>(), 1..24).prop_map(|b| BigUint::from_bytes_be(&b) + 1u8);
    proptest::collection::btree_set(big, 1..40).prop_map(|s| SumEncoding::new(s.into_iter().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn gamma_round_trip(enc in arb_encoding()) {
        let bytes = serialize_gamma(&enc).unwrap();
        prop_assert_eq!(bytes.len(), gamma_bit_length(&enc).div_ceil(8));
        prop_assert_eq!(parse_gamma(&bytes).unwrap(), enc.clone());
        let boxed = Container::Gamma(enc).to_bytes().unwrap();
        prop_assert_eq!(&boxed[1..], &bytes[..]);
    }

    #[test]
    fn incidence_round_trip(g in arb_graph(16).prop_filter("needs an edge", |g| g.m() > 0 && g.n() > 1)) {
        let bytes = serialize_incidence(&g).unwrap();
        let bits = incidence_bit_length(g.n(), g.m());
        prop_assert_eq!(bytes.len() as u64, bits.div_ceil(8));
        let n = g.n() as u64;
        prop_assert_eq!(bits, compressed_incidence_cost(n, g.m() as u64) - n * ceil_log2_u64(n));
        prop_assert_eq!(parse_incidence(&bytes).unwrap(), g.clone());
        prop_assert_eq!(Container::from_bytes(&Container::Incidence(g.clone()).to_bytes().unwrap()).unwrap(), Container::Incidence(g));
    }

    #[test]
    fn labelling_files_round_trip(seed in 0u64..1000, n in 2usize..10) {
        let g = random_graph(n, n.min(n * (n - 1) / 2), seed, 1).unwrap();
        let l = sum_label(&g, &VertexOrdering::identity(n), false).unwrap();
        let text = SumLabelling::parse_text(&l.to_text()).unwrap();
        let json = SumLabelling::from_json(&l.to_json()).unwrap();
        for back in [text, json] {
            prop_assert_eq!(back.vertex_labels(), l.vertex_labels());
            prop_assert_eq!(back.isolate_labels(), l.isolate_labels());
            prop_assert_eq!(back.base_graph(), l.base_graph());
        }
    }

    #[test]
    fn ordering_round_trip(perm in Just((1..=9u32).collect::<Vec<_>>()).prop_shuffle()) {
        let o = VertexOrdering::new(perm).unwrap();
        prop_assert_eq!(VertexOrdering::parse(&o.to_text()).unwrap(), o);
    }

    #[test]
    fn corrupted_gamma_never_panics(enc in arb_encoding(), cut in 0usize..64, flip in any::<u8>()) {
        let mut bytes = serialize_gamma(&enc).unwrap();
        let at = cut % bytes.len();
        bytes[at] ^= flip;
        let _ = parse_gamma(&bytes);
        bytes.truncate(at);
        let _ = parse_gamma(&bytes);
    }
}

#[test]
fn gamma_size_is_within_twice_label_storage() {
    for seed in 0..100 {
        let n = 4 + seed as usize % 30;
        let g = random_graph(n, (2 * n).min(n * (n - 1) / 2), seed, 1).unwrap();
        let l = sum_label(&g, &VertexOrdering::identity(n), false).unwrap();
        let enc = codec::encode(&l).unwrap();
        let total = enc.len() as u64;
        let bytes = serialize_gamma(&enc).unwrap().len() as u64 * 8;
        // Header bytes, gamma(count) and padding are the O(n) part.
        let slack = total + 16 + 2 * 64 + 8;
        assert!(bytes <= 2 * storage_bits(enc.labels()) + slack);
    }
}

#[test]
fn decoding_recovers_labeller_output() {
    for seed in 0..100 {
        let n = 2 + seed as usize % 11;
        let g = random_graph(n, n.max(n * (n - 1) / 4).min(n * (n - 1) / 2), seed, 1).unwrap();
        let l = sum_label(&g, &VertexOrdering::identity(n), false).unwrap();
        assert!(common::round_trips(&l));
        let enc = codec::encode(&l).unwrap();
        let seq = codec::decode_with(&enc, sumlabel::Parallelism::Sequential);
        assert_eq!(seq, codec::decode(&enc));
        let isolates: BTreeSet<usize> = seq.isolates.iter().copied().collect();
        assert_eq!(isolates.len(), l.isolate_count());
    }
}
