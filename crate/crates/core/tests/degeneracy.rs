mod common;

use common::permutations;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumlabel::oracle::random_graph;
use sumlabel::{degeneracy_ordering, Graph, Vertex, VertexOrdering};

/// Minimum over all orderings of the largest number of earlier neighbours.
fn brute_force_degeneracy(g: &Graph) -> usize {
    let vertices: Vec<Vertex> = g.vertices().collect();
    permutations(&vertices).into_iter().map(|p| VertexOrdering::new(p).unwrap().max_back_degree(g)).min().unwrap()
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> =
        (1..=n as Vertex).flat_map(|u| (u + 1..=n as Vertex).map(move |w| (u, w))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

fn agrees(g: &Graph) {
    let r = degeneracy_ordering(g);
    assert_eq!(r.d, brute_force_degeneracy(g), "graph {:?}", g.edge_set());
    assert_eq!(r.ordering.max_back_degree(g), r.d);
}

#[test]
fn exhaustive_up_to_five_vertices() {
    for n in 1..=5 {
        all_graphs(n).for_each(|g| agrees(&g));
    }
}

#[test]
fn random_graphs_up_to_seven_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..200 {
        let n = rng.random_range(2..=7);
        let m = rng.random_range(0..=n * (n - 1) / 2);
        agrees(&random_graph(n, m, seed, 0).unwrap());
    }
}

#[test]
fn known_values() {
    let c4 = sumlabel::graph::cycle_graph(4).unwrap();
    assert_eq!(degeneracy_ordering(&c4).d, 2);
    let k4 = sumlabel::graph::complete_graph_of(4).unwrap();
    assert_eq!(degeneracy_ordering(&k4).d, 3);
}
