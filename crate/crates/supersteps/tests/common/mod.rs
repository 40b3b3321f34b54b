//! Shared helpers for the integration suites: seeded graph families and the
//! engine mode grid.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use supersteps::{Delivery, EngineConfig, Graph, Selection, VertexId};

/// Random directed graph: up to `max_vertices`, edge count drawn from a
/// sparse/medium/dense mix capped at `max_edges`. Isolated vertices and
/// vertices without outgoing edges occur naturally.
pub fn random_directed(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Graph {
    let v = rng.gen_range(1..=max_vertices);
    let e = match rng.gen_range(0..3u8) {
        0 => rng.gen_range(0..=(2 * v).min(max_edges)),
        1 => rng.gen_range(0..=(8 * v).min(max_edges)),
        _ => rng.gen_range(0..=max_edges),
    };
    let edges: Vec<(VertexId, VertexId)> = (0..e)
        .map(|_| {
            (
                rng.gen_range(0..v) as VertexId,
                rng.gen_range(0..v) as VertexId,
            )
        })
        .collect();
    Graph::from_edges(v, &edges).unwrap()
}

/// Random undirected graph with the same density mix; every pair is stored
/// in both directions, so the stored edge count is twice the pair count.
pub fn random_undirected(rng: &mut StdRng, max_vertices: usize, max_pairs: usize) -> Graph {
    let v = rng.gen_range(1..=max_vertices);
    let p = match rng.gen_range(0..3u8) {
        0 => rng.gen_range(0..=(2 * v).min(max_pairs)),
        1 => rng.gen_range(0..=(8 * v).min(max_pairs)),
        _ => rng.gen_range(0..=max_pairs),
    };
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(p * 2);
    for _ in 0..p {
        let a = rng.gen_range(0..v) as VertexId;
        let b = rng.gen_range(0..v) as VertexId;
        edges.push((a, b));
        edges.push((b, a));
    }
    Graph::from_edges(v, &edges).unwrap()
}

/// A path 0 -> 1 -> ... -> n-1, optionally with the reverse edges too.
pub fn chain(n: usize, both_ways: bool) -> Graph {
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for i in 0..n.saturating_sub(1) as VertexId {
        edges.push((i, i + 1));
        if both_ways {
            edges.push((i + 1, i));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Star with centre 0 and `leaves` leaves; `inward` points leaf -> centre.
pub fn star(leaves: usize, inward: bool, both_ways: bool) -> Graph {
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for leaf in 1..=leaves as VertexId {
        if inward || both_ways {
            edges.push((leaf, 0));
        }
        if !inward || both_ways {
            edges.push((0, leaf));
        }
    }
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

/// Every delivery/selection pairing at the given worker counts.
pub fn mode_grid(workers: &[usize]) -> Vec<EngineConfig> {
    let mut out = Vec::new();
    for delivery in [Delivery::Push, Delivery::Pull] {
        for selection in [Selection::Naive, Selection::Bypass] {
            for &w in workers {
                out.push(EngineConfig {
                    delivery,
                    selection,
                    workers: w,
                    ..EngineConfig::default()
                });
            }
        }
    }
    out
}

/// The grid without bypass, for programs that do not halt systematically.
pub fn naive_grid(workers: &[usize]) -> Vec<EngineConfig> {
    mode_grid(workers)
        .into_iter()
        .filter(|c| c.selection == Selection::Naive)
        .collect()
}
