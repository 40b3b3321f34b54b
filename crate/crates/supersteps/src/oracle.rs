//! Sequential reference implementations used to check the engine's results.
//!
//! These are deliberately plain single-threaded textbook algorithms with no
//! shared code or state with the superstep runtime, so agreement between the
//! two is meaningful.

use crate::graph::{Graph, VertexId};

/// Distance value for vertices a search never reaches.
pub const UNREACHABLE: u64 = u64::MAX;

/// Power iteration with damping 0.85: every vertex starts at `1/V` and each
/// of `iterations` rounds replaces `r(v)` with
/// `0.15/V + 0.85 * sum over in-neighbours u with out-degree > 0 of r(u)/outdeg(u)`.
/// In-neighbours are accumulated in ascending id order, duplicates included.
/// Vertices without outgoing edges contribute nothing, so total mass may
/// shrink over rounds.
pub fn pagerank(graph: &Graph, iterations: usize) -> Vec<f64> {
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut ranks = vec![1.0 / n as f64; n];
    let base = 0.15 / n as f64;
    for _ in 0..iterations {
        let mut next = vec![0.0f64; n];
        for v in 0..n as VertexId {
            let mut sum = 0.0;
            for &u in graph.in_neighbors(v) {
                let degree = graph.out_degree(u);
                if degree > 0 {
                    sum += ranks[u as usize] / degree as f64;
                }
            }
            next[v as usize] = base + 0.85 * sum;
        }
        ranks = next;
    }
    ranks
}

/// Component labels where every vertex gets the smallest dense id in its
/// component. Edges are treated as connections regardless of direction, so
/// this matches min-label propagation only on graphs whose edge set is
/// symmetric (undirected input).
pub fn connected_components(graph: &Graph) -> Vec<VertexId> {
    let n = graph.vertex_count();
    let mut parent: Vec<VertexId> = (0..n as VertexId).collect();

    fn find(parent: &mut [VertexId], mut v: VertexId) -> VertexId {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }

    for v in 0..n as VertexId {
        for &w in graph.out_neighbors(v) {
            let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
            if rv != rw {
                // Root at the smaller id so the final sweep is a plain find.
                if rv < rw {
                    parent[rw as usize] = rv;
                } else {
                    parent[rv as usize] = rw;
                }
            }
        }
    }
    (0..n as VertexId).map(|v| find(&mut parent, v)).collect()
}

/// Hop distances from `source` over outgoing edges via breadth-first search.
/// Unreached vertices get [`UNREACHABLE`].
///
/// Panics if `source` is not a valid dense id.
pub fn shortest_paths(graph: &Graph, source: VertexId) -> Vec<u64> {
    let n = graph.vertex_count();
    assert!(
        (source as usize) < n,
        "source {source} out of range for {n} vertices"
    );
    let mut dist = vec![UNREACHABLE; n];
    dist[source as usize] = 0;
    let mut frontier = vec![source];
    let mut hop = 0u64;
    while !frontier.is_empty() {
        hop += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in graph.out_neighbors(v) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = hop;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}
