//! Unweighted single-source shortest paths.
//!
//! Every edge costs one hop. The run starts at vertex 0 and the wavefront
//! advances one superstep per hop; vertices the wave never reaches keep the
//! sentinel and print as unreachable.

use supersteps::algorithms::{self, ShortestPaths};
use supersteps::{EngineConfig, Graph};

fn main() {
    let edges = [
        (0u32, 1u32),
        (0, 2),
        (1, 3),
        (2, 3),
        (3, 4),
        (5, 0), // 5 can reach the rest, but nothing reaches 5
    ];
    let graph = Graph::from_edges(6, &edges).unwrap();

    let (distances, report) =
        algorithms::shortest_paths(&graph, 0, &EngineConfig::default()).unwrap();

    println!("hops from vertex 0 ({} supersteps):", report.supersteps);
    for (v, &d) in distances.iter().enumerate() {
        if d == ShortestPaths::UNREACHABLE {
            println!("  vertex {v}: unreachable");
        } else {
            println!("  vertex {v}: {d}");
        }
    }
}
