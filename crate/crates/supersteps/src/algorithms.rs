//! Stock vertex programs and convenience runners for them.

use crate::engine::{self, Context, EngineConfig, RunError, RunReport, VertexProgram};
use crate::graph::{Graph, VertexId};

/// PageRank with damping 0.85 and a fixed budget of update rounds.
///
/// Superstep 0 sets every value to `1/V` and shares it. Each following
/// superstep up to the budget replaces the value with
/// `0.15/V + 0.85 * (sum of incoming)` and shares `value/out_degree` along
/// outgoing edges; a vertex with no outgoing edges still updates but shares
/// nothing, so rank mass can drain out of the graph. At superstep
/// `iterations` everyone votes to halt, which makes a budget of `k` cost
/// `k + 1` supersteps.
///
/// Vertices stay active between halts, so this program is incompatible with
/// bypass selection, which only ever runs message recipients.
pub struct PageRank {
    pub iterations: usize,
}

impl VertexProgram for PageRank {
    type Value = f64;
    type Message = f64;

    fn compute(&self, ctx: &mut Context<'_, Self>) {
        let n = ctx.vertex_count() as f64;
        if ctx.superstep() == 0 {
            *ctx.value_mut() = 1.0 / n;
        } else {
            let sum = ctx.next_message().unwrap_or(0.0);
            *ctx.value_mut() = 0.15 / n + 0.85 * sum;
        }
        if ctx.superstep() < self.iterations {
            let degree = ctx.out_degree();
            if degree > 0 {
                let share = *ctx.value() / degree as f64;
                ctx.broadcast(share);
            }
        } else {
            ctx.vote_to_halt();
        }
    }

    fn combine(&self, held: &mut f64, incoming: f64) {
        *held += incoming;
    }
}

/// Minimum-id label propagation: a vertex adopts the smallest id it has
/// heard of and forwards only improvements. On an undirected (symmetric)
/// edge set the labels converge to the minimum id of each connected
/// component. Halts on every invocation.
pub struct ConnectedComponents;

impl VertexProgram for ConnectedComponents {
    type Value = VertexId;
    type Message = VertexId;

    fn compute(&self, ctx: &mut Context<'_, Self>) {
        if ctx.superstep() == 0 {
            let id = ctx.vertex();
            *ctx.value_mut() = id;
            ctx.broadcast(id);
        } else if let Some(candidate) = ctx.next_message() {
            if candidate < *ctx.value() {
                *ctx.value_mut() = candidate;
                ctx.broadcast(candidate);
            }
        }
        ctx.vote_to_halt();
    }

    fn combine(&self, held: &mut VertexId, incoming: VertexId) {
        if *held > incoming {
            *held = incoming;
        }
    }
}

/// Unweighted single-source shortest paths: hop counts radiate outward from
/// the source and only improvements propagate. Halts on every invocation.
pub struct ShortestPaths {
    pub source: VertexId,
}

impl ShortestPaths {
    /// Distance of vertices the search never reaches.
    pub const UNREACHABLE: u64 = u64::MAX;
}

impl VertexProgram for ShortestPaths {
    type Value = u64;
    type Message = u64;

    fn compute(&self, ctx: &mut Context<'_, Self>) {
        if ctx.superstep() == 0 {
            if ctx.vertex() == self.source {
                *ctx.value_mut() = 0;
                ctx.broadcast(1);
            }
        } else if let Some(candidate) = ctx.next_message() {
            if candidate < *ctx.value() {
                *ctx.value_mut() = candidate;
                ctx.broadcast(candidate + 1);
            }
        }
        ctx.vote_to_halt();
    }

    fn combine(&self, held: &mut u64, incoming: u64) {
        if *held > incoming {
            *held = incoming;
        }
    }
}

/// Runs [`PageRank`] for `iterations` update rounds.
///
/// The program needs exactly `iterations + 1` supersteps, which can exceed
/// the engine's default guard of `2 * vertex_count + 1` on small graphs; if
/// the config leaves `max_supersteps` unset, the guard is raised to cover
/// the budget.
pub fn pagerank(
    graph: &Graph,
    iterations: usize,
    config: &EngineConfig,
) -> Result<(Vec<f64>, RunReport), RunError> {
    let mut config = config.clone();
    if config.max_supersteps.is_none() {
        let default_guard = 2 * graph.vertex_count() + 1;
        config.max_supersteps = Some(default_guard.max(iterations + 1));
    }
    engine::run(graph, &PageRank { iterations }, |_| 0.0, &config)
}

/// Runs [`ConnectedComponents`]; labels are dense ids.
pub fn connected_components(
    graph: &Graph,
    config: &EngineConfig,
) -> Result<(Vec<VertexId>, RunReport), RunError> {
    engine::run(graph, &ConnectedComponents, |v| v, config)
}

/// Runs [`ShortestPaths`] from `source` (a dense id).
///
/// Panics if `source` is out of range.
pub fn shortest_paths(
    graph: &Graph,
    source: VertexId,
    config: &EngineConfig,
) -> Result<(Vec<u64>, RunReport), RunError> {
    assert!(
        (source as usize) < graph.vertex_count(),
        "source {source} out of range for {} vertices",
        graph.vertex_count()
    );
    engine::run(
        graph,
        &ShortestPaths { source },
        |_| ShortestPaths::UNREACHABLE,
        config,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Delivery, Selection};
    use crate::graph::Directedness;
    use crate::oracle;

    fn configs() -> Vec<EngineConfig> {
        let mut out = Vec::new();
        for delivery in [Delivery::Push, Delivery::Pull] {
            for workers in [1, 3] {
                out.push(EngineConfig {
                    delivery,
                    workers,
                    ..EngineConfig::default()
                });
            }
        }
        out
    }

    fn undirected(pairs: &[(u64, u64)]) -> Graph {
        Graph::from_original_edges(pairs, Directedness::Undirected).unwrap()
    }

    #[test]
    fn pagerank_single_edge_one_round() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        for config in configs() {
            let (values, report) = pagerank(&g, 1, &config).unwrap();
            assert!((values[0] - 0.075).abs() < 1e-15);
            assert!((values[1] - 0.5).abs() < 1e-15);
            assert_eq!(report.supersteps, 2);
        }
    }

    #[test]
    fn pagerank_runs_budget_plus_one_supersteps() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        for k in [0, 1, 3, 10] {
            let (values, report) = pagerank(&g, k, &EngineConfig::default()).unwrap();
            assert_eq!(report.supersteps, k + 1);
            for v in values {
                assert!((v - 1.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pagerank_matches_oracle_including_dangling_mass_leak() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        for k in [0, 1, 2, 5] {
            let expected = oracle::pagerank(&g, k);
            for config in configs() {
                let (values, _) = pagerank(&g, k, &config).unwrap();
                for (got, want) in values.iter().zip(&expected) {
                    assert!((got - want).abs() < 1e-12, "k={k} got {got} want {want}");
                }
            }
        }
        let (values, _) = pagerank(&g, 4, &EngineConfig::default()).unwrap();
        assert!(
            values.iter().sum::<f64>() < 1.0 - 1e-3,
            "vertex 4 leaks mass"
        );
    }

    #[test]
    fn components_of_path_plus_pair() {
        let g = undirected(&[(0, 1), (1, 2), (3, 4)]);
        for config in configs() {
            let (labels, _) = connected_components(&g, &config).unwrap();
            assert_eq!(labels, vec![0, 0, 0, 3, 3]);
        }
    }

    #[test]
    fn components_halt_on_every_invocation() {
        let g = undirected(&[(0, 1), (1, 2), (2, 3), (4, 5)]);
        for selection in [Selection::Naive, Selection::Bypass] {
            let config = EngineConfig {
                selection,
                ..EngineConfig::default()
            };
            let (labels, report) = connected_components(&g, &config).unwrap();
            assert_eq!(labels, oracle::connected_components(&g));
            assert_eq!(report.totals.halt_votes, report.totals.vertices_computed);
        }
    }

    #[test]
    fn component_count_takes_diameter_plus_two_supersteps() {
        // Labels settle after diameter rounds, then one quiet round to
        // confirm: a 6-chain (diameter 5) finishes in 7.
        let g = undirected(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let (_, report) = connected_components(&g, &EngineConfig::default()).unwrap();
        assert_eq!(report.supersteps, 7);
    }

    #[test]
    fn shortest_paths_on_chains() {
        let directed = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        for config in configs() {
            let (dist, report) = shortest_paths(&directed, 0, &config).unwrap();
            assert_eq!(dist, vec![0, 1, 2, 3]);
            assert_eq!(report.supersteps, 4);
        }
        // An undirected chain bounces the last improvement back to its
        // sender, adding one superstep over the directed case.
        let undirected_chain = undirected(&[(0, 1), (1, 2), (2, 3)]);
        let (dist, report) =
            shortest_paths(&undirected_chain, 0, &EngineConfig::default()).unwrap();
        assert_eq!(dist, vec![0, 1, 2, 3]);
        assert_eq!(report.supersteps, 5);
    }

    #[test]
    fn unreached_vertices_keep_unreachable() {
        let g = Graph::from_edges(4, &[(0, 1), (3, 2)]).unwrap();
        let (dist, _) = shortest_paths(&g, 0, &EngineConfig::default()).unwrap();
        assert_eq!(
            dist,
            vec![0, 1, ShortestPaths::UNREACHABLE, ShortestPaths::UNREACHABLE]
        );
    }

    #[test]
    fn shortest_paths_agree_with_oracle_in_every_mode() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 0), (5, 6)])
            .unwrap();
        for source in [0, 3, 5] {
            let expected = oracle::shortest_paths(&g, source);
            for selection in [Selection::Naive, Selection::Bypass] {
                for mut config in configs() {
                    config.selection = selection;
                    let (dist, _) = shortest_paths(&g, source, &config).unwrap();
                    assert_eq!(dist, expected, "source {source} config {config:?}");
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn shortest_paths_rejects_bad_source() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let _ = shortest_paths(&g, 9, &EngineConfig::default());
    }
}
