//! Writing a vertex program of your own.
//!
//! The program below floods the largest vertex value through the graph:
//! every vertex starts with a number, and after the run each vertex holds
//! the maximum over everything that can reach it. It shows the full trait
//! surface:
//!
//! * `compute` runs once per superstep for each selected vertex; superstep 0
//!   always includes everyone.
//! * Messages sent in superstep `s` arrive in superstep `s + 1`, already
//!   folded into at most one value per recipient by `combine`.
//! * A vertex that votes to halt stays asleep until a message wakes it.
//!
//! Because every call ends in `vote_to_halt`, the program halts
//! systematically and is safe to run under bypass selection, which skips
//! the per-vertex status scan entirely.

use supersteps::{run, Context, Delivery, EngineConfig, Graph, Selection, VertexProgram};

struct SpreadMaximum;

impl VertexProgram for SpreadMaximum {
    type Value = u64;
    type Message = u64;

    fn compute(&self, ctx: &mut Context<'_, Self>) {
        let best = match ctx.superstep() {
            // First superstep: nobody has mail yet, announce our own value.
            0 => Some(*ctx.value()),
            _ => match ctx.next_message() {
                Some(candidate) if candidate > *ctx.value() => {
                    *ctx.value_mut() = candidate;
                    Some(candidate)
                }
                // Mail arrived but nothing improved: stay quiet.
                _ => None,
            },
        };
        if let Some(message) = best {
            ctx.broadcast(message);
        }
        ctx.vote_to_halt();
    }

    fn combine(&self, held: &mut u64, incoming: u64) {
        *held = (*held).max(incoming);
    }
}

fn main() {
    // Two chains meeting at vertex 3; vertex 6 sits apart.
    let edges = [(0u32, 1u32), (1, 3), (2, 3), (3, 4), (4, 5), (6, 6)];
    let graph = Graph::from_edges(7, &edges).unwrap();
    let seeds = [17u64, 3, 99, 1, 8, 2, 41];

    let config = EngineConfig {
        delivery: Delivery::Push,
        selection: Selection::Bypass,
        ..EngineConfig::default()
    };
    let (values, report) = run(&graph, &SpreadMaximum, |v| seeds[v as usize], &config).unwrap();

    println!("seeds:  {seeds:?}");
    println!("result: {values:?}");
    println!(
        "{} supersteps, {} vertices computed, {} status checks (bypass)",
        report.supersteps, report.totals.vertices_computed, report.totals.status_checks
    );
}
