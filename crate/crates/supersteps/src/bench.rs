//! The benchmark harness behind the `graphbench` binary.
//!
//! Loads an edge list, runs one algorithm under a chosen engine
//! configuration, optionally dumps per-vertex results, and reports costs.
//! Only the superstep loop is timed; graph loading and result writing are
//! excluded from `processing_seconds` but included in the peak memory
//! figure, which is read after the dump.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use crate::algorithms;
use crate::engine::{Delivery, EngineConfig, RunError, RunReport, Selection};
use crate::graph::{Directedness, Graph, GraphError, VertexId};
use crate::rss;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Pagerank,
    Cc,
    Sssp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeliveryArg {
    Push,
    Pull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SelectionArg {
    Naive,
    Bypass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// Human-oriented lines.
    Text,
    /// `key=value` lines, fixed key set.
    Machine,
}

/// Command line of the harness.
#[derive(Parser, Clone, Debug)]
#[command(
    name = "graphbench",
    about = "Run a vertex-centric algorithm over an edge-list graph and report \
             processing time, peak memory, and work counters"
)]
pub struct BenchConfig {
    /// Edge-list file: two whitespace-separated integer ids per line, lines
    /// starting with '#' skipped.
    #[arg(long, value_name = "PATH")]
    pub graph: PathBuf,

    /// Treat lines as directed edges instead of undirected pairs.
    #[arg(long)]
    pub directed: bool,

    /// Algorithm to run.
    #[arg(long, value_enum, value_name = "ALGO")]
    pub algorithm: AlgorithmArg,

    /// Message delivery mode.
    #[arg(long, value_enum, default_value_t = DeliveryArg::Push, value_name = "MODE")]
    pub delivery: DeliveryArg,

    /// Vertex selection mode. Bypass runs only message recipients, so it
    /// requires an algorithm that halts on every invocation and cannot be
    /// combined with pagerank.
    #[arg(long, value_enum, default_value_t = SelectionArg::Naive, value_name = "MODE")]
    pub selection: SelectionArg,

    /// Worker threads.
    #[arg(long, default_value_t = 1, value_name = "N")]
    pub workers: usize,

    /// PageRank update rounds.
    #[arg(long, default_value_t = 10, value_name = "K")]
    pub iterations: usize,

    /// Shortest-path source as an original id; defaults to the first vertex
    /// in the file.
    #[arg(long, value_name = "ID")]
    pub source: Option<u64>,

    /// Write per-vertex results here, one "original_id<TAB>value" line per
    /// vertex in ascending original id order.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text, value_name = "FORMAT")]
    pub report: ReportFormat,
}

#[derive(Debug)]
pub enum BenchError {
    /// Bad flag combination or a value no graph could make valid.
    Usage(String),
    Load(GraphError),
    Engine(RunError),
    Output {
        path: PathBuf,
        source: io::Error,
    },
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Usage(reason) => f.write_str(reason),
            BenchError::Load(e) => write!(f, "loading graph: {e}"),
            BenchError::Engine(e) => write!(f, "engine: {e}"),
            BenchError::Output { path, source } => {
                write!(f, "writing {}: {}", path.display(), source)
            }
        }
    }
}

impl std::error::Error for BenchError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            BenchError::Usage(_) => None,
            BenchError::Load(e) => Some(e),
            BenchError::Engine(e) => Some(e),
            BenchError::Output { source, .. } => Some(source),
        }
    }
}

/// Process exit code for an error: 1 usage, 2 load, 3 engine, 4 output.
pub fn exit_code(error: &BenchError) -> i32 {
    match error {
        BenchError::Usage(_) => 1,
        BenchError::Load(_) => 2,
        BenchError::Engine(_) => 3,
        BenchError::Output { .. } => 4,
    }
}

impl BenchConfig {
    fn engine_config(&self) -> Result<EngineConfig, BenchError> {
        if self.workers == 0 {
            return Err(BenchError::Usage("--workers must be at least 1".into()));
        }
        if self.algorithm == AlgorithmArg::Pagerank && self.selection == SelectionArg::Bypass {
            return Err(BenchError::Usage(
                "pagerank keeps vertices active without messaging them, so bypass \
                 selection would skip work; use --selection naive"
                    .into(),
            ));
        }
        Ok(EngineConfig {
            delivery: match self.delivery {
                DeliveryArg::Push => Delivery::Push,
                DeliveryArg::Pull => Delivery::Pull,
            },
            selection: match self.selection {
                SelectionArg::Naive => Selection::Naive,
                SelectionArg::Bypass => Selection::Bypass,
            },
            workers: self.workers,
            max_supersteps: None,
            record_run_sets: false,
        })
    }
}

/// Runs the whole benchmark described by `config` and returns its report.
pub fn run_benchmark(config: &BenchConfig) -> Result<RunReport, BenchError> {
    let engine_config = config.engine_config()?;
    let directedness = if config.directed {
        Directedness::Directed
    } else {
        Directedness::Undirected
    };
    let graph = Graph::load_edge_list(&config.graph, directedness).map_err(BenchError::Load)?;

    let mut report = match config.algorithm {
        AlgorithmArg::Pagerank => {
            let (values, report) = algorithms::pagerank(&graph, config.iterations, &engine_config)
                .map_err(BenchError::Engine)?;
            dump(config, &graph, &values, |rank| format!("{rank:.9e}"))?;
            report
        }
        AlgorithmArg::Cc => {
            let (labels, report) = algorithms::connected_components(&graph, &engine_config)
                .map_err(BenchError::Engine)?;
            // Labels are dense ids; print the representative's original id.
            dump(config, &graph, &labels, |&label| {
                graph.original_id(label).to_string()
            })?;
            report
        }
        AlgorithmArg::Sssp => {
            let source_original = match config.source {
                Some(id) => id,
                None => *graph.original_ids().first().ok_or_else(|| {
                    BenchError::Usage("graph has no vertices to take a source from".into())
                })?,
            };
            let source = graph.dense_id(source_original).ok_or_else(|| {
                BenchError::Usage(format!(
                    "source {source_original} is not a vertex of the graph"
                ))
            })?;
            let (dist, report) = algorithms::shortest_paths(&graph, source, &engine_config)
                .map_err(BenchError::Engine)?;
            dump(config, &graph, &dist, |&d| {
                if d == algorithms::ShortestPaths::UNREACHABLE {
                    "unreachable".to_string()
                } else {
                    d.to_string()
                }
            })?;
            report
        }
    };

    // Peak memory should cover load, processing, and the dump.
    if let Some(peak) = rss::peak_rss_bytes() {
        report.peak_rss_bytes = peak;
    }
    Ok(report)
}

fn dump<T>(
    config: &BenchConfig,
    graph: &Graph,
    values: &[T],
    format_value: impl Fn(&T) -> String,
) -> Result<(), BenchError> {
    let Some(path) = &config.output else {
        return Ok(());
    };
    let write = || -> io::Result<()> {
        let mut order: Vec<VertexId> = (0..graph.vertex_count() as VertexId).collect();
        order.sort_unstable_by_key(|&v| graph.original_id(v));
        let mut out = BufWriter::new(File::create(path)?);
        for v in order {
            writeln!(
                out,
                "{}\t{}",
                graph.original_id(v),
                format_value(&values[v as usize])
            )?;
        }
        out.flush()
    };
    write().map_err(|source| BenchError::Output {
        path: path.clone(),
        source,
    })
}

/// Renders a report in the chosen format, ending with a newline.
pub fn write_report(report: &RunReport, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Machine => {
            let _ = writeln!(out, "processing_seconds={:.6}", report.processing_seconds);
            let _ = writeln!(out, "peak_rss_bytes={}", report.peak_rss_bytes);
            let _ = writeln!(out, "supersteps={}", report.supersteps);
            let _ = writeln!(out, "vertices_computed={}", report.totals.vertices_computed);
            let _ = writeln!(out, "messages_sent={}", report.totals.messages_sent);
            let _ = writeln!(out, "combines_applied={}", report.totals.combines_applied);
            let _ = writeln!(out, "status_checks={}", report.totals.status_checks);
            let _ = writeln!(out, "outbox_scans={}", report.totals.outbox_scans);
        }
        ReportFormat::Text => {
            let _ = writeln!(
                out,
                "processing time      {:.6} s",
                report.processing_seconds
            );
            let _ = writeln!(
                out,
                "peak rss             {:.1} MiB ({} bytes)",
                report.peak_rss_bytes as f64 / (1024.0 * 1024.0),
                report.peak_rss_bytes
            );
            let _ = writeln!(out, "supersteps           {}", report.supersteps);
            let _ = writeln!(
                out,
                "vertices computed    {}",
                report.totals.vertices_computed
            );
            let _ = writeln!(out, "messages sent        {}", report.totals.messages_sent);
            let _ = writeln!(
                out,
                "combines applied     {}",
                report.totals.combines_applied
            );
            let _ = writeln!(out, "status checks        {}", report.totals.status_checks);
            let _ = writeln!(out, "outbox scans         {}", report.totals.outbox_scans);
        }
    }
    out
}

/// Full command-line entry point; returns the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match BenchConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_benchmark(&config) {
        Ok(report) => {
            print!("{}", write_report(&report, config.report));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Counters;

    fn sample_report() -> RunReport {
        RunReport {
            supersteps: 3,
            processing_seconds: 0.25,
            peak_rss_bytes: 2 * 1024 * 1024,
            message_slots: 8,
            totals: Counters {
                vertices_computed: 10,
                messages_sent: 7,
                combines_applied: 2,
                status_checks: 8,
                exclusion_acquisitions: 7,
                outbox_scans: 0,
                halt_votes: 10,
            },
            per_superstep: Vec::new(),
            run_sets: None,
            message_recipients: None,
        }
    }

    #[test]
    fn machine_report_is_exactly_eight_keys() {
        let text = write_report(&sample_report(), ReportFormat::Machine);
        assert_eq!(
            text,
            "processing_seconds=0.250000\n\
             peak_rss_bytes=2097152\n\
             supersteps=3\n\
             vertices_computed=10\n\
             messages_sent=7\n\
             combines_applied=2\n\
             status_checks=8\n\
             outbox_scans=0\n"
        );
    }

    #[test]
    fn text_report_mentions_every_counter() {
        let text = write_report(&sample_report(), ReportFormat::Text);
        for needle in [
            "processing time",
            "peak rss",
            "supersteps           3",
            "vertices computed    10",
            "messages sent        7",
            "combines applied     2",
            "status checks        8",
            "outbox scans         0",
        ] {
            assert!(text.contains(needle), "missing {needle:?} in {text}");
        }
    }

    #[test]
    fn pagerank_with_bypass_is_a_usage_error() {
        let config = BenchConfig::try_parse_from([
            "graphbench",
            "--graph",
            "g.txt",
            "--algorithm",
            "pagerank",
            "--selection",
            "bypass",
        ])
        .unwrap();
        match config.engine_config() {
            Err(e @ BenchError::Usage(_)) => assert_eq!(exit_code(&e), 1),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_match_the_documented_interface() {
        let config =
            BenchConfig::try_parse_from(["graphbench", "--graph", "g.txt", "--algorithm", "cc"])
                .unwrap();
        assert!(!config.directed);
        assert_eq!(config.delivery, DeliveryArg::Push);
        assert_eq!(config.selection, SelectionArg::Naive);
        assert_eq!(config.workers, 1);
        assert_eq!(config.iterations, 10);
        assert_eq!(config.source, None);
        assert_eq!(config.report, ReportFormat::Text);
    }

    #[test]
    fn missing_required_flags_fail_to_parse() {
        assert!(BenchConfig::try_parse_from(["graphbench"]).is_err());
        assert!(BenchConfig::try_parse_from(["graphbench", "--graph", "g.txt"]).is_err());
        assert!(
            BenchConfig::try_parse_from(["graphbench", "--algorithm", "nope", "--graph", "g"])
                .is_err()
        );
    }
}
