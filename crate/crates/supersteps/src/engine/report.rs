//! Instrumentation produced by a run.

use crate::graph::VertexId;

/// Work counters. Every field is a plain tally; none affects execution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Vertices whose compute function ran.
    pub vertices_computed: u64,
    /// Deliveries: each targeted send, each push broadcast target, and each
    /// pull outbox write.
    pub messages_sent: u64,
    /// Times an arriving or gathered message was folded into an existing one.
    pub combines_applied: u64,
    /// Vertex status evaluations by naive selection in supersteps after the
    /// first. Bypass selection performs none.
    pub status_checks: u64,
    /// Per-vertex exclusion flag acquisitions (push mode only).
    pub exclusion_acquisitions: u64,
    /// In-neighbour outbox slots inspected while gathering (pull mode only).
    pub outbox_scans: u64,
    /// Halt votes still standing when the voting vertex finished computing.
    pub halt_votes: u64,
}

impl Counters {
    pub(crate) fn add(&mut self, other: &Counters) {
        self.vertices_computed += other.vertices_computed;
        self.messages_sent += other.messages_sent;
        self.combines_applied += other.combines_applied;
        self.status_checks += other.status_checks;
        self.exclusion_acquisitions += other.exclusion_acquisitions;
        self.outbox_scans += other.outbox_scans;
        self.halt_votes += other.halt_votes;
    }
}

/// What a run did and what it cost.
#[derive(Clone, Debug)]
pub struct RunReport {
    /// Supersteps in which at least one vertex computed. A final scan that
    /// discovers an empty run set is not counted, though its costs land in
    /// `totals`.
    pub supersteps: usize,
    /// Wall-clock seconds inside the engine: state allocation through the
    /// last superstep boundary. Graph loading and output writing happen
    /// outside the engine and are never included.
    pub processing_seconds: f64,
    /// Peak resident set size of the process when the run finished, in
    /// bytes; 0 when the platform cannot report it.
    pub peak_rss_bytes: u64,
    /// Message slots allocated: two mailbox buffers of one slot per vertex,
    /// plus two outbox buffers per vertex in pull mode.
    pub message_slots: u64,
    pub totals: Counters,
    /// One entry per counted superstep, in order.
    pub per_superstep: Vec<Counters>,
    /// Per counted superstep, the sorted ids of the vertices that computed.
    /// Present when `record_run_sets` was set.
    pub run_sets: Option<Vec<Vec<VertexId>>>,
    /// Per counted superstep, the sorted ids of vertices whose empty slot
    /// received its first message (push) or that a broadcast newly scheduled
    /// (pull). Present when `record_run_sets` was set.
    pub message_recipients: Option<Vec<Vec<VertexId>>>,
}
