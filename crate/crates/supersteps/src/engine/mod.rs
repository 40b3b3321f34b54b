//! The superstep engine.
//!
//! [`run`] executes a [`VertexProgram`] over a graph in synchronous
//! supersteps. Within a superstep, selected vertices compute concurrently
//! and see only state from the previous superstep: messages written now
//! become readable after the boundary, when the slot buffers swap roles.
//!
//! Vertex selection per superstep:
//! * superstep 0 selects every vertex;
//! * later supersteps select a vertex if it has not voted to halt or if a
//!   message arrived for it (which also clears its halt vote).
//!
//! `Naive` selection evaluates those conditions by scanning all vertices.
//! `Bypass` skips the scan: workers note each mailbox slot's empty-to-
//! occupied transition as it happens, and the merged list of recipients *is*
//! the next run set. That shortcut is only equivalent for programs that vote
//! to halt on every invocation, leaving messages as the sole reason to run.
//!
//! The engine stops when no vertex qualifies for the next superstep, or
//! fails with [`RunError::SuperstepLimit`] once a configurable guard trips.

mod context;
mod report;
mod state;
mod sync;

pub use context::{Context, ContractViolation, VertexProgram};
pub use report::{Counters, RunReport};

use std::any::Any;
use std::error::Error;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::graph::{Graph, VertexId};
use state::EngineState;
use sync::{CoordCell, SpinBarrier};

/// How messages move between vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delivery {
    /// Senders write into the recipient's slot under a per-vertex exclusion
    /// flag, combining on collision.
    Push,
    /// A vertex publishes one broadcast value in its own outbox; recipients
    /// read their in-neighbours' outboxes without synchronisation.
    Pull,
}

/// How the run set of a superstep is found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Scan every vertex and test its status.
    Naive,
    /// Run exactly the vertices that received mail last superstep. Requires
    /// programs that vote to halt on every invocation.
    Bypass,
}

impl fmt::Display for Delivery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Delivery::Push => "push",
            Delivery::Pull => "pull",
        })
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selection::Naive => "naive",
            Selection::Bypass => "bypass",
        })
    }
}

/// Per-run settings. Everything is chosen at run time; there are no
/// compile-time variants to rebuild.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub delivery: Delivery,
    pub selection: Selection,
    /// Worker thread count; 1 runs inline on the calling thread.
    pub workers: usize,
    /// Fail the run after this many supersteps without quiescing.
    /// `None` means `2 * vertex_count + 1`.
    pub max_supersteps: Option<usize>,
    /// Record per-superstep run sets and message recipients in the report.
    pub record_run_sets: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            delivery: Delivery::Push,
            selection: Selection::Naive,
            workers: 1,
            max_supersteps: None,
            record_run_sets: false,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    InvalidConfig(String),
    /// The guard tripped: `limit` supersteps executed without quiescing.
    /// The report describes the work done up to the abort.
    SuperstepLimit {
        limit: usize,
        report: Box<RunReport>,
    },
    Contract(ContractViolation),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::InvalidConfig(reason) => write!(f, "invalid engine config: {reason}"),
            RunError::SuperstepLimit { limit, .. } => {
                write!(f, "no quiescence after {limit} supersteps")
            }
            RunError::Contract(violation) => write!(f, "vertex program contract: {violation}"),
        }
    }
}

impl Error for RunError {}

/// State visible to all workers for the duration of one run.
struct Shared<'a, P: VertexProgram> {
    graph: &'a Graph,
    program: &'a P,
    state: EngineState<P>,
    delivery: Delivery,
    selection: Selection,
    workers: usize,
    /// Note empty-to-occupied slot transitions (bypass frontier or report
    /// recording).
    track_transitions: bool,
    recording: bool,
    superstep: AtomicUsize,
    /// True while supersteps scan the whole vertex range (superstep 0, and
    /// always under naive selection).
    scan_all: AtomicBool,
    /// Bypass run list for the current superstep.
    run_list: CoordCell<Vec<VertexId>>,
    stop: AtomicBool,
}

/// Accumulators each worker fills during a phase; drained by the
/// coordinator at the boundary.
#[derive(Default)]
struct WorkerLocal {
    counters: Counters,
    /// Computed vertices that did not end the superstep halted.
    active: u64,
    /// Recipients of first messages (push) or newly scheduled vertices
    /// (pull), in send order.
    transitions: Vec<VertexId>,
    /// Vertices this worker computed, when recording.
    computed: Vec<VertexId>,
    violation: Option<ContractViolation>,
    panic: Option<Box<dyn Any + Send>>,
}

enum Flow {
    Continue,
    Done,
}

enum Stop {
    Contract(ContractViolation),
    Limit,
    Panic(Box<dyn Any + Send>),
}

struct Tracker {
    supersteps: usize,
    totals: Counters,
    per_superstep: Vec<Counters>,
    run_sets: Option<Vec<Vec<VertexId>>>,
    recipients: Option<Vec<Vec<VertexId>>>,
}

impl Tracker {
    fn new(recording: bool) -> Self {
        Tracker {
            supersteps: 0,
            totals: Counters::default(),
            per_superstep: Vec::new(),
            run_sets: recording.then(Vec::new),
            recipients: recording.then(Vec::new),
        }
    }

    fn into_report(self, processing_seconds: f64, message_slots: u64) -> RunReport {
        RunReport {
            supersteps: self.supersteps,
            processing_seconds,
            peak_rss_bytes: crate::rss::peak_rss_bytes().unwrap_or(0),
            message_slots,
            totals: self.totals,
            per_superstep: self.per_superstep,
            run_sets: self.run_sets,
            message_recipients: self.recipients,
        }
    }
}

/// Runs `program` over `graph` until quiescence. `init` provides each
/// vertex's starting value. On success, returns the final values indexed by
/// dense id alongside the run's report.
pub fn run<P: VertexProgram>(
    graph: &Graph,
    program: &P,
    mut init: impl FnMut(VertexId) -> P::Value,
    config: &EngineConfig,
) -> Result<(Vec<P::Value>, RunReport), RunError> {
    if config.workers == 0 {
        return Err(RunError::InvalidConfig("workers must be at least 1".into()));
    }
    if config.max_supersteps == Some(0) {
        return Err(RunError::InvalidConfig(
            "max_supersteps must be at least 1".into(),
        ));
    }
    let n = graph.vertex_count();
    let limit = config.max_supersteps.unwrap_or(2 * n + 1);
    let recording = config.record_run_sets;
    let track_transitions = recording || config.selection == Selection::Bypass;

    let start = Instant::now();
    let shared = Shared {
        graph,
        program,
        state: EngineState::new(n, &mut init, config.delivery, track_transitions),
        delivery: config.delivery,
        selection: config.selection,
        workers: config.workers,
        track_transitions,
        recording,
        superstep: AtomicUsize::new(0),
        scan_all: AtomicBool::new(true),
        run_list: CoordCell::new(Vec::new()),
        stop: AtomicBool::new(false),
    };
    let locals: Vec<Mutex<WorkerLocal>> = (0..config.workers)
        .map(|_| Mutex::new(WorkerLocal::default()))
        .collect();
    let mut tracker = Tracker::new(recording);

    let outcome = if config.workers == 1 {
        run_inline(&shared, &locals, &mut tracker, limit)
    } else {
        run_threaded(&shared, &locals, &mut tracker, limit)
    };

    let elapsed = start.elapsed().as_secs_f64();
    let message_slots = shared.state.message_slot_count();
    let report = tracker.into_report(elapsed, message_slots);
    match outcome {
        Ok(()) => Ok((shared.state.into_values(), report)),
        Err(Stop::Contract(violation)) => Err(RunError::Contract(violation)),
        Err(Stop::Limit) => Err(RunError::SuperstepLimit {
            limit,
            report: Box::new(report),
        }),
        Err(Stop::Panic(payload)) => panic::resume_unwind(payload),
    }
}

fn run_inline<P: VertexProgram>(
    shared: &Shared<'_, P>,
    locals: &[Mutex<WorkerLocal>],
    tracker: &mut Tracker,
    limit: usize,
) -> Result<(), Stop> {
    loop {
        phase(shared, 0, &mut locals[0].lock().unwrap());
        match boundary(shared, locals, tracker, limit)? {
            Flow::Done => return Ok(()),
            Flow::Continue => {}
        }
    }
}

fn run_threaded<P: VertexProgram>(
    shared: &Shared<'_, P>,
    locals: &[Mutex<WorkerLocal>],
    tracker: &mut Tracker,
    limit: usize,
) -> Result<(), Stop> {
    let barrier = SpinBarrier::new(shared.workers + 1);
    let mut outcome = Ok(());
    std::thread::scope(|scope| {
        for (w, cell) in locals.iter().enumerate() {
            let barrier = &barrier;
            scope.spawn(move || {
                let mut waiter = barrier.waiter();
                loop {
                    waiter.wait();
                    if shared.stop.load(Ordering::Acquire) {
                        break;
                    }
                    {
                        let mut local = cell.lock().unwrap();
                        // A panicking compute must not leave the coordinator
                        // stuck at the barrier; park the payload instead.
                        let caught = panic::catch_unwind(AssertUnwindSafe(|| {
                            phase(shared, w, &mut local);
                        }));
                        if let Err(payload) = caught {
                            local.panic = Some(payload);
                        }
                    }
                    waiter.wait();
                }
            });
        }
        let mut waiter = barrier.waiter();
        loop {
            waiter.wait(); // workers enter the phase
            waiter.wait(); // workers finished the phase
            match boundary(shared, locals, tracker, limit) {
                Ok(Flow::Continue) => continue,
                Ok(Flow::Done) => {}
                Err(stop) => outcome = Err(stop),
            }
            shared.stop.store(true, Ordering::Release);
            waiter.wait(); // release workers into the stop check
            break;
        }
    });
    outcome
}

/// Even split of `len` items among workers.
fn share(len: usize, workers: usize, worker: usize) -> std::ops::Range<usize> {
    (len * worker / workers)..(len * (worker + 1) / workers)
}

fn phase<P: VertexProgram>(shared: &Shared<'_, P>, worker: usize, local: &mut WorkerLocal) {
    let superstep = shared.superstep.load(Ordering::Relaxed);
    if shared.scan_all.load(Ordering::Relaxed) {
        let range = share(shared.graph.vertex_count(), shared.workers, worker);
        let must_check = superstep > 0;
        if must_check {
            local.counters.status_checks += range.len() as u64;
        }
        for idx in range {
            consider(shared, superstep, must_check, idx as VertexId, local);
            if local.violation.is_some() {
                return;
            }
        }
    } else {
        // Safety: the coordinator rewrote the list before releasing workers.
        let list: &[VertexId] = unsafe { shared.run_list.get() };
        let range = share(list.len(), shared.workers, worker);
        for &v in &list[range] {
            consider(shared, superstep, false, v, local);
            if local.violation.is_some() {
                return;
            }
        }
    }
}

/// Runs one vertex if it qualifies. With `must_check` the naive conditions
/// are evaluated; otherwise selection is already decided (superstep 0 or a
/// bypass run list).
#[inline]
fn consider<P: VertexProgram>(
    shared: &Shared<'_, P>,
    superstep: usize,
    must_check: bool,
    v: VertexId,
    local: &mut WorkerLocal,
) {
    let state = &shared.state;
    let idx = v as usize;
    let pending: Option<P::Message> = match shared.delivery {
        Delivery::Push => {
            // Safety: this worker owns `idx` for the whole phase; senders
            // only touch the other buffer.
            let has_message = unsafe { state.mailboxes.current().get(idx) }.is_some();
            if must_check && !has_message && unsafe { *state.halted.get(idx) } {
                return;
            }
            if has_message {
                unsafe { state.mailboxes.current().get_mut(idx) }.take()
            } else {
                None
            }
        }
        Delivery::Pull => {
            let gathered = if superstep == 0 {
                None
            } else {
                gather(shared, v, local)
            };
            if must_check && gathered.is_none() && unsafe { *state.halted.get(idx) } {
                return;
            }
            gathered
        }
    };

    // Selection clears any standing halt vote.
    unsafe { *state.halted.get_mut(idx) = false };
    let mut ctx = Context {
        shared,
        local,
        vertex: v,
        superstep,
        pending,
        broadcast_done: false,
    };
    shared.program.compute(&mut ctx);
    local.counters.vertices_computed += 1;
    if unsafe { *state.halted.get(idx) } {
        local.counters.halt_votes += 1;
    } else {
        local.active += 1;
    }
    if shared.recording {
        local.computed.push(v);
    }
}

/// Folds the in-neighbours' published values into one message.
fn gather<P: VertexProgram>(
    shared: &Shared<'_, P>,
    v: VertexId,
    local: &mut WorkerLocal,
) -> Option<P::Message> {
    let outboxes = shared
        .state
        .outboxes
        .as_ref()
        .expect("pull mode has outboxes")
        .current();
    let sources = shared.graph.in_neighbors(v);
    local.counters.outbox_scans += sources.len() as u64;
    let mut acc: Option<P::Message> = None;
    for &u in sources {
        // Safety: current outboxes are frozen for the phase.
        if let Some(published) = unsafe { outboxes.get(u as usize) } {
            match &mut acc {
                Some(held) => {
                    shared.program.combine(held, published.clone());
                    local.counters.combines_applied += 1;
                }
                None => acc = Some(published.clone()),
            }
        }
    }
    acc
}

/// Superstep boundary: drain worker accumulators, decide termination, swap
/// buffers, and install the next run set. Runs with all workers parked.
fn boundary<P: VertexProgram>(
    shared: &Shared<'_, P>,
    locals: &[Mutex<WorkerLocal>],
    tracker: &mut Tracker,
    limit: usize,
) -> Result<Flow, Stop> {
    let superstep = shared.superstep.load(Ordering::Relaxed);
    let mut step = Counters::default();
    let mut active = 0u64;
    let mut merged: Vec<VertexId> = Vec::new();
    let mut computed: Vec<VertexId> = Vec::new();
    let mut violation = None;
    let mut panicked = None;
    for cell in locals {
        let mut local = cell.lock().unwrap();
        step.add(&std::mem::take(&mut local.counters));
        active += std::mem::take(&mut local.active);
        merged.append(&mut local.transitions);
        computed.append(&mut local.computed);
        violation = violation.or_else(|| local.violation.take());
        panicked = panicked.or_else(|| local.panic.take());
    }
    if let Some(payload) = panicked {
        return Err(Stop::Panic(payload));
    }
    if let Some(violation) = violation {
        return Err(Stop::Contract(violation));
    }

    // A scan that found nothing to run is termination detection, not a
    // superstep; its costs still count.
    if step.vertices_computed > 0 {
        tracker.supersteps += 1;
        tracker.per_superstep.push(step.clone());
        if let Some(run_sets) = &mut tracker.run_sets {
            computed.sort_unstable();
            run_sets.push(computed);
        }
        if let Some(recipients) = &mut tracker.recipients {
            let mut sorted = merged.clone();
            sorted.sort_unstable();
            recipients.push(sorted);
        }
    }
    tracker.totals.add(&step);

    let done = match shared.selection {
        Selection::Bypass => merged.is_empty(),
        Selection::Naive => active == 0 && step.messages_sent == 0,
    };
    if done {
        return Ok(Flow::Done);
    }
    if superstep + 1 >= limit {
        return Err(Stop::Limit);
    }

    shared.state.mailboxes.flip();
    if let Some(outboxes) = &shared.state.outboxes {
        outboxes.flip();
        // Safety: workers are parked; the stale buffer must be empty before
        // next superstep's broadcasts land in it.
        for slot in unsafe { outboxes.next().as_mut_slice() } {
            *slot = None;
        }
    }
    if let Some(flags) = &shared.state.scheduled {
        for &v in &merged {
            flags[v as usize].store(false, Ordering::Relaxed);
        }
    }
    if shared.selection == Selection::Bypass {
        // Safety: workers are parked.
        *unsafe { shared.run_list.get_mut() } = merged;
        shared.scan_all.store(false, Ordering::Relaxed);
    }
    shared.superstep.store(superstep + 1, Ordering::Relaxed);
    Ok(Flow::Continue)
}
