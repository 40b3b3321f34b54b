//! The vertex-program contract and the per-invocation handle it computes
//! through.

use std::fmt;

use super::state::deposit;
use super::{Delivery, Shared, WorkerLocal};
use crate::graph::VertexId;

/// User logic run by the engine.
///
/// `compute` runs once per selected vertex per superstep. `combine` folds a
/// newly arrived message into the one already occupying the recipient's
/// slot; it must be associative and commutative because arrival order is
/// unspecified and, under push delivery, concurrent.
pub trait VertexProgram: Sync + Sized {
    type Value: Send;
    type Message: Send + Clone;

    fn compute(&self, ctx: &mut Context<'_, Self>);

    fn combine(&self, held: &mut Self::Message, incoming: Self::Message);
}

/// A vertex-program rule was broken at runtime. The engine reports the
/// offender instead of corrupting the superstep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractViolation {
    /// `send_message` is a push-mode operation.
    SendInPullMode { vertex: VertexId, superstep: usize },
    /// Pull mode gives each vertex one outbox slot, so a second broadcast in
    /// the same superstep would silently overwrite the first.
    RepeatBroadcast { vertex: VertexId, superstep: usize },
    /// Send target is not a dense id of this graph.
    TargetOutOfRange {
        vertex: VertexId,
        target: VertexId,
        superstep: usize,
    },
}

impl fmt::Display for ContractViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractViolation::SendInPullMode { vertex, superstep } => write!(
                f,
                "vertex {vertex} called send_message in pull mode (superstep {superstep})"
            ),
            ContractViolation::RepeatBroadcast { vertex, superstep } => write!(
                f,
                "vertex {vertex} broadcast twice in superstep {superstep} (pull mode has one outbox slot)"
            ),
            ContractViolation::TargetOutOfRange {
                vertex,
                target,
                superstep,
            } => write!(
                f,
                "vertex {vertex} sent to nonexistent vertex {target} (superstep {superstep})"
            ),
        }
    }
}

/// Handle passed to [`VertexProgram::compute`]; all reads and effects go
/// through it.
pub struct Context<'a, P: VertexProgram> {
    pub(super) shared: &'a Shared<'a, P>,
    pub(super) local: &'a mut WorkerLocal,
    pub(super) vertex: VertexId,
    pub(super) superstep: usize,
    pub(super) pending: Option<P::Message>,
    pub(super) broadcast_done: bool,
}

impl<P: VertexProgram> Context<'_, P> {
    pub fn superstep(&self) -> usize {
        self.superstep
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn vertex_count(&self) -> usize {
        self.shared.graph.vertex_count()
    }

    pub fn out_degree(&self) -> usize {
        self.shared.graph.out_degree(self.vertex)
    }

    pub fn in_degree(&self) -> usize {
        self.shared.graph.in_degree(self.vertex)
    }

    pub fn value(&self) -> &P::Value {
        unsafe { self.shared.state.values.get(self.vertex as usize) }
    }

    pub fn value_mut(&mut self) -> &mut P::Value {
        unsafe { self.shared.state.values.get_mut(self.vertex as usize) }
    }

    /// The combined message delivered this superstep, if any. Single slot:
    /// the first call takes it, later calls see `None`.
    pub fn next_message(&mut self) -> Option<P::Message> {
        self.pending.take()
    }

    /// Ask not to be selected again until a message arrives.
    pub fn vote_to_halt(&mut self) {
        unsafe { *self.shared.state.halted.get_mut(self.vertex as usize) = true };
    }

    /// Deliver one message to `target`'s slot for the next superstep.
    /// Push mode only.
    pub fn send_message(&mut self, target: VertexId, message: P::Message) {
        if self.local.violation.is_some() {
            return;
        }
        if self.shared.delivery == Delivery::Pull {
            self.local.violation = Some(ContractViolation::SendInPullMode {
                vertex: self.vertex,
                superstep: self.superstep,
            });
            return;
        }
        if target as usize >= self.shared.graph.vertex_count() {
            self.local.violation = Some(ContractViolation::TargetOutOfRange {
                vertex: self.vertex,
                target,
                superstep: self.superstep,
            });
            return;
        }
        self.push_to(target, message);
    }

    /// Send `message` along every outgoing edge. In pull mode this is one
    /// outbox write that in-neighbours will read next superstep, and it is
    /// allowed once per superstep.
    pub fn broadcast(&mut self, message: P::Message) {
        if self.local.violation.is_some() {
            return;
        }
        match self.shared.delivery {
            Delivery::Push => {
                let targets = self.shared.graph.out_neighbors(self.vertex);
                for &target in targets {
                    self.push_to(target, message.clone());
                }
            }
            Delivery::Pull => {
                if self.broadcast_done {
                    self.local.violation = Some(ContractViolation::RepeatBroadcast {
                        vertex: self.vertex,
                        superstep: self.superstep,
                    });
                    return;
                }
                self.broadcast_done = true;
                let state = &self.shared.state;
                let outboxes = state.outboxes.as_ref().expect("pull mode has outboxes");
                unsafe { *outboxes.next().get_mut(self.vertex as usize) = Some(message) };
                self.local.counters.messages_sent += 1;
                if let Some(flags) = &state.scheduled {
                    for &w in self.shared.graph.out_neighbors(self.vertex) {
                        let already =
                            flags[w as usize].swap(true, std::sync::atomic::Ordering::Relaxed);
                        if !already {
                            self.local.transitions.push(w);
                        }
                    }
                }
            }
        }
    }

    fn push_to(&mut self, target: VertexId, message: P::Message) {
        let state = &self.shared.state;
        let locks = state.locks.as_ref().expect("push mode has vertex locks");
        let program = self.shared.program;
        let mut combined = false;
        let transitioned = locks.with(target as usize, || {
            let slot = unsafe { state.mailboxes.next().get_mut(target as usize) };
            deposit(slot, message, |held, incoming| {
                program.combine(held, incoming);
                combined = true;
            })
        });
        self.local.counters.messages_sent += 1;
        self.local.counters.exclusion_acquisitions += 1;
        if combined {
            self.local.counters.combines_applied += 1;
        }
        if transitioned && self.shared.track_transitions {
            self.local.transitions.push(target);
        }
    }
}
