//! Per-vertex runtime state.

use std::sync::atomic::AtomicBool;

use super::sync::{BufferPair, OwnedSlots, VertexLocks};
use super::{Delivery, VertexProgram};
use crate::graph::VertexId;

/// Everything the engine stores per vertex. All members are vertex-indexed
/// arrays sized once up front, so memory stays linear in the vertex count.
pub(crate) struct EngineState<P: VertexProgram> {
    pub values: OwnedSlots<P::Value>,
    pub halted: OwnedSlots<bool>,
    /// Current/next combined message slot per vertex.
    pub mailboxes: BufferPair<Option<P::Message>>,
    /// Current/next broadcast slot per vertex, pull mode only.
    pub outboxes: Option<BufferPair<Option<P::Message>>>,
    /// Exclusion flags guarding mailbox writes, push mode only.
    pub locks: Option<VertexLocks>,
    /// Dedup flags for pull-mode scheduling, present when frontier tracking
    /// is on.
    pub scheduled: Option<Vec<AtomicBool>>,
}

impl<P: VertexProgram> EngineState<P> {
    pub fn new(
        vertex_count: usize,
        init: &mut dyn FnMut(VertexId) -> P::Value,
        delivery: Delivery,
        track_transitions: bool,
    ) -> Self {
        let pull = delivery == Delivery::Pull;
        EngineState {
            values: OwnedSlots::new_with(vertex_count, |i| init(i as VertexId)),
            halted: OwnedSlots::new_with(vertex_count, |_| false),
            mailboxes: BufferPair::new_with(vertex_count, |_| None),
            outboxes: pull.then(|| BufferPair::new_with(vertex_count, |_| None)),
            locks: (!pull).then(|| VertexLocks::new(vertex_count)),
            scheduled: (pull && track_transitions)
                .then(|| (0..vertex_count).map(|_| AtomicBool::new(false)).collect()),
        }
    }

    pub fn message_slot_count(&self) -> u64 {
        let outbox_slots = self.outboxes.as_ref().map_or(0, BufferPair::slot_count);
        (self.mailboxes.slot_count() + outbox_slots) as u64
    }

    pub fn into_values(self) -> Vec<P::Value> {
        self.values.into_vec()
    }
}

/// Combine-or-store into a single message slot. Returns whether the slot
/// went from empty to occupied, which is the signal frontier tracking needs.
pub(crate) fn deposit<M>(
    slot: &mut Option<M>,
    incoming: M,
    combine: impl FnOnce(&mut M, M),
) -> bool {
    match slot {
        Some(held) => {
            combine(held, incoming);
            false
        }
        None => {
            *slot = Some(incoming);
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::deposit;

    fn min_combine(held: &mut u64, incoming: u64) {
        if *held > incoming {
            *held = incoming;
        }
    }

    #[test]
    fn first_deposit_fills_the_slot() {
        let mut slot = None;
        assert!(deposit(&mut slot, 9, min_combine));
        assert_eq!(slot, Some(9));
    }

    #[test]
    fn min_combine_is_order_independent() {
        // All six arrival orders of {9, 4, 6} leave the same slot value.
        let values = [9u64, 4, 6];
        let orders = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for order in orders {
            let mut slot = None;
            let mut transitions = 0;
            for i in order {
                if deposit(&mut slot, values[i], min_combine) {
                    transitions += 1;
                }
            }
            assert_eq!(slot, Some(4), "order {order:?}");
            assert_eq!(transitions, 1, "order {order:?}");
        }
    }

    #[test]
    fn sum_combine_accumulates() {
        let mut slot = None;
        for x in [1.5f64, 2.0, 0.25] {
            deposit(&mut slot, x, |held, incoming| *held += incoming);
        }
        assert_eq!(slot, Some(3.75));
    }
}
