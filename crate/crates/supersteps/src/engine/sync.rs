//! Synchronisation primitives for the superstep loop.
//!
//! The engine's sharing discipline is coarse: during a compute phase each
//! vertex slot is written only by the worker responsible for it (or under the
//! per-vertex exclusion flag in push mode), and between phases only the
//! coordinator touches anything. The barrier provides the happens-before
//! edges; the cell types below just opt out of the borrow checker where that
//! discipline makes aliasing safe.

use std::cell::UnsafeCell;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

/// Fixed-length array of per-vertex cells with externally enforced exclusive
/// access.
pub(crate) struct OwnedSlots<T> {
    cells: Vec<UnsafeCell<T>>,
}

unsafe impl<T: Send> Sync for OwnedSlots<T> {}

impl<T> OwnedSlots<T> {
    pub fn new_with(len: usize, mut init: impl FnMut(usize) -> T) -> Self {
        OwnedSlots {
            cells: (0..len).map(|i| UnsafeCell::new(init(i))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// Safety: no thread holds `&mut` to index `i` for the borrow's duration.
    pub unsafe fn get(&self, i: usize) -> &T {
        &*self.cells[i].get()
    }

    /// Safety: caller has exclusive access to index `i` for the borrow's
    /// duration (slot ownership or the vertex lock).
    #[allow(clippy::mut_from_ref)]
    pub unsafe fn get_mut(&self, i: usize) -> &mut T {
        &mut *self.cells[i].get()
    }

    /// Safety: caller is the only thread touching the whole array.
    #[allow(clippy::mut_from_ref)]
    pub unsafe fn as_mut_slice(&self) -> &mut [T] {
        // UnsafeCell<T> is repr(transparent) over T.
        std::slice::from_raw_parts_mut(self.cells.as_ptr() as *mut T, self.cells.len())
    }

    pub fn into_vec(self) -> Vec<T> {
        self.cells.into_iter().map(UnsafeCell::into_inner).collect()
    }
}

/// Double buffer of per-vertex slots. `current` is read during a superstep,
/// `next` written; the coordinator flips the roles at the boundary.
pub(crate) struct BufferPair<T> {
    buffers: [OwnedSlots<T>; 2],
    current: AtomicUsize,
}

impl<T> BufferPair<T> {
    pub fn new_with(len: usize, init: impl Fn(usize) -> T) -> Self {
        BufferPair {
            buffers: [
                OwnedSlots::new_with(len, &init),
                OwnedSlots::new_with(len, &init),
            ],
            current: AtomicUsize::new(0),
        }
    }

    pub fn slot_count(&self) -> usize {
        self.buffers[0].len() + self.buffers[1].len()
    }

    pub fn current(&self) -> &OwnedSlots<T> {
        &self.buffers[self.current.load(Ordering::Relaxed)]
    }

    pub fn next(&self) -> &OwnedSlots<T> {
        &self.buffers[1 - self.current.load(Ordering::Relaxed)]
    }

    /// Coordinator only, between phases.
    pub fn flip(&self) {
        self.current.fetch_xor(1, Ordering::Relaxed);
    }
}

/// One busy-wait exclusion flag per vertex, guarding push-mode mailbox
/// updates. Critical sections are a combine or a store, so waiters spin;
/// they still yield eventually in case the holder was descheduled.
pub(crate) struct VertexLocks {
    flags: Vec<AtomicBool>,
}

impl VertexLocks {
    pub fn new(len: usize) -> Self {
        VertexLocks {
            flags: (0..len).map(|_| AtomicBool::new(false)).collect(),
        }
    }

    #[inline]
    pub fn with<R>(&self, v: usize, critical: impl FnOnce() -> R) -> R {
        let flag = &self.flags[v];
        let mut spins = 0u32;
        loop {
            if flag
                .compare_exchange_weak(false, true, Ordering::Acquire, Ordering::Relaxed)
                .is_ok()
            {
                break;
            }
            while flag.load(Ordering::Relaxed) {
                spins += 1;
                if spins > 1 << 14 {
                    std::thread::yield_now();
                } else {
                    std::hint::spin_loop();
                }
            }
        }
        let out = critical();
        flag.store(false, Ordering::Release);
        out
    }
}

/// Sense-reversing barrier. Spins briefly, then yields, so it behaves when
/// worker threads outnumber cores.
pub(crate) struct SpinBarrier {
    parties: usize,
    arrived: AtomicUsize,
    sense: AtomicBool,
}

impl SpinBarrier {
    pub fn new(parties: usize) -> Self {
        SpinBarrier {
            parties,
            arrived: AtomicUsize::new(0),
            sense: AtomicBool::new(false),
        }
    }

    /// Per-thread handle carrying the thread's phase parity.
    pub fn waiter(&self) -> Waiter<'_> {
        Waiter {
            barrier: self,
            sense: true,
        }
    }
}

pub(crate) struct Waiter<'a> {
    barrier: &'a SpinBarrier,
    sense: bool,
}

impl Waiter<'_> {
    pub fn wait(&mut self) {
        let target = self.sense;
        let barrier = self.barrier;
        if barrier.arrived.fetch_add(1, Ordering::AcqRel) + 1 == barrier.parties {
            barrier.arrived.store(0, Ordering::Relaxed);
            barrier.sense.store(target, Ordering::Release);
        } else {
            let mut spins = 0u32;
            while barrier.sense.load(Ordering::Acquire) != target {
                spins += 1;
                if spins > 1 << 8 {
                    std::thread::yield_now();
                } else {
                    std::hint::spin_loop();
                }
            }
        }
        self.sense = !target;
    }
}

/// Value owned by the coordinator but readable by workers during a phase.
pub(crate) struct CoordCell<T>(UnsafeCell<T>);

unsafe impl<T: Send + Sync> Sync for CoordCell<T> {}

impl<T> CoordCell<T> {
    pub fn new(value: T) -> Self {
        CoordCell(UnsafeCell::new(value))
    }

    /// Safety: workers are parked at the barrier.
    #[allow(clippy::mut_from_ref)]
    pub unsafe fn get_mut(&self) -> &mut T {
        &mut *self.0.get()
    }

    /// Safety: no concurrent `get_mut`.
    pub unsafe fn get(&self) -> &T {
        &*self.0.get()
    }
}
