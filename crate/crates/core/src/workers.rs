//! Round-based worker pool and the atomic mirror of [`ResidualState`].
//!
//! Workers run a round concurrently, then park on a barrier while the
//! coordinator has the state to itself. Inside a round every excess and
//! residual word is only touched through atomic read-modify-write; heights
//! and prices are written by their owning worker only.

use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicUsize, Ordering::Relaxed};
use std::sync::{Barrier, Mutex};
use std::thread;

use thiserror::Error;

use crate::residual::ResidualState;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("worker {worker} panicked: {message}")]
pub struct WorkerPanic {
    pub worker: usize,
    pub message: String,
}

/// What the coordinator wants after a quiescent pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    Run,
    Stop,
}

/// Worker that owns node `v` for relabel purposes.
#[inline]
pub fn owner_of(v: usize, workers: usize) -> usize {
    v % workers
}

/// Nodes owned by `worker` under static striping.
pub fn owned_nodes(worker: usize, workers: usize, node_count: usize) -> impl Iterator<Item = usize> {
    (worker..node_count).step_by(workers)
}

/// Atomic copy of a [`ResidualState`], shared by all workers of a round.
#[derive(Debug)]
pub struct AtomicResidual {
    pub residual: Vec<AtomicI64>,
    pub excess: Vec<AtomicI64>,
    pub height: Vec<AtomicUsize>,
    pub price: Vec<AtomicI64>,
}

impl AtomicResidual {
    pub fn from_state(state: &ResidualState) -> Self {
        Self {
            residual: state.residual.iter().map(|&v| AtomicI64::new(v)).collect(),
            excess: state.excess.iter().map(|&v| AtomicI64::new(v)).collect(),
            height: state.height.iter().map(|&v| AtomicUsize::new(v)).collect(),
            price: state.price.iter().map(|&v| AtomicI64::new(v)).collect(),
        }
    }

    /// Copies the shared words into `state`. Only meaningful at quiescent points.
    pub fn load_into(&self, state: &mut ResidualState) {
        for (dst, src) in state.residual.iter_mut().zip(&self.residual) {
            *dst = src.load(Relaxed);
        }
        for (dst, src) in state.excess.iter_mut().zip(&self.excess) {
            *dst = src.load(Relaxed);
        }
        for (dst, src) in state.height.iter_mut().zip(&self.height) {
            *dst = src.load(Relaxed);
        }
        for (dst, src) in state.price.iter_mut().zip(&self.price) {
            *dst = src.load(Relaxed);
        }
    }

    pub fn store_from(&self, state: &ResidualState) {
        for (dst, &src) in self.residual.iter().zip(&state.residual) {
            dst.store(src, Relaxed);
        }
        for (dst, &src) in self.excess.iter().zip(&state.excess) {
            dst.store(src, Relaxed);
        }
        for (dst, &src) in self.height.iter().zip(&state.height) {
            dst.store(src, Relaxed);
        }
        for (dst, &src) in self.price.iter().zip(&state.price) {
            dst.store(src, Relaxed);
        }
    }

    /// The four atomic updates of one push across arc `a`.
    #[inline]
    pub fn push(&self, a: usize, tail: usize, head: usize, delta: i64) {
        self.residual[a].fetch_sub(delta, Relaxed);
        self.residual[a ^ 1].fetch_add(delta, Relaxed);
        self.excess[tail].fetch_sub(delta, Relaxed);
        self.excess[head].fetch_add(delta, Relaxed);
    }
}

/// Drives `round` on `workers` threads until `between` returns [`Step::Stop`].
///
/// `between` runs on the calling thread before the first round and after
/// every round, with all workers parked on the barrier.
pub(crate) fn run_rounds<S, R, C>(workers: usize, shared: &S, round: R, mut between: C) -> Result<(), WorkerPanic>
where
    S: Sync,
    R: Fn(usize, &S) + Sync,
    C: FnMut(&S) -> Step,
{
    assert!(workers >= 1, "need at least one worker");
    let barrier = Barrier::new(workers + 1);
    let stop = AtomicBool::new(false);
    let failure: Mutex<Option<WorkerPanic>> = Mutex::new(None);

    thread::scope(|scope| {
        for worker in 0..workers {
            let (barrier, stop, failure, round) = (&barrier, &stop, &failure, &round);
            scope.spawn(move || loop {
                barrier.wait();
                if stop.load(Relaxed) {
                    break;
                }
                if let Err(payload) = panic::catch_unwind(AssertUnwindSafe(|| round(worker, shared))) {
                    let message = panic_message(payload.as_ref());
                    failure.lock().unwrap().get_or_insert(WorkerPanic { worker, message });
                }
                barrier.wait();
            });
        }

        let outcome = panic::catch_unwind(AssertUnwindSafe(|| loop {
            if let Some(err) = failure.lock().unwrap().take() {
                return Err(err);
            }
            if between(shared) == Step::Stop {
                return Ok(());
            }
            barrier.wait();
            barrier.wait();
        }));

        stop.store(true, Relaxed);
        barrier.wait();
        match outcome {
            Ok(result) => result,
            Err(payload) => panic::resume_unwind(payload),
        }
    })
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".to_string()
    }
}
