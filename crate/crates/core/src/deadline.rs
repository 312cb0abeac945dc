//! Cooperative wall-clock budgets. A deadline installed on the current
//! thread is polled by long-running loops through [`checkpoint`].

use std::cell::Cell;
use std::time::Instant;

use crate::error::{Error, Result};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Restores the previous deadline when dropped.
pub struct DeadlineGuard {
    previous: Option<Instant>,
}

impl Drop for DeadlineGuard {
    fn drop(&mut self) {
        DEADLINE.with(|d| d.set(self.previous));
    }
}

/// Installs `deadline` for the current thread. A tighter enclosing deadline wins.
pub fn install(deadline: Option<Instant>) -> DeadlineGuard {
    let previous = current();
    let effective = match (previous, deadline) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    DEADLINE.with(|d| d.set(effective));
    DeadlineGuard { previous }
}

pub fn current() -> Option<Instant> {
    DEADLINE.with(|d| d.get())
}

pub fn checkpoint() -> Result<()> {
    match current() {
        Some(t) if Instant::now() >= t => Err(Error::Timeout),
        _ => Ok(()),
    }
}
