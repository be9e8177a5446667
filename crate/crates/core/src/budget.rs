//! Step budget for the searches in the orbit and conjugacy algorithms.

use std::cell::Cell;

use crate::error::{Error, Result};

/// Default number of steps before a search gives up.
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// A step counter that fails once a limit is exceeded.
///
/// Every scan step, pond search step and conjugator candidate consumes one
/// unit. Exceeding the limit is reported as [`Error::StepLimit`], never as a
/// negative answer.
#[derive(Debug)]
pub struct Budget {
    limit: usize,
    used: Cell<usize>,
}

impl Budget {
    /// A budget allowing `limit` steps.
    pub fn new(limit: usize) -> Self {
        Budget {
            limit,
            used: Cell::new(0),
        }
    }

    /// Consumes one step.
    pub fn tick(&self) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if used > self.limit {
            Err(Error::StepLimit(self.limit))
        } else {
            Ok(())
        }
    }

    /// Steps consumed so far.
    pub fn used(&self) -> usize {
        self.used.get()
    }

    /// The configured limit.
    pub fn limit(&self) -> usize {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MAX_STEPS)
    }
}
