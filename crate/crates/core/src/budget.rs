//! Work budgets for the long-running searches.
//!
//! The core crate has no clock of its own; callers that want wall-clock
//! limits hand in a [`Clock`].

/// Monotonic seconds since some fixed origin.
pub trait Clock {
    fn seconds(&self) -> f64;
}

/// Limits for a search. `None` means unlimited.
#[derive(Clone, Copy)]
pub struct Budget<'a> {
    pub max_seconds: Option<f64>,
    pub max_steps: Option<u64>,
    pub clock: Option<&'a dyn Clock>,
}

impl core::fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Budget")
            .field("max_seconds", &self.max_seconds)
            .field("max_steps", &self.max_steps)
            .field("clock", &self.clock.is_some())
            .finish()
    }
}

impl<'a> Budget<'a> {
    pub const UNLIMITED: Budget<'static> = Budget { max_seconds: None, max_steps: None, clock: None };

    pub fn steps(max_steps: u64) -> Budget<'static> {
        Budget { max_seconds: None, max_steps: Some(max_steps), clock: None }
    }

    pub fn timed(clock: &'a dyn Clock, max_seconds: f64) -> Budget<'a> {
        Budget { max_seconds: Some(max_seconds), max_steps: None, clock: Some(clock) }
    }

    pub fn with_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = Some(max_steps);
        self
    }

    pub(crate) fn meter(&self) -> Meter<'a> {
        let start = self.clock.map(|c| c.seconds()).unwrap_or(0.0);
        Meter { budget: *self, start, steps: 0 }
    }
}

/// Running tally against a [`Budget`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Meter<'a> {
    budget: Budget<'a>,
    start: f64,
    steps: u64,
}

impl Meter<'_> {
    #[inline]
    pub fn tick(&mut self, n: u64) {
        self.steps += n;
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn elapsed(&self) -> f64 {
        match self.budget.clock {
            Some(c) => c.seconds() - self.start,
            None => 0.0,
        }
    }

    pub fn exhausted(&self) -> bool {
        if let Some(max) = self.budget.max_steps {
            if self.steps >= max {
                return true;
            }
        }
        match (self.budget.max_seconds, self.budget.clock) {
            (Some(max), Some(_)) => self.elapsed() >= max,
            _ => false,
        }
    }

    /// Seconds left, if the budget is timed.
    pub fn remaining_seconds(&self) -> Option<f64> {
        match (self.budget.max_seconds, self.budget.clock) {
            (Some(max), Some(_)) => Some(max - self.elapsed()),
            _ => None,
        }
    }

    /// Steps left, if the budget counts steps.
    pub fn remaining_steps(&self) -> Option<u64> {
        self.budget.max_steps.map(|m| m.saturating_sub(self.steps))
    }
}
