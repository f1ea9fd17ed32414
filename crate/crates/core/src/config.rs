use crate::error::{Error, Result};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

/// Which subgroups a flasqueness audit inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AuditMode {
    /// One representative per conjugacy class.
    #[default]
    Representatives,
    /// Every subgroup.
    Full,
}

/// Cooperative cancellation flag shared between a job and its caller.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    /// Largest group order accepted.
    pub order_budget: usize,
    /// Largest cochain-space dimension a differential may touch.
    pub matrix_budget: usize,
    /// Largest finite module enumerated for isomorphism tests.
    pub enumeration_budget: usize,
    pub audit: AuditMode,
    pub cancel: CancelToken,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order_budget: 64,
            matrix_budget: 40_000,
            enumeration_budget: 1 << 16,
            audit: AuditMode::Representatives,
            cancel: CancelToken::default(),
        }
    }
}

impl Config {
    pub fn check_cancel(&self) -> Result<()> {
        if self.cancel.is_cancelled() {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    }

    pub fn check_dim(&self, what: &str, dim: usize) -> Result<()> {
        if dim > self.matrix_budget {
            Err(Error::budget(what, dim, self.matrix_budget))
        } else {
            Ok(())
        }
    }
}
