//! Bounds on exhaustive scans.

use crate::error::{Error, Result};

/// Environment variable overriding both scan bounds.
pub const SCAN_BOUND_ENV: &str = "PADIC_SCAN_BOUND";

/// Upper bounds for brute-force work.
///
/// `scan_bound` limits scans over F_p (root finding mod p); `enumeration_bound`
/// limits scans over ℤ/p^m in the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub scan_bound: u64,
    pub enumeration_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            scan_bound: 1_000_000,
            enumeration_bound: 10_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with both bounds replaced by `PADIC_SCAN_BOUND` when it parses.
    pub fn from_env() -> Self {
        match std::env::var(SCAN_BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            Some(bound) => Limits {
                scan_bound: bound,
                enumeration_bound: bound,
            },
            None => Limits::default(),
        }
    }

    pub(crate) fn check_scan(&self, size: u128) -> Result<()> {
        check(size, self.scan_bound)
    }

    pub(crate) fn check_enumeration(&self, size: u128) -> Result<()> {
        check(size, self.enumeration_bound)
    }
}

fn check(size: u128, bound: u64) -> Result<()> {
    if size > bound as u128 {
        Err(Error::ScanBoundExceeded { size, bound })
    } else {
        Ok(())
    }
}
