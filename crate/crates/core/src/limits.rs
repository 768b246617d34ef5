//! Global bound on integer scans.
//!
//! Every window scan (membership tables, canonical forms, Apéry searches)
//! checks its extent against this bound and fails with [`Error::Overflow`]
//! instead of truncating.

use std::sync::atomic::{AtomicI64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_SCAN_BOUND: i64 = 1_000_000;

/// Environment variable read by the CLI to override the bound.
pub const SCAN_BOUND_ENV: &str = "RRSG_NMAX";

static SCAN_BOUND: AtomicI64 = AtomicI64::new(DEFAULT_SCAN_BOUND);

pub fn scan_bound() -> i64 {
    SCAN_BOUND.load(Ordering::Relaxed)
}

pub fn set_scan_bound(bound: i64) {
    SCAN_BOUND.store(bound.max(1), Ordering::Relaxed);
}

/// Fails if `value` lies outside `[-bound, bound]`.
pub(crate) fn check(context: &'static str, value: i64) -> Result<i64> {
    let bound = scan_bound();
    if value.checked_abs().is_none_or(|v| v > bound) {
        return Err(Error::Overflow {
            context,
            value,
            bound,
        });
    }
    Ok(value)
}

pub(crate) fn add(context: &'static str, a: i64, b: i64) -> Result<i64> {
    let v = a.checked_add(b).ok_or(Error::Overflow {
        context,
        value: i64::MAX,
        bound: scan_bound(),
    })?;
    check(context, v)
}

pub(crate) fn mul(context: &'static str, a: i64, b: i64) -> Result<i64> {
    let v = a.checked_mul(b).ok_or(Error::Overflow {
        context,
        value: i64::MAX,
        bound: scan_bound(),
    })?;
    check(context, v)
}
