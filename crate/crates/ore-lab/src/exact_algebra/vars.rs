//! Indeterminates and the lazily growing registry.
//!
//! The field K is a rational function field in countably many variables
//! `x0, x1, ...`; the coefficient ring may add one distinguished variable `t`.
//! Any finite computation touches finitely many of them, so the registry only
//! records a high-water mark and grows by atomic appends.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};

/// One indeterminate: the distinguished `t` or an indexed `x{n}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    /// The distinguished variable of the coefficient ring A = K[t].
    T,
    /// The field variable x{n}.
    X(u32),
}

impl VarId {
    pub fn x(index: u32) -> Self {
        VarId::X(index)
    }

    pub fn is_t(&self) -> bool {
        matches!(self, VarId::T)
    }

    /// Parse "t" or "x<digits>".
    pub fn parse(name: &str) -> Option<VarId> {
        if name == "t" {
            return Some(VarId::T);
        }
        let idx = name.strip_prefix('x')?;
        if idx.is_empty() || idx.len() > 6 || !idx.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        // Reject leading zeros other than "x0" so rendering round-trips.
        if idx.len() > 1 && idx.starts_with('0') {
            return None;
        }
        Some(VarId::X(idx.parse().ok()?))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::T => write!(f, "t"),
            VarId::X(i) => write!(f, "x{}", i),
        }
    }
}

/// Append-only registry of indeterminates that have been touched.
///
/// Allocation is an atomic max/append; reads never block. Two `VarId` with
/// the same index always denote the same indeterminate, so the registry is
/// bookkeeping only: it lets reports say how far the variable supply grew.
#[derive(Debug, Default)]
pub struct VarRegistry {
    next_x: AtomicU32,
    t_used: AtomicBool,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record that x{index} is in use; indices are allocated monotonically.
    pub fn note(&self, var: VarId) {
        match var {
            VarId::T => self.t_used.store(true, Ordering::Relaxed),
            VarId::X(i) => {
                self.next_x.fetch_max(i + 1, Ordering::Relaxed);
            }
        }
    }

    /// Allocate a fresh x-variable past everything seen so far.
    pub fn fresh_x(&self) -> VarId {
        VarId::X(self.next_x.fetch_add(1, Ordering::Relaxed))
    }

    /// Number of x-variables touched (high-water mark).
    pub fn x_count(&self) -> u32 {
        self.next_x.load(Ordering::Relaxed)
    }

    pub fn t_used(&self) -> bool {
        self.t_used.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(VarId::parse("t"), Some(VarId::T));
        assert_eq!(VarId::parse("x0"), Some(VarId::X(0)));
        assert_eq!(VarId::parse("x12"), Some(VarId::X(12)));
        assert_eq!(VarId::parse("x01"), None);
        assert_eq!(VarId::parse("y1"), None);
        assert_eq!(VarId::parse("x"), None);
        assert_eq!(VarId::X(3).to_string(), "x3");
    }

    #[test]
    fn registry_is_monotonic() {
        let reg = VarRegistry::new();
        reg.note(VarId::X(4));
        assert_eq!(reg.x_count(), 5);
        reg.note(VarId::X(1));
        assert_eq!(reg.x_count(), 5);
        assert_eq!(reg.fresh_x(), VarId::X(5));
        assert_eq!(reg.fresh_x(), VarId::X(6));
        assert!(!reg.t_used());
        reg.note(VarId::T);
        assert!(reg.t_used());
    }

    #[test]
    fn ordering_puts_t_first() {
        assert!(VarId::T < VarId::X(0));
        assert!(VarId::X(0) < VarId::X(1));
    }
}
