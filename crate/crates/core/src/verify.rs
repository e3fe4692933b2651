//! Named property suites. Filled in alongside the acceptance gate.

/// Placeholder module marker; suites land here.
pub const SUITES: &[&str] = &[];
