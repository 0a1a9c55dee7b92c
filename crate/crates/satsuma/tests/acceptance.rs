//! Acceptance suite placeholder; populated after the core compiles.
#[test]
fn placeholder() {}
