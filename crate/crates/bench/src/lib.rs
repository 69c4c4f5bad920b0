//! Empty library target; this crate only hosts the criterion benches.
