//! Holds the acceptance suite in `tests/acceptance.rs`. Run it with
//! `cargo test -p piano-validation -- --nocapture` to see one line per criterion.
