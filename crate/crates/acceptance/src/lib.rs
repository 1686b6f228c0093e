//! Acceptance suite for `puzzle-core`; everything lives in `tests/acceptance.rs`.
