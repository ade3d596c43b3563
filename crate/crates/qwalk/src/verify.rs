//! Verification harness (stub).
