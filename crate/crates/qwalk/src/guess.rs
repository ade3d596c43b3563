//! P-recurrence guessing (stub).
