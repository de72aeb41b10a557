//! Sweep orchestration (under construction).
