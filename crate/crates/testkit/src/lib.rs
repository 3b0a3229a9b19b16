//! Test support for leadkit: synthetic corpora whose filter outcome is known
//! by construction, and slow but obviously-correct reference implementations.
//!
//! Nothing here calls into leadkit, so it can serve as an oracle for it.

pub mod oracle;
pub mod synth;
