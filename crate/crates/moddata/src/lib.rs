//! Exact-arithmetic engine for classifying low-rank modular tensor category
//! modular data.
//!
//! The pipeline mirrors a computer-assisted classification workflow: enumerate
//! candidate Galois groups and sign functions, build symbolic (S, T)
//! templates, generate orthogonality/twist relations, and resolve each case by
//! iterated Groebner-basis runs with factor-based deduction, branching, and
//! contradiction detection. Solved modular data is checked numerically against
//! the admissibility criteria.

pub mod cli;
pub mod engine;
pub mod exactpoly;
pub mod factorlab;
pub mod groebner;
pub mod spectra;
pub mod symmetry;
pub mod template;
pub mod verify;
