//! FMS: a compiler and solver driver for FML, a functional modelling
//! language for combinatorial search problems.
//!
//! A specification is parsed into surface statements, desugared into a small
//! Core lambda calculus, optimized, type checked, translated into an answer
//! set program and solved; answer sets are reinterpreted as human-readable
//! models. See the README for the language reference and CLI usage.

pub mod desugar;
pub mod eval;
pub(crate) mod graph;
pub mod ir;
pub mod lex;
pub mod opt;
pub mod syntax;
pub mod types;
