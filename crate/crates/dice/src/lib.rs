//! Intransitive dice from arbitrary tournaments.
//!
//! Any tournament on `n` vertices can be realized as the dominance digraph of
//! `n` dice whose faces partition an integer interval: die `i` beats die `j`
//! exactly when vertex `i` beats vertex `j`. This crate provides
//!
//! - [`tournament`]: directed-graph algebra (restriction, products,
//!   condensation, Hamiltonian cycles, rotational games, isomorphism);
//! - [`partition`]: regular partitions of `{1..Nn}`, their pairwise dominance
//!   margins, and margin-preserving transforms;
//! - [`construct`]: builders that turn any tournament into a partition
//!   modeling it, with controllable block size;
//! - [`switch`]: adjacent-value switches, replayable switch logs, and the
//!   stratification rewriting;
//! - [`verify`]: an independent brute-force oracle and report generation;
//! - [`catalog`]: named ready-made examples;
//! - [`sweep`]: exhaustive and randomized construct-and-verify batches.
//!
//! The building blocks are pure functions over immutable values. With the
//! default `parallel` feature, margin matrices and sweeps fan out via rayon;
//! disabling it yields a dependency-light sequential build with identical
//! results.

pub mod catalog;
pub mod construct;
pub mod error;
pub mod partition;
pub mod sweep;
pub mod switch;
pub mod tournament;
pub mod verify;

pub use error::{Error, Result};
