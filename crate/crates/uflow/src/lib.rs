//! Exact solvers for the unsplittable flow problem on undirected graphs with
//! edge capacities: select a maximum-profit subset of routing tasks and a
//! simple path of bounded length for each, so that no edge carries more
//! demand than its capacity.
//!
//! The crate provides:
//!
//! - the problem model with a strict routing verifier ([`model`]),
//! - tree decomposition machinery, including nice-form conversion and the
//!   PACE `.td` text format ([`decomp`]),
//! - a brute-force oracle ([`oracle`]) and two tree-decomposition dynamic
//!   programs ([`xp`], [`fpt`]) that all agree exactly,
//! - hard-instance generators and seeded random instances ([`generate`]),
//! - a command-line front end ([`cli`]).
//!
//! See the `examples/` directory for runnable entry points to each of these.

pub mod cli;
pub mod decomp;
pub mod error;
pub mod fpt;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod xp;

pub use error::{Error, Result};
pub use model::{CapacitatedGraph, Instance, Routing, Task};
