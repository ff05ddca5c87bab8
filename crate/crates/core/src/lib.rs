//! Fine-grained algorithms for the traveling salesman problem.
//!
//! The crate covers four families of results:
//!
//! * pyramidal (bitonic) tours of an ordered point set, solved in
//!   near-linear time through an additively weighted nearest-neighbour
//!   structure ([`pyramidal`], [`awnn`]);
//! * bottleneck pyramidal tours, decided with a dynamic union of congruent
//!   disks and optimized with a weight-ordered search tree ([`bottleneck`],
//!   [`disk_union`]);
//! * k-opt move detection via non-interfering edge subsets and piecewise
//!   embedding, plus the reductions that tie 3-opt to negative triangles
//!   ([`kopt`], [`reductions`]);
//! * repeated best-improvement 2-opt with per-edge balanced search trees
//!   ([`two_opt`]).
//!
//! Every fast routine ships with a slow reference used by the test suite.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod awnn;
pub mod bench;
pub mod bottleneck;
pub mod cli;
pub mod disk_union;
pub mod error;
pub mod generate;
pub mod io;
pub mod kopt;
pub mod model;
pub mod pyramidal;
pub mod reductions;
pub mod two_opt;

pub use error::{Error, Result};
pub use model::{Cost, Metric, OrderedPointSet, Point, Tour, WeightedGraph, DEFAULT_EPS};
