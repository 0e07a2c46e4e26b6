//! Kernelization toolkit for distance-`r` domination-type problems on sparse graphs.
//!
//! The pipeline shrinks an instance in three layers: cores of constraint or
//! candidate vertices are peeled with water lilies ([`wideness`], [`cores`]),
//! the survivors are closed into a projection kernel ([`projections`]), and
//! gadgets translate the annotated result back into a plain instance
//! ([`kernels`]). Every stage checks its own output; [`oracle`] solves small
//! instances exactly so that equivalences can be tested end to end.

pub mod check;
pub mod constants;
pub mod cores;
pub mod domination;
pub mod error;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod oracle;
pub mod projections;
pub mod vset;
pub mod wideness;

pub use constants::{EmpiricalConstants, Metric};
pub use error::{Error, Result};
pub use graph::{Graph, PathEnd, Vertex};
