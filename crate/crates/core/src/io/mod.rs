//! Instance generators, text formats and the verification harness.

pub mod format;
pub mod generate;
pub mod harness;

pub use format::{parse_graph, parse_instance, write_graph, write_instance};
pub use generate::{generate, Family, GeneratorSpec};
