//! Threshold graphs: encodings, exact lazy-walk counts, spectral radii,
//! closed-form bounds and exhaustive extremal search.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod graph_model;
pub mod spectral;
pub mod walks;

pub use error::{Error, ParseError, Result};
pub use graph_model::{parse_composition, parse_graph_spec, CompositionSpec, ThresholdGraph};
