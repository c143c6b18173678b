//! Side-paired hyperbolic polygons for irreducible Type 1 periodic mapping
//! classes, admissible pants decompositions with certified curve lengths,
//! canonical 2g-tuple encodings, and upper bounds on Weil-Petersson distance
//! between the corresponding points of moduli space.
//!
//! The pipeline is: data set -> polygon with side pairing -> hyperbolic
//! embedding -> curve system and pants decomposition -> canonical tuple ->
//! class distance and the bound `K * D + eps`.

pub mod curves;
pub mod cutter;
pub mod dataset;
pub mod encoding;
pub mod error;
pub mod metric;
pub mod pants;
pub mod pipeline;
pub mod polygon;
pub mod svg;

pub use dataset::{ActionClass, ConeDatum, DataSet};
