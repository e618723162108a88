//! File formats, SVG rendering, and the acceptance suite for the
//! pseudo-disk hypergraph toolkit; the `pdcolor` binary wires these to a
//! command line.

pub mod error;
pub mod formats;
pub mod suite;
pub mod svg;
