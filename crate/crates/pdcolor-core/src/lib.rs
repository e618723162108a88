//! Intersection hypergraphs of pseudo-disk families.
//!
//! Builds intersection hypergraphs of a finite family `B` of regions with
//! respect to a family `F` (explicit, or all points of the plane), derives
//! Delaunay-type graphs, colors them properly and conflict-free, and verifies
//! every per-instance checkable claim (planarity, 4-colorability,
//! VC-dimension, union complexity) with brute-force oracles.
//!
//! The crate is `no_std` + `alloc`; all coordinates are exact rationals and
//! every structural claim rests on exact predicates. IO, file formats and the
//! CLI live in the companion `pdcolor` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arrangement;
pub mod coloring;
pub mod constructions;
pub mod geom;
pub mod hypergraph;
pub mod planarity;
pub mod verify;

pub use geom::{Point2, Rat, Region, RegionKind, Scene};
pub use hypergraph::{Graph, IntersectionHypergraph};
