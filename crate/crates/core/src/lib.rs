//! Exact computations for right-angled Coxeter groups and their Hecke
//! algebras: ShortLex normal forms, Kazhdan–Lusztig polynomials, structure
//! constants, left/two-sided cells of the hyperbolic polygon groups `P_n`,
//! distinguished involutions and W-graphs.
//!
//! Everything is exact integer arithmetic except [`tessellation`], which draws
//! the Poincaré-disk picture of a cell partition.

pub mod cells;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod klpoly;
pub mod tessellation;
pub mod wgraph;
pub mod wordgeom;

pub use coxeter::{CoxeterSystem, Element, Generator, GroupSpec, SystemKind, Word};
pub use error::{Error, Result};
