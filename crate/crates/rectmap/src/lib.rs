//! Rectangle maps of Jordan domains via square tilings of lattice networks.
//!
//! Given a simple closed polygon with four marked boundary points, this crate
//! approximates the conformal map onto a rectangle that carries the four
//! marked points to the rectangle's corners. The approximation is fully
//! combinatorial: the domain is meshed by the part of the dyadic lattice it
//! contains, a discrete harmonic potential with two contracted poles is
//! solved on that mesh, and the resulting edge flows produce a tiling of a
//! rectangle by squares — one square per mesh edge — whose layout converges
//! to the conformal rectangle map as the lattice is refined.
//!
//! The pipeline is split into small stages, each usable on its own:
//!
//! 1. [`domain`] — parse and validate the marked polygon.
//! 2. [`mesh`] — extract the lattice subgraph, classify its boundary
//!    vertices against the four arcs, and contract the top and bottom
//!    classes into poles, producing a combinatorial planar map.
//! 3. [`harmonic`] — solve the discrete Dirichlet problem for the pole
//!    potential and derive edge flows.
//! 4. [`conjugate`] — integrate the conjugate potential over the faces of
//!    the map.
//! 5. [`tiling`] — lay out one square per edge and validate the tiling.
//! 6. [`mapper`] — evaluate the approximate rectangle map at points of the
//!    domain and assemble convergence reports.

pub mod conjugate;
pub mod domain;
pub mod error;
pub(crate) mod geom;
pub mod harmonic;
pub mod map;
pub mod mapper;
pub mod mesh;
pub mod pipeline;
#[cfg(test)]
pub(crate) mod testutil;
pub mod tiling;

pub use error::{Error, ErrorClass, Result};
