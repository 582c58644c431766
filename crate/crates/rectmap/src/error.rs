//! Crate-wide error type.
//!
//! All fallible operations in this crate return [`Error`]. Variants are
//! grouped by the stage that raises them (domain validation, meshing, linear
//! solve, tiling checks, map evaluation) so that callers — in particular the
//! CLI — can translate them into stable exit codes without string matching.

use thiserror::Error;

/// Errors raised by domain parsing, meshing, solving, and map evaluation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // ---- domain ------------------------------------------------------------
    /// The boundary polyline is not a simple closed curve.
    #[error("boundary is not a simple closed polyline: {0}")]
    NotJordan(String),
    /// The four marked points do not appear in clockwise cyclic order.
    #[error("marks are not in clockwise cyclic order along the boundary")]
    MarksNotClockwise,
    /// Two or more marked points coincide.
    #[error("marked boundary points are not pairwise distinct")]
    MarksNotDistinct,
    /// The input document violates the domain schema.
    #[error("domain schema violation: {0}")]
    SchemaError(String),

    // ---- mesh --------------------------------------------------------------
    /// The seed point is not strictly inside the domain.
    #[error("seed point ({0}, {1}) is not strictly inside the domain")]
    SeedOutside(f64, f64),
    /// The lattice at the requested level is too coarse to mesh the domain.
    #[error("mesh level {level} is too coarse: {reason}")]
    MeshTooCoarse { level: u32, reason: String },
    /// Two lattice edges sharing a vertex cross opposite boundary arcs.
    #[error(
        "level {level}: adjacent lattice edges at ({x}, {y}) cross opposite arcs {arcs}; \
         increase the level"
    )]
    OppositeArcViolation {
        level: u32,
        x: f64,
        y: f64,
        arcs: String,
    },
    /// One of the four boundary vertex classes came out empty.
    #[error("level {level}: boundary class {class} is empty; increase the level")]
    EmptyBoundaryClass { level: u32, class: String },
    /// Internal graph is unexpectedly disconnected.
    #[error("mesh graph is disconnected: {0}")]
    Disconnected(String),
    /// Internal consistency failure while embedding the contracted graph.
    #[error("planar embedding failed (mesher bug?): {0}")]
    NonPlanarEmbedding(String),

    // ---- harmonic ----------------------------------------------------------
    /// The linear solver did not reach the requested tolerance.
    #[error(
        "harmonic solve did not converge: residual {residual:.3e} after {iterations} \
         iterations (tolerance {tolerance:.3e})"
    )]
    SolveDiverged {
        residual: f64,
        iterations: usize,
        tolerance: f64,
    },

    // ---- conjugate ---------------------------------------------------------
    /// The dual pole was not reachable when integrating the conjugate.
    #[error("dual pole unreachable while integrating conjugate potential")]
    PoleUnreachable,

    // ---- tiling ------------------------------------------------------------
    /// Tiling inputs disagree (wrong mesh/flow/conjugate pairing).
    #[error("inconsistent tiling inputs: {0}")]
    InconsistentFields(String),
    /// A tiling validation check exceeded its tolerance.
    #[error("tiling validation failed: {0}")]
    ValidationFailed(String),
    /// The primal/dual tiling comparison exceeded its tolerance.
    #[error("duality check failed: {0}")]
    DualityViolated(String),

    // ---- mapper ------------------------------------------------------------
    /// A discrete partial derivative needs a lattice neighbor that is absent.
    #[error("missing lattice neighbor at ({0}, {1}) for discrete derivative")]
    MissingNeighbor(i64, i64),
    /// The queried vertex is not an interior degree-4 lattice vertex.
    #[error("vertex ({0}, {1}) is not an interior degree-4 lattice vertex")]
    NotInterior(i64, i64),
}

/// Coarse classification used by the CLI to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Invalid input or a validation check that failed (exit 2).
    Validation,
    /// Numerical solve failure (exit 3).
    Solver,
}

impl Error {
    /// Classify the error for exit-code mapping.
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::SolveDiverged { .. } => ErrorClass::Solver,
            _ => ErrorClass::Validation,
        }
    }

    /// Name of the module that raises this error, for machine-readable records.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            NotJordan(_) | MarksNotClockwise | MarksNotDistinct | SchemaError(_) => "domain",
            SeedOutside(..)
            | MeshTooCoarse { .. }
            | OppositeArcViolation { .. }
            | EmptyBoundaryClass { .. }
            | Disconnected(_)
            | NonPlanarEmbedding(_) => "mesh",
            SolveDiverged { .. } => "harmonic",
            PoleUnreachable => "conjugate",
            InconsistentFields(_) | ValidationFailed(_) | DualityViolated(_) => "tiling",
            MissingNeighbor(..) | NotInterior(..) => "mapper",
        }
    }

    /// Short stable identifier (the variant name) for machine-readable records.
    pub fn name(&self) -> &'static str {
        use Error::*;
        match self {
            NotJordan(_) => "NotJordan",
            MarksNotClockwise => "MarksNotClockwise",
            MarksNotDistinct => "MarksNotDistinct",
            SchemaError(_) => "SchemaError",
            SeedOutside(..) => "SeedOutside",
            MeshTooCoarse { .. } => "MeshTooCoarse",
            OppositeArcViolation { .. } => "OppositeArcViolation",
            EmptyBoundaryClass { .. } => "EmptyBoundaryClass",
            Disconnected(_) => "Disconnected",
            NonPlanarEmbedding(_) => "NonPlanarEmbedding",
            SolveDiverged { .. } => "SolveDiverged",
            PoleUnreachable => "PoleUnreachable",
            InconsistentFields(_) => "InconsistentFields",
            ValidationFailed(_) => "ValidationFailed",
            DualityViolated(_) => "DualityViolated",
            MissingNeighbor(..) => "MissingNeighbor",
            NotInterior(..) => "NotInterior",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
