//! Computational kernel for minimal graphs over ideal polygonal domains in
//! the hyperbolic plane.
//!
//! The crate is organised around the pipeline it supports:
//!
//! - [`geom`] — closed-form geometry of the curvature −1 Poincaré disk:
//!   distances, geodesics, Busemann functions, horocycles and
//!   horocycle-truncated lengths.
//! - [`polygon`] — ideal polygons with alternating edge labels, truncated
//!   length functionals and the admissibility certificate.
//! - [`mesh`] — compact computational domains (exhaustion polygons, annuli,
//!   horocycle-truncated polygons) triangulated with tagged boundaries.
//! - [`solver`] — the vertical minimal surface equation solved by minimising
//!   the graph-area functional, plus the continuation-method barrier family.
//! - [`flux`] — the discrete flux functional on tagged boundary chains and
//!   internal cycles.
//!
//! Everything here is pure computation: no IO, no global state, and all
//! results are bit-reproducible functions of their inputs. File formats and
//! command-line orchestration live in the companion `scherk-lab` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod fmath;
pub mod geom;
pub mod polygon;
pub mod mesh;
pub mod solver;
pub mod flux;

pub use geom::{DiskPoint, Geodesic, GeomError, Horocycle, IdealPoint};
pub use polygon::{
    AdmissibilityReport, EdgeLabel, IdealPolygon, InscribedPolygon, PolygonError,
    TruncationScheme, Verdict,
};
pub use mesh::{
    BoundaryTag, ExhaustionDomain, MeshError, MeshParams, TriangulatedDomain,
};
pub use solver::{
    BarrierFamily, BarrierStep, GraphArea, ScalarField, ScherkRun, SolveReport, SolverError,
    SolverOptions,
};
pub use flux::{ArcFlux, FluxError, FluxOrdering, FluxReport};
