//! Doubled Clifford torus surfaces in the round 3-sphere.
//!
//! The crate builds the glued initial surfaces (two parallel tori joined by a
//! lattice of catenoidal bridges), verifies the quantitative estimates that
//! are checkable at desk scale (metric identities, curvature bounds, spectral
//! structure of the linearized operator, balancing forces), and runs a
//! Newton-type outer iteration that drives the discrete surface toward
//! minimality.
//!
//! Modules follow the pipeline:
//!
//! * [`ambient`] — the coordinate system on S³(1), its metric, Christoffel
//!   symbols, isometries and the Killing field used for balancing.
//! * [`initsurf`] — construction parameters, profile and cut-off functions,
//!   the triangulated fundamental cell, region decomposition and weights.
//! * [`geomq`] — fundamental forms, normals and mean curvature, both
//!   analytically per chart and discretely on the mesh; perturbations and the
//!   linearization ladder.
//! * [`specsolve`] — the discrete linearized operator in its conformal
//!   gauges, symmetry reduction, low spectrum, neck diagnostics and the
//!   solve-modulo-kernel contract.
//! * [`balance`] — first-variation vertical force in interior and boundary
//!   form, and the displacement update derived from it.
//! * [`driver`] — the outer fixed-point loop, embeddedness checks,
//!   configuration, reporting and file exports.

pub mod ambient;
pub mod balance;
pub mod cutoff;
pub mod driver;
pub mod geomq;
pub mod initsurf;
pub mod jet;
pub mod linalg;
pub mod specsolve;

mod error;

pub use error::{Error, Result};
