//! Fifth-order finite-volume WENO for hyperbolic conservation laws with the
//! JS, mapped (M), improved mapped (IM) and adaptive improved mapped (MAIM)
//! nonlinear weights.
//!
//! The pieces compose bottom-up:
//!
//! * [`field`]: uniform grids, cell averages with ghost layers, boundary conditions
//! * [`mapping`]: weight-mapping functions
//! * [`reconstruction`]: interface values from cell averages
//! * [`system`]: advection and Euler fluxes, eigenstructure, Lax-Friedrichs flux
//! * [`solver`]: residual assembly and SSP-RK3 stepping
//! * [`problems`]: benchmark catalog
//! * [`analysis`]: error norms, order predictors, mapping diagnostics
//! * [`runner`]: configuration, run orchestration and CSV output

pub mod analysis;
pub mod error;
pub mod field;
pub mod mapping;
pub mod problems;
pub mod reconstruction;
pub mod runner;
pub mod solver;
pub mod system;

pub use error::{Error, Result};
pub use field::{BoundaryCondition, CellField, Grid1D, Grid2D, Mesh, Side};
pub use mapping::{MaimParams, MappingKind};
pub use solver::{advance_to, CflRule, Discretization};
pub use system::SystemKind;
