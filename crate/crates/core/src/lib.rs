//! Exact arithmetic for Mukai vectors on abelian surfaces with Neron-Severi
//! group `Z H`, `H^2 = 2n`: the pairing, the matrix group acting on the
//! lattice, solvers for two-term isotropic decompositions, Pell units, slope
//! intervals and binary quadratic forms.

pub mod bqf;
pub mod cli;
pub mod error;
pub mod group_g;
pub mod lattice;
pub mod numsol;
pub mod par;
pub mod presentation;
pub mod quad_arith;
pub mod tame;

pub use error::{Error, Result};
pub use group_g::{GElement, ThetaDescriptor};
pub use lattice::{IsotropicDecomposition, MukaiVector, SurfaceParams};
pub use numsol::{NumericalSolution, PellUnit, UnitPower};
pub use par::Exec;
pub use quad_arith::{RootInt, SlopeValue};
