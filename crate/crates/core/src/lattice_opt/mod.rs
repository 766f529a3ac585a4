//! Exact minimization over lattice points of rational polyhedra.

pub mod ilp;
mod lattice;
mod piecewise;
pub mod simplex;

pub use lattice::{
    minimize_lattice, LatticeProgram, LatticeProgramSpec, LatticeSolution, Row, SupportFamily,
};
pub(crate) use lattice::mask_to_vec;
pub use piecewise::{
    minimize_piecewise, minimize_piecewise_with_budget, DescentCertificate, MinTerm, OrderRow,
    PiecewiseProgram, PiecewiseSolution,
};
