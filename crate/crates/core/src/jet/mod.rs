//! Jet schemes of hypersurfaces: equations, point counts over prime
//! fields, Newton lifting of truncated arcs and the jet-based singularity
//! classification.

mod arc;
mod classify;
mod count;
pub mod field;
mod lift;
mod measure;
mod poly;
mod system;

pub use arc::{series_mul, series_ord, TruncatedArc};
pub use classify::{
    classify_hypersurface, classify_polynomial, ClassifyMethod, ClassifyOptions, Classification,
    JetLevelReport, SingularityClass,
};
pub use count::{
    count_jet_points, ContactConstraint, ContactQuery, ContactRelation, ContactTarget,
    DEFAULT_EVAL_BUDGET,
};
pub use field::Field;
pub use lift::{check_fiber_stability, newton_lift};
pub use measure::{empirical_codim, empirical_codim_ambient, CountRecord, EmpiricalDim};
pub use poly::{Exponent, Poly};
pub use system::{jet_coefficients, jet_equations, jet_var, weighted_degree, JetSystem};
