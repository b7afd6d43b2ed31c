//! Linear programs: model, bundled simplex solver and the bound programs.

mod bounds;
mod certificate;
mod model;
mod simplex;

pub use bounds::{
    del_classic, del_classic_model, del_constrained, del_constrained_model, del_constrained_sym,
    del_constrained_sym_model, del_full, del_full_model, gensph, gensph_model, gensph_radius,
    BoundReport, Program, MAX_FULL_LP_N, MAX_GENSPH_N,
};
pub use certificate::{dual_certificate_bound, CERTIFICATE_TOL, MAX_CERTIFICATE_N};
pub use model::{Coeffs, LpModel, Relation, Row, Sense};
pub use simplex::{solve, solve_with, LpSolution, LpStatus, SolverOptions};
