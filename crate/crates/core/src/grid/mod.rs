//! Toroidal grid diagrams, their states and domains, and the tilde grid
//! complex.

mod complex;
mod diagram;
mod domain;
mod signs;

pub use complex::{
    grid_homology, rectangle_grading_drop, relative_gradings, tilde_differential, Coefficients, GridComplex,
};
pub use diagram::{enumerate_states, parse_grid, state_rank, GridDiagram, GridState, MAX_GRID};
pub use domain::{maslov_index, rectangles, rectangles_from, GridDomain, GridRectangle};
pub use signs::{
    sign_violations, solve_sign_assignment, solve_sign_assignment_with, AnnulusConvention, SignAssignmentGrid,
    SignScope, MAX_SIGN_GRID,
};
