//! Exact linear algebra shared by both theories: graded chain complexes over
//! the integers, Smith normal form, rank over the two-element field, and
//! homology with torsion.

mod chain;
pub mod gf2;
mod homology;
mod snf;

pub use chain::GradedChainComplex;
pub use homology::{HomologyGroup, HomologyTable};
pub use snf::{smith_normal_form, smith_normal_form_big};
