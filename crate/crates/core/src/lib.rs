//! Combinatorial flow categories behind two knot homology theories.
//!
//! The Khovanov side builds the cube of resolutions of a planar diagram, the
//! signed Khovanov complex, and the Lipshitz–Sarkar moduli spaces of
//! dimension at most two (including the ladybug matching). The grid side
//! builds the tilde grid complex, enumerates positive domains with their
//! rectangle decompositions, and assembles the obstruction complex of
//! positive domains.
//!
//! Everything reduces to exact integer (or mod 2) linear algebra in
//! [`complexes`].

pub mod cli;
pub mod complexes;
pub mod error;
pub mod flowcat;
pub mod grid;
pub mod gridflow;
pub mod khovanov;

pub use error::{Error, Result};
