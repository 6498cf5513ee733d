//! Cube of resolutions and the Khovanov chain complex of a planar diagram.

mod complex;
mod diagram;
mod ladybug;
mod resolution;

pub use complex::{
    edge_map, khovanov_complex, khovanov_homology, standard_sign_assignment, EdgeMap, KhGenerator, KhovanovComplex,
    Saddle, SignAssignment,
};
pub use diagram::{parse_pd, LinkDiagram, MAX_CROSSINGS};
pub use ladybug::{detect_ladybugs, right_arcs, LadybugFace, LadybugMatcher, LadybugPolicy};
pub use resolution::{partner, resolve, Circle, Pass, Resolution, Vertex};
