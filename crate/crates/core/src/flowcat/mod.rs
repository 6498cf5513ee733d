//! Framed flow categories with moduli of dimension at most 2, and their
//! cell realizations.

mod category;
mod cjs;
mod letters;
mod permutohedron;

pub use category::{
    build_moduli_dim0, build_moduli_dim1, build_moduli_dim2, check_boundary_coherence, coherence_failures,
    hypercube_category, khovanov_category, EdgeLabel, FlowCategory, FlowObject, FlowlineMatcher, FramedPoint, Interval,
    NoMatching, Polygon,
};
pub use cjs::{cjs_realize, CWData, Cell};
pub use letters::{ladybug_letters, ladybug_pairings, LadybugPairing};
pub use permutohedron::{permutohedron, OrderedPartition, Permutohedron};
