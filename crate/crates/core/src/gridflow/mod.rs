//! Positive domains on a grid, their rectangle decompositions and moduli
//! shapes, and the obstruction complex built from them.

mod domains;
mod moduli;
mod obstruction;

pub use domains::{base_domain, enumerate_positive_domains, MAX_FLOW_GRID, MAX_FLOW_MU};
pub use moduli::{
    decompositions, detect_bubble_ends, moduli_shape, pair_strips, BubbleEnd, Decomposition, ModuliKind, ModuliShape,
    Orientation, StripPair,
};
pub use obstruction::{cd_homology, obstruction_complex, obstruction_complex_with, ObstructionComplex, MAX_OBSTRUCTION_GRID};
