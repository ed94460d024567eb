//! Code-generating constructions: regular and partial regular graphs,
//! the modular construction, generalized ring codes and projective planes.

mod graph;
mod modular;
mod prg;
mod projective;
mod ring;

pub use graph::{circulant_regular_graph, code_from_graph, regular_graph_code, Graph};
pub use modular::modular_code;
pub use prg::{
    circulant_from_polynomial, half_shift_matrix, partial_regular_graph, wfr_from_prg,
    CirculantSpec, PermutationMatrix,
};
pub use projective::projective_plane_code;
pub use ring::ring_code;
