//! Exact integer homology: sparse matrices, Smith normal form, chain
//! complexes, homology groups and maps induced by inclusions.

mod chain;
mod homology;
mod induced;
pub mod lattice;
mod matrix;
mod snf;

pub use chain::ChainComplex;
pub use homology::{homology, homology_through, HomologyResult};
pub use induced::{check_chain_inclusion, induced_inclusion_map, InducedMapVerdict};
pub use matrix::IntegerMatrix;
pub use snf::{rank, smith_normal_form, smith_normal_form_auto, SmithForm};
