//! Finite pieces of the cube complex `X_n`, their vertex links, and the
//! simplicial complexes (links, nerves) derived from them.

mod cubical;
pub mod io;
mod region;
mod simplicial;

pub use cubical::{Cube, CubicalComplex, Link, LinkVertex, VertexId};
pub use region::{enumerate_region, enumerate_region_capped, enumerate_window, RegionSpec};
pub use simplicial::SimplicialComplex;

pub(crate) use cubical::submasks;
