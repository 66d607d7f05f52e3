//! Morse-theoretic structure on finite regions: heights and extremal links,
//! blankets and their ray germs, and the cover whose nerve detects the
//! failure of higher finiteness.

mod blankets;
mod cover;
mod links;

pub use blankets::{
    blanket_components, blanket_intersections, blanket_mask, germ_violations, ray_germ_invariant, Blanket,
    IntersectionSummary, RayGerm,
};
pub use cover::{
    cover_pieces, intersection_acyclicity, nerve, nerve_shape, sphere_witness, strong_nerve_hypotheses, Cover,
    CoverPiece, IntersectionCheck, NerveShape, SphereWitness, StrongNerveReport,
};
pub use links::{
    ascending_link, cube_rule_violations, descending_link, full_link_model, is_join_of_parts, is_link_complete,
    morse_gap_violations, morse_height, superlevel_region, Extremum,
};
