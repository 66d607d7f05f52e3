//! Exact arithmetic in the monoid `M_n` of eventual injections, the
//! Houghton group `H_n` inside it, and the character theory used to pick
//! Morse functions.

mod character;
mod injection;

pub use character::{Character, MorseHeight};
pub use injection::{EventualInjection, RayPoint};
