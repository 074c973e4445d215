//! Test-only helpers: brute-force oracles that share no code with the
//! library's algorithms, and seeded generators for random instances.

pub mod area;
pub mod random;
pub mod sticky;

pub use area::{clip_area, inclusion_exclusion, monte_carlo, MonteCarlo};
pub use random::{random_members, random_polygon, random_tree, rng};
pub use sticky::all_sticky_maps;
