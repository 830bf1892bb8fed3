//! Combinatorial tools for cube complexes, right-angled Artin groups and
//! their flats.

pub mod cli;
pub mod cube;
pub mod flats;
pub mod graph;
pub mod homology;
pub mod raag;
