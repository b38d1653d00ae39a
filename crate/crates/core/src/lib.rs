//! Exact symmetric functions, wreath-product symmetric functions over `S2`,
//! and a brute-force stable-graph census used to check genus-one necklace
//! series against orbit counts.

pub mod exec;
pub mod graph;
pub mod group;
pub mod json;
pub mod series;
pub mod sym;
pub mod verify;
pub mod wreath;
