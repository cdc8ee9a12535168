//! Triacontagonal coordinates for the E8 and H4 root systems.
//!
//! The crate builds both root systems from explicit formulas whose 30-fold
//! cyclic symmetry is visible in the coordinates, checks every structural
//! property of the result in exact cyclotomic arithmetic where possible, and
//! draws the projection onto the first complex coordinate.

pub mod amplitudes;
pub mod cli;
pub mod coord;
pub mod cyclo;
pub mod jsonl;
pub mod project;
pub mod render;
pub mod roots;
pub mod suite;
pub mod tolerance;
pub mod verify;
