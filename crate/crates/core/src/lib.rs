//! Core library for reconstructing cycle-free partial orders from their
//! automorphism groups.

pub mod a5;
pub mod error;
pub mod formula;
pub mod generators;
pub mod group;
pub mod instance;
pub mod perm;
pub mod reconstruct;
