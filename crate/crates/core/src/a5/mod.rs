//! A5 machinery: the canonical model, 60-tuples, censuses, and constructed
//! families.

pub mod census;
pub mod constructions;
pub mod model;
pub mod tuple;
