//! Simulation and bounded verification of learning in the limit with
//! characteristic indices.

pub mod numbering;
pub mod seq;
pub mod text;
pub mod learners;
pub mod zoo;
pub mod criteria;
pub mod transforms;
pub mod adversaries;
pub mod harness;
