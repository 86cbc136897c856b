//! Certification of Calabi-Yau smoothings of isolated cone singularities.

pub mod exactnum;
pub mod wpoly;
pub mod toric;
pub mod transverse;
pub mod admissibility;
pub mod numeric;
pub mod charts;
pub mod families;
pub mod expr;
pub mod conespec;
pub mod certificate;
pub mod pipeline;
pub mod reproduce;
