pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod exactmath;
pub mod recognizability;
