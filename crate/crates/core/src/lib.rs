//! Exact point counting, zeta functions and Newton polygons of curves over
//! finite fields, with the combinatorics of Ekedahl–Oort types, Newton
//! polygon strata dimensions, and a supersingular Artin–Schreier
//! construction.

pub mod construct;
pub mod curves;
pub mod eo;
pub mod ffield;
mod linalg;
pub mod npoly;
pub mod poly;
pub mod selftest;
pub mod strata;
pub mod zeta;
