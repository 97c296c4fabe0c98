//! Combinatorial models of triangulated categories generated by a
//! `w`-spherical object and of the orbit categories `C_m(A_n)`.

pub mod arc;
pub mod cli;
pub mod closure;
pub mod error;
pub mod extension;
pub mod hammock;
pub mod io;
pub mod orbit;
pub mod render;
pub mod tube;

pub use arc::{Arc, Weight};
pub use error::{Error, Result};
