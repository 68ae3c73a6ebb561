//! Finite simplicial, scaled and marked sets; twisted arrow constructions;
//! brute-force lifting solvers; certificates for scaled anodyne inclusions.

pub mod anodyne;
pub mod error;
pub mod fibration;
pub mod io;
pub mod partition;
pub mod scaled;
pub mod sset;
pub mod suite;
pub mod tw;
pub mod zoo;

pub use error::{Error, Result};
