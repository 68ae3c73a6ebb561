//! Finite simplicial sets in Eilenberg–Zilber normal form.

pub mod construct;
pub mod hom;
pub mod iso;
pub mod map;
pub mod ordmap;
pub mod poset;
pub mod set;
pub mod simplex;

pub use construct::{
    collapse, collapse_named, disjoint_union, glue, join, nerve, op_simplex, opposite, ordered_complex, product, pushout,
    quotient_by, simplex_family, simplex_subcomplex, standard, Join, Product, SimplexKind,
};
pub use hom::{extensions, hom_enum, SimplexTable};
pub use iso::isomorphic;
pub use map::SimplicialMap;
pub use poset::FinitePoset;
pub use set::SimplicialSet;
pub use simplex::{Simplex, SimplexId};
