//! Exact computations with group-graded algebras over cyclotomic fields:
//! twisted group algebras, graded matrix algebras, their graded embeddings
//! and isomorphisms, and graded multilinear identities.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod cyclo;
pub mod embeddings;
pub mod error;
pub mod graded_matrix;
pub mod group;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod pi;
pub mod twisted;
pub mod zmod;

pub use error::{Error, Result};
