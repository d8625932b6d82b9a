//! Classification engine for isotrivial fibrations `(C×F)/G` with
//! `p_g = q = 1`: singularity baskets, generating-vector search over a small
//! group catalog, exact surface invariants and Albanese-fibre minimality.

pub mod baskets;
pub mod cases;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod fixpoints;
pub mod genvec;
pub mod groups;
pub mod minimality;
pub mod pipeline;
pub mod quotient;
pub mod quotsing;

pub use error::{Error, Result};
