//! Colored BCR, hairy and chord graphs over ℚ.
//!
//! The crate enumerates graphs up to isomorphism, generates the IHX, STU,
//! chord and 4T relations, computes quotient dimensions exactly, and
//! implements the maps χ, σ, ι and κ between the quotient spaces.

pub mod conventions;
pub mod graph;
pub mod linalg;
pub mod pbw;
pub mod relations;
pub mod spaces;
pub mod verify;
