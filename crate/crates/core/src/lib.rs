//! Finite and combinatorial machinery behind parabolic induction for
//! reductive groups with finite abelian component group.
//!
//! The crate works entirely at the level of (extended) Weyl groups and root
//! data: it enumerates `W ⋊ Γ`, computes R-groups and their semidirect
//! complements, checks the Clifford-theory counting identities that link a
//! disconnected group to its identity component, and parameterizes the
//! constituents of an induced representation by characters of a central
//! extension of the R-group.

pub mod clifford;
pub mod error;
pub mod extension;
pub mod groupcore;
pub mod linalg;
pub mod parabolic;
pub mod rgroup;
pub mod rootsys;

pub use error::{Error, Result};
