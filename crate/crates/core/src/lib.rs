//! Finite-group engine for conjugacy-class products.
//!
//! Groups are dense multiplication tables ([`group`]); [`classes`] computes
//! conjugacy classes, class products and the class-count function η;
//! [`structure`] provides centralizers, cores, derived and chief series and
//! quotients; [`theorems`] checks bounds relating η(AA⁻¹) to the derived
//! length of `G/C_G(A)` across a corpus of groups.

pub mod classes;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod group;
pub mod naive;
pub mod structure;
pub mod theorems;

pub use error::{GroupError, Result};
pub use group::{Elem, ElementSet, Group, Subgroup};
