//! Numerical verification toolkit for the tripartite state families `σ_b`
//! (2⊗2⊗2) and `ρ_a` (2n⊗2n⊗2n): partial transposes under every bipartite
//! split, rank and inertia, range-criterion checks, Schmidt-rank-2
//! distillability searches and projector compressions.

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod bipartition;
pub mod claims;
pub mod criteria;
pub mod distill;
pub mod error;
pub mod io;
pub mod party;
pub mod quadform;
pub mod relations;
pub mod search;
pub mod states;
pub mod tensor;

pub use error::{Error, Result};
