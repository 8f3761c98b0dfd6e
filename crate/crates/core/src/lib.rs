//! Exact combinatorics behind induced braid-group modules attached to
//! extensions of complex reflection groups.
//!
//! The pipeline runs bottom-up through the modules:
//! [`reflgrp`] enumerates W and its hyperplane arrangement, [`extdata`] holds
//! the extension 1 → I → W̃ → W → 1 with its splitting and characters,
//! [`chi`] derives W_χ, e_α and W_χ⁰, [`carousel`] builds the rank-one
//! monodromy model, [`hecke`] constructs H_{W_χ⁰}, and [`induce`] assembles
//! the module M_χ. Everything is exact over cyclotomic fields ([`cyclo`]).

pub mod analysis;
pub mod carousel;
pub mod chi;
pub mod cyclo;
pub mod error;
pub mod extdata;
pub mod fixtures;
pub mod hecke;
pub mod induce;
pub mod par;
pub mod reflgrp;
pub mod selftest;

pub use error::{Error, Result};
