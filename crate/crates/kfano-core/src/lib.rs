// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact combinatorics of Q-Fano complexity-one G-varieties: moment
//! polytopes, Duistermaat-Heckman integrals, Futaki invariants,
//! non-Archimedean functionals and the K-stability verdict, plus the
//! lattice-sum oracles used to cross-check them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod linalg;
pub mod integrate;
pub mod polyhedra;
pub mod variety;
pub mod afun;
pub mod lp;
pub mod invariants;
pub mod testconfig;
pub mod stability;
pub mod latsum;

pub use arith::{rat, int, AffForm, Affine, Covector, Rat, Weight};
pub use error::{Error, Result};
