//! Numerical laboratory for a coupled wave-Klein-Gordon model on a combined
//! foliation of 1+1 Minkowski space: a family of spacelike curves gluing a
//! hyperbola arc, a smooth transition band and flat constant-time tails.
//!
//! The crate provides the geometry of the foliation (`cutoffs`, `foliation`,
//! `frames`, `weights`), a second-order finite-difference evolution of the
//! model system (`solver`), foliation-adapted energies (`energy`), and
//! executable counterparts of the analytic estimates the construction is
//! designed for (`verify`): Sobolev inequalities, commutator and Hessian
//! identities, decay-exponent fits and a bootstrap growth monitor.

pub mod config;
pub mod cutoffs;
pub mod energy;
pub mod error;
pub mod foliation;
pub mod frames;
pub mod lattice;
pub mod quad;
pub mod solver;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
