//! Minimal faithful permutation representations of finite groups.
//!
//! Groups are given as Cayley tables. From the subgroup lattice and the socle
//! the crate computes the minimal degree `d(G)` of a faithful permutation
//! representation, either by the greedy construction (valid for socle
//! friendly groups) or by an exact search, and checks the structural facts
//! that connect the two.

pub mod analysis;
pub mod bitset;
pub mod caps;
pub mod catalog;
pub mod error;
pub mod group;
pub mod lattice;
pub mod minrep;
pub mod numbers;
pub mod oracle;
pub mod report;
pub mod socle;
pub mod tables;
pub mod verify;

pub use analysis::Analysis;
pub use caps::Caps;
pub use error::{Error, Result};
pub use group::GroupTable;
pub use numbers::Rational;
