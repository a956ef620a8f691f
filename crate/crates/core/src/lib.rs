//! Permutation-group toolkit for building vertex- and arc-transitive
//! digraphs with prescribed in- and out-local actions.

pub mod action;
pub mod arithmetic;
pub mod catalog;
pub mod chain;
pub mod compat;
pub mod digraph;
pub mod error;
pub mod group;
pub mod iso;
pub mod perm;
pub mod qp;
pub mod selftest;
pub mod simple;
pub mod structure;

pub use error::{Error, Result};
pub use group::{PermGroup, SiftResult};
pub use perm::Permutation;
