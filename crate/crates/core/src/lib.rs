//! Tree decompositions, exact treewidth, separators and extremal set-system
//! checks for Kneser graphs `K(n, k)`.
//!
//! Every search here is exhaustive or exact at desk scale and is paired with an
//! independent brute-force oracle in the test suite.

pub mod balance;
pub mod cli;
pub mod ekr;
pub mod exact;
pub mod formats;
pub mod graph;
pub mod kneser;
pub mod separators;
pub mod setsys;
pub mod treedec;

pub use balance::Balance;
pub use graph::Graph;
pub use kneser::{KneserGraph, KneserParams};
pub use setsys::{KSet, SetFamily};
pub use treedec::TreeDecomposition;
