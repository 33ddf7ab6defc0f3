//! Exact lattice computations for tilt stability and the Kuznetsov component
//! of index-two Fano threefolds of Picard rank one, together with the root
//! and line combinatorics of their del Pezzo hyperplane sections.
//!
//! All arithmetic is over `Q` (see [`rational`]); floating point appears
//! nowhere in this crate.

pub mod catalog;
pub mod checks;
pub mod chern;
pub mod del_pezzo;
pub mod error;
pub mod ku;
pub mod rational;
pub mod tilt;
pub mod walls;

pub use chern::{chi_pair, hrr_chi, ChernVector, FanoContext};
pub use error::{Error, Result};
pub use ku::{ExtTable, KuClass};
pub use rational::Q;
