//! Tropical friezes on cluster categories of Dynkin quivers.
//!
//! The cluster category is handled purely combinatorially through its finite
//! Auslander–Reiten quiver; see [`cluster_ar`] for the conventions.

pub mod category;
pub mod classical;
pub mod cluster_ar;
pub mod dynkin;
pub mod error;
pub mod frieze;
pub mod harness;
pub mod hammock;
pub mod io;
pub mod ringel;
pub mod seed;

pub use category::ClusterCategory;
pub use error::{Error, Result};
