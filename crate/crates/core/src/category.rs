//! Everything derived from one oriented Dynkin diagram, built once and shared read-only.

use std::sync::OnceLock;

use crate::cluster_ar::ClusterArQuiver;
use crate::dynkin::{DynkinType, Orientation};
use crate::error::Result;
use crate::hammock::{enumerate_tilting_modules, HammockTable};
use crate::seed::MutationGraph;

/// `Γ_C` with its hammock table; the mutation graph and tilting modules are built on first use.
#[derive(Debug)]
pub struct ClusterCategory {
    ar: ClusterArQuiver,
    hammocks: HammockTable,
    graph: OnceLock<Result<MutationGraph>>,
    tilting_modules: OnceLock<Result<Vec<Vec<usize>>>>,
}

impl ClusterCategory {
    pub fn new(t: DynkinType, orientation: &Orientation) -> Result<Self> {
        Self::from_ar(ClusterArQuiver::build(t, orientation)?)
    }

    pub fn from_ar(ar: ClusterArQuiver) -> Result<Self> {
        let hammocks = HammockTable::build(&ar)?;
        Ok(ClusterCategory { ar, hammocks, graph: OnceLock::new(), tilting_modules: OnceLock::new() })
    }

    pub fn ar(&self) -> &ClusterArQuiver {
        &self.ar
    }

    pub fn hammocks(&self) -> &HammockTable {
        &self.hammocks
    }

    pub fn rank(&self) -> usize {
        self.ar.rank()
    }

    pub fn graph(&self) -> Result<&MutationGraph> {
        self.graph.get_or_init(|| MutationGraph::build(self)).as_ref().map_err(Clone::clone)
    }

    /// Tilting modules as sorted vertex lists.
    pub fn tilting_modules(&self) -> Result<&[Vec<usize>]> {
        self.tilting_modules
            .get_or_init(|| enumerate_tilting_modules(&self.ar, &self.hammocks))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }
}
