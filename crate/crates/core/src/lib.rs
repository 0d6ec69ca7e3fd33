//! Exact counting of graph imbeddings up to symmetry.
//!
//! The central object is the imbedding sum `Z(G)`: the average over the
//! automorphism group of `G` of the number of rotation systems each
//! automorphism fixes, weighted by its cycle type. Substituting figure
//! series into it counts colored configurations across all unlabeled maps.

pub mod arith;
pub mod closed_forms;
pub mod cycle_index;
pub mod decomposition;
pub mod domain;
pub mod error;
pub mod graph;
pub mod group;
pub mod imbedding;
pub mod oracle;
pub mod perm;
pub mod polya;
pub mod rotation;
pub mod series;
pub mod tables;

pub use cycle_index::{CycleIndex, JsonTerm};
pub use domain::{loop_projection, Projection, TypeDomain};
pub use error::{Error, Result};
pub use graph::Graph;
pub use group::PermutationGroup;
pub use imbedding::{fixed_set_size, imbedding_sum, imbedding_sum_with_group, unlabeled_count};
pub use perm::{CycleType, Permutation};
pub use rotation::RotationSystem;
pub use series::{FigureSeries, WeightSeries};
