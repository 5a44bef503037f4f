//! Analysis of nonnegative integer matrices as squares of graph adjacency
//! matrices.
//!
//! For a simple graph `G` with adjacency matrix `A`, the entry `(i, j)` of
//! `S = A²` counts the walks of length two from `i` to `j`. This crate
//! computes such squares exactly, checks candidate matrices against a
//! battery of necessary conditions, decides by exhaustive search whether a
//! candidate is the square of some graph, and builds families of pairwise
//! non-isomorphic graphs that share a single square.

pub mod analysis;
pub mod constructions;
pub mod fixtures;
pub mod formats;
pub mod graph;
pub mod iso;
pub mod realize;

pub use analysis::{
    count_c4, is_bipartite_or_disconnected, necessary_conditions, regular_row_sum_check,
    row_sum_report, support_components, C4Count, ConditionReport, IndexPartition, Ratio,
    RegularCheck, RowSumReport,
};
pub use constructions::{
    are_isomorphic, bipartite_double_cover, disjoint_union, duplication_family, is_bipartite,
    permutation_similar, verify_bip_copy, DuplicationFamily, FamilyError,
};
pub use formats::ParseError;
pub use graph::{Graph, GraphError, IntMatrix, MatrixError, NotAPermutation, Permutation};
pub use iso::{IsoBudget, IsoError};
pub use realize::{realize, realize_all, verify, Budget, RealizationOutcome, Verdict};
