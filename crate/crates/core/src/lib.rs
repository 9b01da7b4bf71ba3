//! Exact Bayesian network structure learning over family variables.
//!
//! The crate covers the instance model, the score-file format, a bounded
//! simplex LP core, cluster-cut separation, the branch-and-cut driver and the
//! instance reductions (parent-set size two, acyclic subgraph).

pub mod error;
pub mod lp;
pub mod model;
pub mod par;
pub mod reductions;
pub mod scoreio;
pub mod separation;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    cluster_lhs, decode_digraph, encode_digraph, enumerate_acyclic_digraphs, is_acyclic,
    total_score, BnslInstance, ClusterForm, DigraphAssignment, Family, FamilyIndex, FamilyVector,
};
