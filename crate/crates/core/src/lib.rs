//! Exhaustive search for nuciferous Cayley graphs.
//!
//! A graph is nuciferous when its 0/1 adjacency matrix `A` is invertible and
//! `A⁻¹` has an all-zero diagonal and no zero off the diagonal. This crate
//! builds small groups from multiplication tables, enumerates every
//! inverse-closed connection set, certifies each Cayley graph in exact
//! integer arithmetic and groups the hits into isomorphism classes.

pub mod canon;
pub mod cayley;
pub mod certify;
pub mod fixtures;
pub mod graph;
pub mod groups;
pub mod search;

pub use canon::{canonical_form, is_isomorphic, CanonCert, CanonError, CanonicalForm};
pub use cayley::{cayley_graph, generates, ConnectionSet, ConnectionSetError};
pub use certify::{
    adjugate_exact, det_mod, is_nuciferous, vertex_deleted_nullity_is_one, Certificate,
    CertificateRecord, CertifyError, Verdict,
};
pub use graph::{BitGraph, GraphError};
pub use groups::{
    build_alternating, build_cyclic, build_dihedral, build_symmetric, direct_product,
    parse_group_spec, GroupError, GroupTable, InvolutionPairPartition,
};
pub use search::{
    dedup_cross_group, enumerate_connection_sets, search_group, GlobalClasses, GroupReport,
    SearchError, SearchOptions, SearchRecord,
};
