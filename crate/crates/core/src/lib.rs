//! Search and verification engine for sunflowers, `(a, d)`-Δ-systems,
//! intersecting families and related extremal structures in uniform
//! hypergraphs.

pub mod cli;
pub mod constructions;
pub mod delta;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod intersecting;
pub mod intersection;
pub mod io;
pub mod outcome;
pub mod report;
pub mod vertex_set;

pub use constructions::{build_counterexample, build_star, build_triple_system, DesignSpec};
pub use delta::{find_avd_system, find_sunflower, is_avd, is_semi_avb, is_sunflower, AvdWitness, DeltaSystemWitness};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use intersecting::{find_nontrivial_subfamily, is_d_simplex, is_dwise_intersecting, is_nontrivial, FamilyWitness};
pub use io::{parse_hypergraph, serialize_hypergraph};
pub use outcome::{Budget, SearchOutcome, SearchStatus, Verdict};
pub use vertex_set::VertexSet;
