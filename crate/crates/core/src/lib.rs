//! Exact computation of the domination, location, metric-location-domination
//! and location-domination numbers of small graphs, with isomorph-free
//! enumeration, the named extremal families, and executable verification of
//! the Nordhaus-Gaddum-type bounds these invariants satisfy.

pub mod canon;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod verifier;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{EnumerationError, FamilyError, Graph6Error, GraphError, VerifyError};
pub use graph::{Connectivity, Dist, DistanceMatrix, Graph, MetricVector, VertexSet};
pub use invariants::{ChainReport, InvariantKind, InvariantResult};
