//! Capacitated vehicle routing toolkit.
//!
//! Three solution tracks share one instance model:
//!
//! * [`savings`]: the Clarke-Wright savings heuristic.
//! * [`clustering`] + [`christofides`], composed in [`pipeline`]: capacity-aware
//!   DBSCAN groups customers into vehicle-sized clusters, then each cluster
//!   (plus the depot) is routed with Christofides' 3/2-approximation.
//! * [`exact`]: the arc/load integer formulation with a constraint checker and
//!   a branch-and-bound solver that is exact for small instances.

pub mod christofides;
pub mod clustering;
pub mod error;
pub mod exact;
pub mod model;
pub mod pipeline;
pub mod savings;

pub use error::{Error, ErrorCategory, Result};
pub use model::{
    build_distance_matrix, check_solution_feasibility, euclidean_distance, generate_instance, route_cost,
    validate_instance, DistanceMatrix, GeneratorConfig, Instance, Method, Node, NodeId, Route, Solution, DEPOT_ID,
    TOLERANCE,
};
