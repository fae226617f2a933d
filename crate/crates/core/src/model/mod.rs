//! Instances, distances, routes and solutions.

mod generate;
mod instance;
mod matrix;
mod solution;

pub use generate::{generate_instance, GeneratorConfig};
pub use instance::{validate_instance, Instance, InstanceViolation, Node};
pub use matrix::{build_distance_matrix, euclidean_distance, DistanceMatrix};
pub use solution::{check_solution_feasibility, route_cost, sequence_cost, Method, Route, Solution, SolutionViolation};

/// Identifier of a vertex. The depot is always [`DEPOT_ID`].
pub type NodeId = u32;

pub const DEPOT_ID: NodeId = 0;

/// Absolute tolerance for weight, load and distance comparisons.
pub const TOLERANCE: f64 = 1e-9;

/// `a` and `b` agree to within [`TOLERANCE`], relative to their magnitude once it exceeds 1.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE * a.abs().max(b.abs()).max(1.0)
}
