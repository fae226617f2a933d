//! The arc/load integer formulation of the CVRP and an exact solver for it.
//!
//! Binary `x_ij` select arcs of the complete directed graph over the depot
//! and the clients; each client has one outgoing and one incoming arc; a load
//! variable `u_i` with `q_i <= u_i <= Q` must satisfy `u_i + q_j = u_j` on
//! every selected client-to-client arc. Those load equalities both enforce
//! capacity and rule out cycles that avoid the depot.
//!
//! [`check_assignment`] evaluates that constraint set on any candidate.
//! [`solve_exact`] searches over routes directly with depth-first
//! branch-and-bound; every solution it returns maps back to an assignment
//! that passes the checker.

mod formulation;
mod oracle;
mod solver;

pub use formulation::{build_model, check_assignment, Arc, ArcAssignment, AssignmentViolation, ExactModel};
pub use oracle::{brute_force_partition_oracle, PARTITION_ORACLE_LIMIT};
pub use solver::{solve_exact, DEFAULT_NODE_LIMIT, EXACT_CLIENT_LIMIT, EXACT_RECOMMENDED_CLIENTS};
