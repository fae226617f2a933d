use std::time::Instant;

use serde::Serialize;

use super::cluster_first_route_second;
use crate::clustering::DbscanParams;
use crate::error::{Error, ErrorCategory, Result};
use crate::exact::{solve_exact, EXACT_RECOMMENDED_CLIENTS};
use crate::model::{check_solution_feasibility, DistanceMatrix, Instance, Method, Solution, TOLERANCE};
use crate::savings::clarke_wright;

#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub methods: Vec<Method>,
    pub dbscan: DbscanParams,
    pub node_limit: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MethodStatus {
    Solved,
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodRecord {
    pub method: Method,
    #[serde(flatten)]
    pub status: MethodStatus,
    pub total_cost: Option<f64>,
    pub route_count: Option<usize>,
    /// Only reported for the exact method.
    pub optimal: Option<bool>,
    pub wall_time_ms: f64,
    /// Lowest cost among solved methods (ties all flagged).
    pub cheapest: bool,
    /// Fewest routes among solved methods (ties all flagged).
    pub fewest_routes: bool,
    #[serde(skip)]
    pub solution: Option<Solution>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub instance: String,
    pub customers: usize,
    pub capacity: f64,
    pub records: Vec<MethodRecord>,
}

impl ComparisonReport {
    pub fn record(&self, method: Method) -> Option<&MethodRecord> {
        self.records.iter().find(|r| r.method == method)
    }
}

/// Runs each requested method, validates its output, and ranks the results.
///
/// A method that hits a size limit is reported as skipped. A solution that
/// fails validation, or an optimal exact cost above a heuristic's, is an
/// internal error.
pub fn run_compare(instance: &Instance, matrix: &DistanceMatrix, options: &CompareOptions) -> Result<ComparisonReport> {
    instance.ensure_valid()?;
    let mut records = Vec::new();
    let mut methods = options.methods.clone();
    methods.dedup();

    for method in methods {
        let started = Instant::now();
        let outcome = match method {
            Method::Savings => clarke_wright(instance, matrix),
            Method::ClusterRoute => cluster_first_route_second(instance, &options.dbscan, matrix),
            Method::Exact if instance.len() > EXACT_RECOMMENDED_CLIENTS => Err(Error::SizeLimit {
                what: "exact solver client count",
                size: instance.len(),
                limit: EXACT_RECOMMENDED_CLIENTS,
            }),
            Method::Exact => solve_exact(instance, matrix, options.node_limit),
        };
        let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

        let record = match outcome {
            Ok(solution) => {
                let violations = check_solution_feasibility(&solution, instance, matrix);
                if !violations.is_empty() {
                    return Err(Error::Internal(format!(
                        "{method} produced an infeasible solution: {}",
                        Error::InfeasibleSolution(violations)
                    )));
                }
                MethodRecord {
                    method,
                    status: MethodStatus::Solved,
                    total_cost: Some(solution.total_cost),
                    route_count: Some(solution.route_count()),
                    optimal: (method == Method::Exact).then(|| solution.is_optimal()),
                    wall_time_ms,
                    cheapest: false,
                    fewest_routes: false,
                    solution: Some(solution),
                }
            }
            Err(e) if e.category() == ErrorCategory::SizeLimit => MethodRecord {
                method,
                status: MethodStatus::Skipped { reason: e.to_string() },
                total_cost: None,
                route_count: None,
                optimal: None,
                wall_time_ms,
                cheapest: false,
                fewest_routes: false,
                solution: None,
            },
            Err(e) => return Err(e),
        };
        records.push(record);
    }

    let best_cost = records
        .iter()
        .filter_map(|r| r.total_cost)
        .fold(f64::INFINITY, f64::min);
    let best_count = records.iter().filter_map(|r| r.route_count).min();
    for r in &mut records {
        r.cheapest = r
            .total_cost
            .is_some_and(|c| c <= best_cost + TOLERANCE * best_cost.max(1.0));
        r.fewest_routes = r.route_count.is_some() && r.route_count == best_count;
    }

    if let Some(exact) = records
        .iter()
        .find(|r| r.method == Method::Exact && r.optimal == Some(true))
    {
        let exact_cost = exact.total_cost.unwrap_or(f64::INFINITY);
        for other in records.iter().filter(|r| r.method != Method::Exact) {
            if let Some(c) = other.total_cost {
                if exact_cost > c + TOLERANCE * c.max(1.0) {
                    return Err(Error::Internal(format!(
                        "optimal exact cost {exact_cost} exceeds {} cost {c}",
                        other.method
                    )));
                }
            }
        }
    }

    Ok(ComparisonReport {
        instance: instance.name.clone(),
        customers: instance.len(),
        capacity: instance.capacity,
        records,
    })
}
