//! Cluster-first route-second, method comparison and SVG output.

mod compare;
mod svg;

pub use compare::{run_compare, CompareOptions, ComparisonReport, MethodRecord, MethodStatus};
pub use svg::emit_svg;

use rayon::prelude::*;

use crate::christofides::christofides_tour;
use crate::clustering::{capacitated_dbscan, ClusteringOutcome, DbscanParams};
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, Method, NodeId, Route, Solution, DEPOT_ID};

/// Whether per-cluster routing runs on the rayon pool. Output is identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Capacitated DBSCAN, then a Christofides tour over each cluster plus the depot.
pub fn cluster_first_route_second(
    instance: &Instance,
    params: &DbscanParams,
    matrix: &DistanceMatrix,
) -> Result<Solution> {
    cluster_first_route_second_with(instance, params, matrix, Execution::default())
}

pub fn cluster_first_route_second_with(
    instance: &Instance,
    params: &DbscanParams,
    matrix: &DistanceMatrix,
    execution: Execution,
) -> Result<Solution> {
    instance.ensure_valid()?;
    let outcome = capacitated_dbscan(instance, params, matrix)?;
    let routes = route_clusters(&outcome, instance, matrix, execution)?;
    Ok(Solution::new(Method::ClusterRoute, routes)
        .with_param("eps", params.eps)
        .with_param("min_wt", params.min_wt)
        .with_param("max_wt", params.max_wt)
        .with_param("clusters", outcome.clusters.len())
        .with_param("noise", outcome.noise_ids.len()))
}

/// Routes every cluster of `outcome`; routes come back in cluster order.
pub fn route_clusters(
    outcome: &ClusteringOutcome,
    instance: &Instance,
    matrix: &DistanceMatrix,
    execution: Execution,
) -> Result<Vec<Route>> {
    let route_one = |(index, cluster): (usize, &crate::clustering::Cluster)| -> Result<Route> {
        let mut subset: Vec<NodeId> = vec![DEPOT_ID];
        subset.extend(cluster.member_ids());
        let tour = christofides_tour(&subset, matrix).map_err(|e| Error::ClusterRouting {
            cluster: index,
            members: cluster.len(),
            source: Box::new(e),
        })?;
        debug_assert_eq!(tour.order[0], DEPOT_ID);
        Route::oriented(tour.order[1..].to_vec(), instance, matrix)
    };
    match execution {
        Execution::Serial => outcome.clusters.iter().enumerate().map(route_one).collect(),
        Execution::Parallel => outcome.clusters.par_iter().enumerate().map(route_one).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::christofides::christofides_tour;
    use crate::model::{build_distance_matrix, check_solution_feasibility, Node};

    fn instance(points: &[(f64, f64)], demand: f64, capacity: f64) -> Instance {
        Instance {
            name: "t".into(),
            depot: Node::depot(0.0, 0.0),
            customers: points
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| Node::customer(k as NodeId + 1, x, y, demand))
                .collect(),
            capacity,
        }
    }

    #[test]
    fn isolated_customers_get_singleton_routes() {
        let inst = instance(&[(10.0, 0.0), (0.0, 10.0), (-10.0, 0.0)], 1.0, 5.0);
        let m = build_distance_matrix(&inst);
        let p = DbscanParams {
            eps: 1.0,
            min_wt: 1.0,
            max_wt: 5.0,
        };
        let s = cluster_first_route_second(&inst, &p, &m).unwrap();
        assert_eq!(s.routes.len(), 3);
        assert!((s.total_cost - 60.0).abs() < 1e-9);
    }

    #[test]
    fn one_cluster_equals_christofides_over_everything() {
        let inst = instance(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)], 1.0, 4.0);
        let m = build_distance_matrix(&inst);
        let p = DbscanParams {
            eps: 2.0,
            min_wt: 1.0,
            max_wt: 4.0,
        };
        let s = cluster_first_route_second(&inst, &p, &m).unwrap();
        assert_eq!(s.routes.len(), 1);
        let tour = christofides_tour(&[0, 1, 2, 3, 4], &m).unwrap();
        assert!((s.total_cost - tour.length).abs() < 1e-9);
        assert!(check_solution_feasibility(&s, &inst, &m).is_empty());
    }

    #[test]
    fn two_groups_two_routes() {
        let inst = instance(
            &[
                (50.0, 0.0),
                (51.0, 0.0),
                (50.0, 1.0),
                (-50.0, 0.0),
                (-51.0, 0.0),
                (-50.0, -1.0),
            ],
            1.0,
            10.0,
        );
        let m = build_distance_matrix(&inst);
        let p = DbscanParams {
            eps: 2.0,
            min_wt: 1.0,
            max_wt: 10.0,
        };
        let s = cluster_first_route_second(&inst, &p, &m).unwrap();
        assert_eq!(s.routes.len(), 2);
        assert_eq!(s.routes[0].customer_ids.len(), 3);
        let first = christofides_tour(&[0, 1, 2, 3], &m).unwrap();
        assert!((s.routes[0].cost - first.length).abs() < 1e-9);
    }

    #[test]
    fn oversized_cluster_names_the_cluster() {
        // Twenty radial spokes: the tree has at least twenty leaves, so the odd
        // set is beyond the exact matching limit.
        let mut pts = Vec::new();
        for leg in 0..20 {
            let a = leg as f64 * std::f64::consts::TAU / 20.0;
            for step in 0..4 {
                let r = 1.0 + 0.1 * step as f64;
                pts.push((100.0 + r * a.cos(), r * a.sin()));
            }
        }
        let inst = instance(&pts, 1.0, 80.0);
        let m = build_distance_matrix(&inst);
        let p = DbscanParams {
            eps: 10.0,
            min_wt: 1.0,
            max_wt: 80.0,
        };
        let err = cluster_first_route_second(&inst, &p, &m).unwrap_err();
        assert!(matches!(
            err,
            Error::ClusterRouting {
                cluster: 0,
                members: 80,
                ..
            }
        ));
        assert_eq!(err.category(), crate::error::ErrorCategory::SizeLimit);
        assert!(err.to_string().contains("cluster 0"));
    }

    #[test]
    fn serial_and_parallel_agree() {
        let inst = crate::model::generate_instance(&crate::model::GeneratorConfig {
            seed: 5,
            n: 40,
            capacity: 12.0,
            demand_range: (1.0, 3.0),
            coord_range: (0.0, 100.0),
        })
        .unwrap();
        let m = build_distance_matrix(&inst);
        let p = DbscanParams::with_defaults(&inst, &m, None, None, None);
        let a = cluster_first_route_second_with(&inst, &p, &m, Execution::Serial).unwrap();
        let b = cluster_first_route_second_with(&inst, &p, &m, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(check_solution_feasibility(&a, &inst, &m).is_empty());
    }
}
