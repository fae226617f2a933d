use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{approx_eq, DistanceMatrix, Instance, NodeId, DEPOT_ID, TOLERANCE};
use crate::error::{Error, Result};

/// One vehicle trip. The depot is implicit at both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    #[serde(rename = "customers")]
    pub customer_ids: Vec<NodeId>,
    pub load: f64,
    pub cost: f64,
}

impl Route {
    /// Builds a route over `customer_ids`, computing its load and closed-tour cost.
    pub fn new(customer_ids: Vec<NodeId>, instance: &Instance, matrix: &DistanceMatrix) -> Result<Self> {
        let cost = sequence_cost(&customer_ids, matrix)?;
        let load = customer_ids
            .iter()
            .map(|&id| instance.customer(id).map(|c| c.demand).ok_or(Error::UnknownId(id)))
            .sum::<Result<f64>>()?;
        Ok(Route {
            customer_ids,
            load,
            cost,
        })
    }

    /// Like [`Route::new`], but stores whichever of the sequence and its
    /// reversal is lexicographically smaller.
    pub fn oriented(mut customer_ids: Vec<NodeId>, instance: &Instance, matrix: &DistanceMatrix) -> Result<Self> {
        let reversed: Vec<NodeId> = customer_ids.iter().rev().copied().collect();
        if reversed < customer_ids {
            customer_ids = reversed;
        }
        Self::new(customer_ids, instance, matrix)
    }

    pub fn len(&self) -> usize {
        self.customer_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.customer_ids.is_empty()
    }
}

/// Closed-tour cost depot → route → depot, recomputed from the matrix.
pub fn route_cost(route: &Route, matrix: &DistanceMatrix) -> Result<f64> {
    sequence_cost(&route.customer_ids, matrix)
}

/// Cost of visiting `ids` in order, leaving from and returning to the depot.
pub fn sequence_cost(ids: &[NodeId], matrix: &DistanceMatrix) -> Result<f64> {
    if ids.is_empty() {
        return Err(Error::EmptyRoute);
    }
    let depot = matrix.position(DEPOT_ID)?;
    let mut prev = depot;
    let mut cost = 0.0;
    for &id in ids {
        let p = matrix.position(id)?;
        cost += matrix.get(prev, p);
        prev = p;
    }
    Ok(cost + matrix.get(prev, depot))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Savings,
    ClusterRoute,
    Exact,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Savings, Method::ClusterRoute, Method::Exact];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Savings => "savings",
            Method::ClusterRoute => "cluster-route",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// A set of routes partitioning the customers, tagged with the method and
/// parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub method: Method,
    pub total_cost: f64,
    pub routes: Vec<Route>,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl Solution {
    pub fn new(method: Method, routes: Vec<Route>) -> Self {
        let total_cost = routes.iter().map(|r| r.cost).sum();
        Solution {
            method,
            total_cost,
            routes,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    /// Whether the producing solver certified optimality (only the exact solver does).
    pub fn is_optimal(&self) -> bool {
        self.params
            .get("optimal")
            .and_then(serde_json::Value::as_bool)
            .unwrap_or(false)
    }

    pub fn route_count(&self) -> usize {
        self.routes.len()
    }

    /// Parses a solution document; unknown keys are ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolutionViolation {
    EmptyRoute { route: usize },
    UnknownCustomer { route: usize, id: NodeId },
    CustomerUnserved(NodeId),
    CustomerRepeated(NodeId),
    CapacityExceeded { route: usize, load: f64, capacity: f64 },
    LoadMismatch { route: usize, stored: f64, actual: f64 },
    CostMismatch { route: usize, stored: f64, actual: f64 },
    TotalCostMismatch { stored: f64, actual: f64 },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyRoute { route } => write!(f, "route {route} is empty"),
            Self::UnknownCustomer { route, id } => {
                write!(f, "route {route} visits unknown customer {id}")
            }
            Self::CustomerUnserved(id) => write!(f, "customer {id} unserved"),
            Self::CustomerRepeated(id) => write!(f, "customer {id} served more than once"),
            Self::CapacityExceeded { route, load, capacity } => {
                write!(f, "capacity exceeded on route {route}: {load} > {capacity}")
            }
            Self::LoadMismatch { route, stored, actual } => {
                write!(f, "route {route} stores load {stored}, members sum to {actual}")
            }
            Self::CostMismatch { route, stored, actual } => {
                write!(f, "route {route} stores cost {stored}, recomputed {actual}")
            }
            Self::TotalCostMismatch { stored, actual } => {
                write!(f, "total cost {stored} differs from route sum {actual}")
            }
        }
    }
}

/// Checks partition, capacity and cost consistency. Empty means feasible.
pub fn check_solution_feasibility(
    solution: &Solution,
    instance: &Instance,
    matrix: &DistanceMatrix,
) -> Vec<SolutionViolation> {
    let mut out = Vec::new();
    let mut served = HashSet::new();
    let mut route_sum = 0.0;

    for (r, route) in solution.routes.iter().enumerate() {
        route_sum += route.cost;
        if route.customer_ids.is_empty() {
            out.push(SolutionViolation::EmptyRoute { route: r });
            continue;
        }
        let mut load = 0.0;
        let mut known = true;
        for &id in &route.customer_ids {
            match instance.customer(id) {
                Some(c) => load += c.demand,
                None => {
                    known = false;
                    out.push(SolutionViolation::UnknownCustomer { route: r, id });
                    continue;
                }
            }
            if !served.insert(id) {
                out.push(SolutionViolation::CustomerRepeated(id));
            }
        }
        if load > instance.capacity + TOLERANCE {
            out.push(SolutionViolation::CapacityExceeded {
                route: r,
                load,
                capacity: instance.capacity,
            });
        }
        if !approx_eq(load, route.load) {
            out.push(SolutionViolation::LoadMismatch {
                route: r,
                stored: route.load,
                actual: load,
            });
        }
        if known {
            if let Ok(actual) = route_cost(route, matrix) {
                if !approx_eq(actual, route.cost) {
                    out.push(SolutionViolation::CostMismatch {
                        route: r,
                        stored: route.cost,
                        actual,
                    });
                }
            }
        }
    }

    for c in &instance.customers {
        if !served.contains(&c.id) {
            out.push(SolutionViolation::CustomerUnserved(c.id));
        }
    }
    if !approx_eq(route_sum, solution.total_cost) {
        out.push(SolutionViolation::TotalCostMismatch {
            stored: solution.total_cost,
            actual: route_sum,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_distance_matrix, Node};

    fn line() -> (Instance, DistanceMatrix) {
        let inst = Instance {
            name: "line".into(),
            depot: Node::depot(0.0, 0.0),
            customers: vec![
                Node::customer(1, 1.0, 0.0, 1.0),
                Node::customer(2, 2.0, 0.0, 1.0),
                Node::customer(3, 0.0, 5.0, 2.0),
            ],
            capacity: 2.0,
        };
        let m = build_distance_matrix(&inst);
        (inst, m)
    }

    fn feasible(inst: &Instance, m: &DistanceMatrix) -> Solution {
        Solution::new(
            Method::Savings,
            vec![
                Route::new(vec![1, 2], inst, m).unwrap(),
                Route::new(vec![3], inst, m).unwrap(),
            ],
        )
    }

    #[test]
    fn route_costs() {
        let (inst, m) = line();
        assert_eq!(Route::new(vec![3], &inst, &m).unwrap().cost, 10.0);
        let r = Route::new(vec![1, 2], &inst, &m).unwrap();
        assert_eq!(r.cost, 4.0);
        assert_eq!(r.load, 2.0);
        let empty = Route {
            customer_ids: vec![],
            load: 0.0,
            cost: 0.0,
        };
        assert!(matches!(route_cost(&empty, &m), Err(Error::EmptyRoute)));
        let stray = Route {
            customer_ids: vec![9],
            load: 0.0,
            cost: 0.0,
        };
        assert!(matches!(route_cost(&stray, &m), Err(Error::UnknownId(9))));
    }

    #[test]
    fn orientation_picks_smaller_sequence() {
        let (inst, m) = line();
        let r = Route::oriented(vec![2, 1], &inst, &m).unwrap();
        assert_eq!(r.customer_ids, vec![1, 2]);
    }

    #[test]
    fn feasible_solution_passes() {
        let (inst, m) = line();
        assert!(check_solution_feasibility(&feasible(&inst, &m), &inst, &m).is_empty());
    }

    #[test]
    fn unserved_customer_is_reported() {
        let (inst, m) = line();
        let mut s = feasible(&inst, &m);
        s.routes.pop();
        s.total_cost = s.routes.iter().map(|r| r.cost).sum();
        let v = check_solution_feasibility(&s, &inst, &m);
        assert_eq!(v, vec![SolutionViolation::CustomerUnserved(3)]);
        assert_eq!(v[0].to_string(), "customer 3 unserved");
    }

    #[test]
    fn overload_is_reported() {
        let (mut inst, m) = line();
        inst.customers[1].demand = 1.5;
        let s = Solution::new(
            Method::Savings,
            vec![
                Route::new(vec![1, 2], &inst, &m).unwrap(),
                Route::new(vec![3], &inst, &m).unwrap(),
            ],
        );
        let v = check_solution_feasibility(&s, &inst, &m);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("capacity exceeded on route 0"));
    }

    #[test]
    fn solution_json_ignores_unknown_keys() {
        let (inst, m) = line();
        let s = feasible(&inst, &m).with_param("optimal", true);
        let text = s.to_json().unwrap();
        assert!(text.contains("\"customers\""));
        let extra = text.replacen('{', "{\"note\": \"hi\",", 1);
        let back = Solution::from_json(&extra).unwrap();
        assert_eq!(back, s);
        assert!(back.is_optimal());
    }
}
