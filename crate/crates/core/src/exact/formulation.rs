use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::model::{DistanceMatrix, Instance, NodeId, Solution, DEPOT_ID, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
    pub cost: f64,
}

/// Vertices, arcs, costs, capacity and demands of one instance.
#[derive(Debug, Clone)]
pub struct ExactModel {
    /// Depot first, then clients in instance order.
    pub vertices: Vec<NodeId>,
    /// Every ordered pair of distinct vertices.
    pub arcs: Vec<Arc>,
    pub capacity: f64,
    pub demands: BTreeMap<NodeId, f64>,
    costs: BTreeMap<(NodeId, NodeId), f64>,
}

pub fn build_model(instance: &Instance, matrix: &DistanceMatrix) -> ExactModel {
    let vertices: Vec<NodeId> = instance.vertices().map(|v| v.id).collect();
    let mut arcs = Vec::with_capacity(vertices.len() * vertices.len().saturating_sub(1));
    for &from in &vertices {
        for &to in &vertices {
            if from != to {
                let cost = matrix.between(from, to).unwrap_or(f64::INFINITY);
                arcs.push(Arc { from, to, cost });
            }
        }
    }
    let costs = arcs.iter().map(|a| ((a.from, a.to), a.cost)).collect();
    ExactModel {
        vertices,
        arcs,
        capacity: instance.capacity,
        demands: instance.customers.iter().map(|c| (c.id, c.demand)).collect(),
        costs,
    }
}

impl ExactModel {
    pub fn arc_cost(&self, from: NodeId, to: NodeId) -> Option<f64> {
        self.costs.get(&(from, to)).copied()
    }

    pub fn clients(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.demands.keys().copied()
    }

    /// Sum of the costs of the selected arcs; arcs outside the model are ignored.
    pub fn objective(&self, assignment: &ArcAssignment) -> f64 {
        assignment.arcs.iter().filter_map(|&(i, j)| self.arc_cost(i, j)).sum()
    }
}

/// Values of the decision variables: the arcs with `x_ij = 1`, and `u_i` per client.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ArcAssignment {
    pub arcs: BTreeSet<(NodeId, NodeId)>,
    pub loads: BTreeMap<NodeId, f64>,
}

impl ArcAssignment {
    /// The assignment a route solution induces: its arcs, and loads equal to
    /// the running demand total along each route.
    pub fn from_solution(solution: &Solution, instance: &Instance) -> Self {
        let mut out = ArcAssignment::default();
        for route in &solution.routes {
            let mut prev = DEPOT_ID;
            let mut load = 0.0;
            for &id in &route.customer_ids {
                out.arcs.insert((prev, id));
                load += instance.demand_of(id).unwrap_or(f64::NAN);
                out.loads.insert(id, load);
                prev = id;
            }
            if prev != DEPOT_ID {
                out.arcs.insert((prev, DEPOT_ID));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AssignmentViolation {
    ArcOutsideModel {
        from: NodeId,
        to: NodeId,
    },
    OutDegree {
        client: NodeId,
        count: usize,
    },
    InDegree {
        client: NodeId,
        count: usize,
    },
    MissingLoad(NodeId),
    LoadPropagation {
        from: NodeId,
        to: NodeId,
        expected: f64,
        actual: f64,
    },
    LoadBelowDemand {
        client: NodeId,
        load: f64,
        demand: f64,
    },
    LoadAboveCapacity {
        client: NodeId,
        load: f64,
        capacity: f64,
    },
    DepotUnreachable(NodeId),
}

impl fmt::Display for AssignmentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ArcOutsideModel { from, to } => write!(f, "arc ({from},{to}) is not in the model"),
            Self::OutDegree { client, count } => {
                write!(f, "client {client} has {count} outgoing arcs, expected 1")
            }
            Self::InDegree { client, count } => {
                write!(f, "client {client} has {count} incoming arcs, expected 1")
            }
            Self::MissingLoad(c) => write!(f, "client {c} has no load value"),
            Self::LoadPropagation {
                from,
                to,
                expected,
                actual,
            } => write!(
                f,
                "load propagation violated on ({from},{to}): u_{to} = {actual}, expected {expected}"
            ),
            Self::LoadBelowDemand { client, load, demand } => {
                write!(f, "load {load} of client {client} is below its demand {demand}")
            }
            Self::LoadAboveCapacity { client, load, capacity } => {
                write!(f, "load {load} of client {client} exceeds capacity {capacity}")
            }
            Self::DepotUnreachable(c) => write!(f, "client {c} does not lead back to the depot"),
        }
    }
}

/// Evaluates every constraint family of the formulation; empty means feasible.
///
/// Reachability of the depot from each client is implied by the load
/// equalities. It is checked separately anyway, as a cross-check.
pub fn check_assignment(model: &ExactModel, assignment: &ArcAssignment) -> Vec<AssignmentViolation> {
    let mut out = Vec::new();
    let mut successor: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    let mut in_count: BTreeMap<NodeId, usize> = BTreeMap::new();

    for &(from, to) in &assignment.arcs {
        if model.arc_cost(from, to).is_none() {
            out.push(AssignmentViolation::ArcOutsideModel { from, to });
            continue;
        }
        successor.entry(from).or_default().push(to);
        *in_count.entry(to).or_default() += 1;
    }

    for client in model.clients() {
        let outs = successor.get(&client).map_or(0, Vec::len);
        if outs != 1 {
            out.push(AssignmentViolation::OutDegree { client, count: outs });
        }
        let ins = in_count.get(&client).copied().unwrap_or(0);
        if ins != 1 {
            out.push(AssignmentViolation::InDegree { client, count: ins });
        }
    }

    for client in model.clients() {
        let demand = model.demands[&client];
        match assignment.loads.get(&client) {
            None => out.push(AssignmentViolation::MissingLoad(client)),
            Some(&load) => {
                if load.is_nan() || load < demand - TOLERANCE {
                    out.push(AssignmentViolation::LoadBelowDemand { client, load, demand });
                }
                if load.is_nan() || load > model.capacity + TOLERANCE {
                    out.push(AssignmentViolation::LoadAboveCapacity {
                        client,
                        load,
                        capacity: model.capacity,
                    });
                }
            }
        }
    }

    for &(from, to) in &assignment.arcs {
        if from == DEPOT_ID || to == DEPOT_ID || model.arc_cost(from, to).is_none() {
            continue;
        }
        if let (Some(&u_from), Some(&u_to)) = (assignment.loads.get(&from), assignment.loads.get(&to)) {
            let expected = u_from + model.demands[&to];
            if (expected - u_to).is_nan() || (expected - u_to).abs() > TOLERANCE {
                out.push(AssignmentViolation::LoadPropagation {
                    from,
                    to,
                    expected,
                    actual: u_to,
                });
            }
        }
    }

    let limit = model.vertices.len();
    for client in model.clients() {
        let mut at = client;
        let mut reached = false;
        for _ in 0..limit {
            match successor.get(&at).map(Vec::as_slice) {
                Some([next]) => {
                    if *next == DEPOT_ID {
                        reached = true;
                        break;
                    }
                    at = *next;
                }
                _ => break,
            }
        }
        if !reached {
            out.push(AssignmentViolation::DepotUnreachable(client));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_distance_matrix, Node};

    fn two_clients() -> (Instance, ExactModel) {
        let inst = Instance {
            name: "ab".into(),
            depot: Node::depot(0.0, 0.0),
            customers: vec![Node::customer(1, 1.0, 0.0, 2.0), Node::customer(2, 0.0, 1.0, 3.0)],
            capacity: 5.0,
        };
        let m = build_distance_matrix(&inst);
        let model = build_model(&inst, &m);
        (inst, model)
    }

    fn assignment(arcs: &[(NodeId, NodeId)], loads: &[(NodeId, f64)]) -> ArcAssignment {
        ArcAssignment {
            arcs: arcs.iter().copied().collect(),
            loads: loads.iter().copied().collect(),
        }
    }

    #[test]
    fn arc_counts() {
        let (_, model) = two_clients();
        assert_eq!(model.arcs.len(), 6);
        assert!(model.arcs.iter().all(|a| a.from != a.to));
        assert_eq!(model.arc_cost(1, 2), model.arc_cost(2, 1));

        let one = Instance {
            name: "one".into(),
            depot: Node::depot(0.0, 0.0),
            customers: vec![Node::customer(4, 1.0, 1.0, 1.0)],
            capacity: 1.0,
        };
        assert_eq!(build_model(&one, &build_distance_matrix(&one)).arcs.len(), 2);
    }

    #[test]
    fn out_and_back_routes_are_feasible() {
        let (_, model) = two_clients();
        let a = assignment(&[(0, 1), (1, 0), (0, 2), (2, 0)], &[(1, 2.0), (2, 3.0)]);
        assert!(check_assignment(&model, &a).is_empty());
        assert!((model.objective(&a) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn client_cycle_violates_load_propagation() {
        let (_, model) = two_clients();
        for (ua, ub) in [(2.0, 3.0), (2.0, 5.0), (5.0, 3.0), (4.0, 4.0)] {
            let a = assignment(&[(1, 2), (2, 1)], &[(1, ua), (2, ub)]);
            let v = check_assignment(&model, &a);
            assert!(v
                .iter()
                .any(|x| matches!(x, AssignmentViolation::LoadPropagation { .. })));
            assert!(v.contains(&AssignmentViolation::DepotUnreachable(1)));
        }
    }

    #[test]
    fn broken_propagation_names_the_arc() {
        let (_, model) = two_clients();
        let a = assignment(&[(0, 1), (1, 2), (2, 0)], &[(1, 2.0), (2, 4.0)]);
        let v = check_assignment(&model, &a);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("load propagation violated on (1,2)"));
    }
}
