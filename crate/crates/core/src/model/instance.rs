use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{NodeId, DEPOT_ID};
use crate::error::{Error, Result};

/// A vertex with planar coordinates. Customers carry a positive demand, the depot zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
    pub demand: f64,
}

impl Node {
    pub fn depot(x: f64, y: f64) -> Self {
        Node {
            id: DEPOT_ID,
            x,
            y,
            demand: 0.0,
        }
    }

    pub fn customer(id: NodeId, x: f64, y: f64, demand: f64) -> Self {
        Node { id, x, y, demand }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub depot: Node,
    pub customers: Vec<Node>,
    /// Vehicle capacity.
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceViolation {
    DuplicateId(NodeId),
    DepotIdNonzero(NodeId),
    DepotDemandNonzero(f64),
    NonPositiveDemand { id: NodeId, demand: f64 },
    DemandExceedsCapacity { id: NodeId, demand: f64, capacity: f64 },
    NonPositiveCapacity(f64),
    NonFinite(NodeId),
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateId(id) => write!(f, "duplicate id {id}"),
            Self::DepotIdNonzero(id) => write!(f, "depot id must be 0, got {id}"),
            Self::DepotDemandNonzero(d) => write!(f, "depot demand must be 0, got {d}"),
            Self::NonPositiveDemand { id, demand } => {
                write!(f, "customer {id} has non-positive demand {demand}")
            }
            Self::DemandExceedsCapacity { id, demand, capacity } => write!(
                f,
                "demand exceeds capacity: customer {id} demands {demand} > {capacity}"
            ),
            Self::NonPositiveCapacity(q) => write!(f, "capacity must be positive, got {q}"),
            Self::NonFinite(id) => write!(f, "node {id} has a non-finite coordinate or demand"),
        }
    }
}

/// Lists every structural problem with `instance`; an empty list means it is servable.
pub fn validate_instance(instance: &Instance) -> Vec<InstanceViolation> {
    let mut out = Vec::new();
    let q = instance.capacity;
    if !q.is_finite() || q <= 0.0 {
        out.push(InstanceViolation::NonPositiveCapacity(q));
    }

    let depot = &instance.depot;
    if depot.id != DEPOT_ID {
        out.push(InstanceViolation::DepotIdNonzero(depot.id));
    }
    if depot.demand != 0.0 {
        out.push(InstanceViolation::DepotDemandNonzero(depot.demand));
    }
    if !depot.x.is_finite() || !depot.y.is_finite() {
        out.push(InstanceViolation::NonFinite(depot.id));
    }

    let mut seen = HashSet::from([depot.id]);
    let mut reported = HashSet::new();
    for c in &instance.customers {
        if !seen.insert(c.id) && reported.insert(c.id) {
            out.push(InstanceViolation::DuplicateId(c.id));
        }
        if !c.x.is_finite() || !c.y.is_finite() || !c.demand.is_finite() {
            out.push(InstanceViolation::NonFinite(c.id));
            continue;
        }
        if c.demand <= 0.0 {
            out.push(InstanceViolation::NonPositiveDemand {
                id: c.id,
                demand: c.demand,
            });
        } else if q > 0.0 && c.demand > q {
            out.push(InstanceViolation::DemandExceedsCapacity {
                id: c.id,
                demand: c.demand,
                capacity: q,
            });
        }
    }
    out
}

impl Instance {
    /// Number of customers (the depot excluded).
    pub fn len(&self) -> usize {
        self.customers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.customers.is_empty()
    }

    /// Depot followed by the customers in file order. A [`super::DistanceMatrix`]
    /// built from this instance uses the same positions.
    pub fn vertices(&self) -> impl Iterator<Item = &Node> {
        std::iter::once(&self.depot).chain(self.customers.iter())
    }

    pub fn customer(&self, id: NodeId) -> Option<&Node> {
        self.customers.iter().find(|c| c.id == id)
    }

    pub fn demand_of(&self, id: NodeId) -> Option<f64> {
        if id == self.depot.id {
            return Some(0.0);
        }
        self.customer(id).map(|c| c.demand)
    }

    pub fn total_demand(&self) -> f64 {
        self.customers.iter().map(|c| c.demand).sum()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = validate_instance(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }

    /// Parses and validates an instance document. Unknown keys are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let instance = Instance::from(file);
        instance.ensure_valid()?;
        Ok(instance)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(&InstanceFile::from(self))?;
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

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    name: String,
    capacity: f64,
    depot: DepotRecord,
    customers: Vec<CustomerRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DepotRecord {
    id: NodeId,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomerRecord {
    id: NodeId,
    x: f64,
    y: f64,
    demand: f64,
}

impl From<InstanceFile> for Instance {
    fn from(file: InstanceFile) -> Self {
        Instance {
            name: file.name,
            depot: Node {
                id: file.depot.id,
                x: file.depot.x,
                y: file.depot.y,
                demand: 0.0,
            },
            customers: file
                .customers
                .into_iter()
                .map(|c| Node::customer(c.id, c.x, c.y, c.demand))
                .collect(),
            capacity: file.capacity,
        }
    }
}

impl From<&Instance> for InstanceFile {
    fn from(instance: &Instance) -> Self {
        InstanceFile {
            name: instance.name.clone(),
            capacity: instance.capacity,
            depot: DepotRecord {
                id: instance.depot.id,
                x: instance.depot.x,
                y: instance.depot.y,
            },
            customers: instance
                .customers
                .iter()
                .map(|c| CustomerRecord {
                    id: c.id,
                    x: c.x,
                    y: c.y,
                    demand: c.demand,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> Instance {
        Instance {
            name: "five".into(),
            depot: Node::depot(0.0, 0.0),
            customers: (1..=5).map(|i| Node::customer(i, i as f64, 1.0, 2.0)).collect(),
            capacity: 10.0,
        }
    }

    #[test]
    fn well_formed_instance_has_no_violations() {
        assert!(validate_instance(&five()).is_empty());
    }

    #[test]
    fn oversized_demand_is_reported() {
        let mut inst = five();
        inst.customers[2].demand = inst.capacity + 1.0;
        let v = validate_instance(&inst);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().contains("demand exceeds capacity"));
    }

    #[test]
    fn duplicate_id_is_reported_once() {
        let mut inst = five();
        inst.customers[3].id = 3;
        let v = validate_instance(&inst);
        assert_eq!(v, vec![InstanceViolation::DuplicateId(3)]);
        assert!(v[0].to_string().contains("duplicate id"));
    }

    #[test]
    fn depot_and_capacity_rules() {
        let mut inst = five();
        inst.depot.demand = 1.0;
        inst.capacity = 0.0;
        inst.customers[0].demand = 0.0;
        inst.customers[1].id = 0;
        let v = validate_instance(&inst);
        assert!(v.contains(&InstanceViolation::DepotDemandNonzero(1.0)));
        assert!(v.contains(&InstanceViolation::NonPositiveCapacity(0.0)));
        assert!(v.contains(&InstanceViolation::DuplicateId(0)));
        assert!(v
            .iter()
            .any(|x| matches!(x, InstanceViolation::NonPositiveDemand { id: 1, .. })));
    }

    #[test]
    fn json_round_trip_and_unknown_keys() {
        let inst = five();
        let text = inst.to_json().unwrap();
        assert_eq!(Instance::from_json(&text).unwrap(), inst);

        let bad = text.replacen("\"capacity\"", "\"colour\": 1, \"capacity\"", 1);
        assert!(matches!(Instance::from_json(&bad), Err(Error::Json(_))));
    }

    #[test]
    fn loading_rejects_infeasible_demand() {
        let text = r#"{"name":"x","capacity":3,"depot":{"id":0,"x":0,"y":0},
            "customers":[{"id":1,"x":1,"y":1,"demand":4}]}"#;
        assert!(matches!(Instance::from_json(text), Err(Error::InvalidInstance(_))));
    }
}
