//! Capacity-constrained DBSCAN.
//!
//! Density is measured in demand rather than point count: a customer seeds a
//! cluster when the total demand of its unassigned `eps`-neighbourhood (itself
//! included) reaches `min_wt`. The cluster then grows breadth-first through
//! neighbourhoods, admitting a candidate only while the cluster weight stays
//! within `max_wt`. Customers that never join a cluster are noise and get a
//! singleton cluster each, so every demand ends up served.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, NodeId, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbscanParams {
    /// Neighbourhood radius (closed ball).
    pub eps: f64,
    /// Neighbourhood demand needed to seed a cluster.
    pub min_wt: f64,
    /// Demand ceiling of one cluster.
    pub max_wt: f64,
}

impl DbscanParams {
    /// Checks the parameter ranges against a vehicle capacity.
    pub fn validate(&self, capacity: f64) -> Result<()> {
        let DbscanParams { eps, min_wt, max_wt } = *self;
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
        }
        if !(min_wt > 0.0 && min_wt <= max_wt) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < min_wt <= max_wt, got min_wt={min_wt}, max_wt={max_wt}"
            )));
        }
        if max_wt > capacity + TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "max_wt {max_wt} exceeds vehicle capacity {capacity}"
            )));
        }
        Ok(())
    }

    /// Fills in unset parameters: `max_wt` = capacity, `min_wt` = smallest
    /// demand, `eps` = twice the mean nearest-neighbour distance between customers.
    pub fn with_defaults(
        instance: &Instance,
        matrix: &DistanceMatrix,
        eps: Option<f64>,
        min_wt: Option<f64>,
        max_wt: Option<f64>,
    ) -> Self {
        let smallest = instance
            .customers
            .iter()
            .map(|c| c.demand)
            .fold(f64::INFINITY, f64::min);
        DbscanParams {
            eps: eps.unwrap_or_else(|| default_eps(instance, matrix)),
            min_wt: min_wt.unwrap_or(if smallest.is_finite() { smallest } else { 1.0 }),
            max_wt: max_wt.unwrap_or(instance.capacity),
        }
    }
}

fn default_eps(instance: &Instance, matrix: &DistanceMatrix) -> f64 {
    let ids: Vec<NodeId> = instance.customers.iter().map(|c| c.id).collect();
    if ids.len() < 2 {
        return 1.0;
    }
    let total: f64 = ids
        .iter()
        .map(|&a| {
            ids.iter()
                .filter(|&&b| b != a)
                .map(|&b| matrix.between(a, b).unwrap_or(f64::INFINITY))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    let eps = 2.0 * total / ids.len() as f64;
    if eps > 0.0 && eps.is_finite() {
        eps
    } else {
        1.0
    }
}

/// How a member entered its cluster: the seed has no parent, every other
/// member names the already-admitted member whose neighbourhood it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admission {
    pub id: NodeId,
    pub via: Option<NodeId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Members in admission order.
    pub admissions: Vec<Admission>,
    pub total_weight: f64,
    /// Singleton made from a noise customer.
    pub is_noise: bool,
}

impl Cluster {
    pub fn member_ids(&self) -> Vec<NodeId> {
        self.admissions.iter().map(|a| a.id).collect()
    }

    pub fn len(&self) -> usize {
        self.admissions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.admissions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringOutcome {
    /// Dense clusters in seed order, followed by noise singletons in id order.
    pub clusters: Vec<Cluster>,
    pub noise_ids: Vec<NodeId>,
    pub params: DbscanParams,
}

/// Unassigned customers within `eps` of `center`, plus `center` itself,
/// ordered by distance and then id.
pub fn region_query(
    center: NodeId,
    eps: f64,
    matrix: &DistanceMatrix,
    unassigned: &BTreeSet<NodeId>,
) -> Result<Vec<NodeId>> {
    let c = matrix.position(center)?;
    let mut hits: Vec<(f64, NodeId)> = vec![(0.0, center)];
    for &id in unassigned {
        if id == center {
            continue;
        }
        let d = matrix.get(c, matrix.position(id)?);
        if d <= eps {
            hits.push((d, id));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(hits.into_iter().map(|(_, id)| id).collect())
}

pub fn capacitated_dbscan(
    instance: &Instance,
    params: &DbscanParams,
    matrix: &DistanceMatrix,
) -> Result<ClusteringOutcome> {
    params.validate(instance.capacity)?;
    let demand: HashMap<NodeId, f64> = instance.customers.iter().map(|c| (c.id, c.demand)).collect();
    if let Some(c) = instance.customers.iter().find(|c| c.demand > params.max_wt + TOLERANCE) {
        return Err(Error::DemandExceedsMaxWt {
            id: c.id,
            demand: c.demand,
            max_wt: params.max_wt,
        });
    }

    let mut unassigned: BTreeSet<NodeId> = demand.keys().copied().collect();
    let seeds: Vec<NodeId> = unassigned.iter().copied().collect();
    let mut clusters = Vec::new();

    for seed in seeds {
        if !unassigned.contains(&seed) {
            continue;
        }
        let neighbourhood = region_query(seed, params.eps, matrix, &unassigned)?;
        let weight: f64 = neighbourhood.iter().map(|id| demand[id]).sum();
        if weight < params.min_wt - TOLERANCE {
            continue;
        }

        unassigned.remove(&seed);
        let mut cluster = Cluster {
            admissions: vec![Admission { id: seed, via: None }],
            total_weight: demand[&seed],
            is_noise: false,
        };
        let mut frontier = VecDeque::from([seed]);
        while let Some(member) = frontier.pop_front() {
            for candidate in region_query(member, params.eps, matrix, &unassigned)? {
                if candidate == member || !unassigned.contains(&candidate) {
                    continue;
                }
                let q = demand[&candidate];
                if cluster.total_weight + q > params.max_wt + TOLERANCE {
                    continue;
                }
                unassigned.remove(&candidate);
                cluster.total_weight += q;
                cluster.admissions.push(Admission {
                    id: candidate,
                    via: Some(member),
                });
                frontier.push_back(candidate);
            }
        }
        clusters.push(cluster);
    }

    let noise_ids: Vec<NodeId> = unassigned.into_iter().collect();
    clusters.extend(noise_ids.iter().map(|&id| Cluster {
        admissions: vec![Admission { id, via: None }],
        total_weight: demand[&id],
        is_noise: true,
    }));

    Ok(ClusteringOutcome {
        clusters,
        noise_ids,
        params: *params,
    })
}
