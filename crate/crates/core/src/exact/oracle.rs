use std::collections::HashMap;

use crate::christofides::brute_force_tsp;
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, Method, NodeId, Route, Solution, DEPOT_ID, TOLERANCE};

pub const PARTITION_ORACLE_LIMIT: usize = 8;

/// Optimal CVRP by enumerating every capacity-feasible set partition of the
/// clients and routing each group with [`brute_force_tsp`].
///
/// Partitions are generated as restricted growth strings over clients in id
/// order, so the first optimum found (and kept on ties) is the
/// lexicographically smallest group structure. Shares no code with the
/// branch-and-bound solver.
pub fn brute_force_partition_oracle(instance: &Instance, matrix: &DistanceMatrix) -> Result<Solution> {
    instance.ensure_valid()?;
    let n = instance.len();
    if n > PARTITION_ORACLE_LIMIT {
        return Err(Error::SizeLimit {
            what: "partition oracle client count",
            size: n,
            limit: PARTITION_ORACLE_LIMIT,
        });
    }
    let mut clients: Vec<(NodeId, f64)> = instance.customers.iter().map(|c| (c.id, c.demand)).collect();
    clients.sort_by_key(|c| c.0);

    let mut e = Enumeration {
        clients: &clients,
        matrix,
        capacity: instance.capacity,
        tours: HashMap::new(),
        block_of: Vec::with_capacity(n),
        loads: Vec::new(),
        best_cost: f64::INFINITY,
        best: Vec::new(),
    };
    e.assign(0)?;

    let mut routes = Vec::new();
    for &mask in &e.best {
        let order = e.tours[&mask].0.clone();
        routes.push(Route::oriented(order, instance, matrix)?);
    }
    Ok(Solution::new(Method::Exact, routes).with_param("oracle", "partition"))
}

struct Enumeration<'a> {
    clients: &'a [(NodeId, f64)],
    matrix: &'a DistanceMatrix,
    capacity: f64,
    /// Group bitmask → (customer order of the optimal tour, tour length).
    tours: HashMap<u32, (Vec<NodeId>, f64)>,
    block_of: Vec<usize>,
    loads: Vec<f64>,
    best_cost: f64,
    best: Vec<u32>,
}

impl Enumeration<'_> {
    fn assign(&mut self, k: usize) -> Result<()> {
        if k == self.clients.len() {
            return self.evaluate();
        }
        let q = self.clients[k].1;
        for b in 0..=self.loads.len() {
            let fresh = b == self.loads.len();
            if !fresh && self.loads[b] + q > self.capacity + TOLERANCE {
                continue;
            }
            if fresh {
                self.loads.push(q);
            } else {
                self.loads[b] += q;
            }
            self.block_of.push(b);
            self.assign(k + 1)?;
            self.block_of.pop();
            if fresh {
                self.loads.pop();
            } else {
                self.loads[b] -= q;
            }
        }
        Ok(())
    }

    fn evaluate(&mut self) -> Result<()> {
        let mut masks = vec![0u32; self.loads.len()];
        for (k, &b) in self.block_of.iter().enumerate() {
            masks[b] |= 1 << k;
        }
        let mut total = 0.0;
        for &mask in &masks {
            total += self.tour(mask)?;
        }
        if total < self.best_cost - 1e-12 {
            self.best_cost = total;
            self.best = masks;
        }
        Ok(())
    }

    fn tour(&mut self, mask: u32) -> Result<f64> {
        if let Some(t) = self.tours.get(&mask) {
            return Ok(t.1);
        }
        let mut subset = vec![DEPOT_ID];
        subset.extend(
            (0..self.clients.len())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| self.clients[k].0),
        );
        let tour = brute_force_tsp(&subset, self.matrix)?;
        let length = tour.length;
        self.tours.insert(mask, (tour.order[1..].to_vec(), length));
        Ok(length)
    }
}
