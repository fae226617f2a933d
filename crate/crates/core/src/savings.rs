//! Clarke-Wright savings heuristic (parallel variant).
//!
//! Every customer starts on its own out-and-back route. Joining the routes
//! ending at `i` and starting at `j` saves `D(0,i) + D(0,j) - D(i,j)`. Pairs
//! are processed in order of decreasing saving; a merge happens only when `i`
//! and `j` sit on different routes, both are route endpoints, and the combined
//! load fits the vehicle. Pairs that fail any test are dropped.

use std::collections::HashMap;

use crate::error::Result;
use crate::model::{sequence_cost, DistanceMatrix, Instance, Method, NodeId, Route, Solution, DEPOT_ID, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SavingsEntry {
    pub i: NodeId,
    pub j: NodeId,
    pub saving: f64,
}

/// One applied merge, with the route costs measured before and after.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeRecord {
    pub entry: SavingsEntry,
    pub cost_before: f64,
    pub cost_after: f64,
}

impl MergeRecord {
    pub fn realized_saving(&self) -> f64 {
        self.cost_before - self.cost_after
    }
}

/// Savings for every unordered customer pair, largest first, ties by `(i, j)`.
///
/// Values that come out slightly negative from rounding are clamped to zero.
pub fn compute_savings(matrix: &DistanceMatrix) -> Vec<SavingsEntry> {
    let Ok(depot) = matrix.position(DEPOT_ID) else {
        return Vec::new();
    };
    let mut customers: Vec<(NodeId, usize)> = (0..matrix.size())
        .filter(|&p| p != depot)
        .map(|p| (matrix.id_at(p), p))
        .collect();
    customers.sort_unstable();

    let mut out = Vec::with_capacity(customers.len() * customers.len().saturating_sub(1) / 2);
    for (a, &(i, pi)) in customers.iter().enumerate() {
        for &(j, pj) in &customers[a + 1..] {
            let s = matrix.get(depot, pi) + matrix.get(depot, pj) - matrix.get(pi, pj);
            out.push(SavingsEntry {
                i,
                j,
                saving: s.max(0.0),
            });
        }
    }
    out.sort_by(|a, b| b.saving.total_cmp(&a.saving).then_with(|| (a.i, a.j).cmp(&(b.i, b.j))));
    out
}

pub fn clarke_wright(instance: &Instance, matrix: &DistanceMatrix) -> Result<Solution> {
    clarke_wright_traced(instance, matrix).map(|(s, _)| s)
}

/// [`clarke_wright`], also returning every merge it applied in order.
pub fn clarke_wright_traced(instance: &Instance, matrix: &DistanceMatrix) -> Result<(Solution, Vec<MergeRecord>)> {
    let demand: HashMap<NodeId, f64> = instance.customers.iter().map(|c| (c.id, c.demand)).collect();
    let mut routes: Vec<Option<Vec<NodeId>>> = instance.customers.iter().map(|c| Some(vec![c.id])).collect();
    let mut loads: Vec<f64> = instance.customers.iter().map(|c| c.demand).collect();
    let mut route_of: HashMap<NodeId, usize> = instance.customers.iter().enumerate().map(|(r, c)| (c.id, r)).collect();
    let mut merges = Vec::new();

    for entry in compute_savings(matrix) {
        let (ra, rb) = (route_of[&entry.i], route_of[&entry.j]);
        if ra == rb || loads[ra] + loads[rb] > instance.capacity + TOLERANCE {
            continue;
        }
        let (Some(mut a), Some(mut b)) = (routes[ra].take(), routes[rb].take()) else {
            unreachable!("route_of only points at live routes");
        };
        let endpoints_ok = orient_tail(&mut a, entry.i) && orient_head(&mut b, entry.j);
        if !endpoints_ok {
            routes[ra] = Some(a);
            routes[rb] = Some(b);
            continue;
        }

        let cost_before = sequence_cost(&a, matrix)? + sequence_cost(&b, matrix)?;
        for id in &b {
            route_of.insert(*id, ra);
        }
        a.extend(b);
        let cost_after = sequence_cost(&a, matrix)?;
        loads[ra] = a.iter().map(|id| demand[id]).sum();
        routes[ra] = Some(a);
        merges.push(MergeRecord {
            entry,
            cost_before,
            cost_after,
        });
    }

    let routes = routes
        .into_iter()
        .flatten()
        .map(|ids| Route::new(ids, instance, matrix))
        .collect::<Result<Vec<_>>>()?;
    let solution = Solution::new(Method::Savings, routes).with_param("merges", merges.len());
    Ok((solution, merges))
}

/// Reverses `route` if needed so that `id` is its last element; false if `id` is interior.
fn orient_tail(route: &mut [NodeId], id: NodeId) -> bool {
    match (route.first(), route.last()) {
        (_, Some(&last)) if last == id => true,
        (Some(&first), _) if first == id => {
            route.reverse();
            true
        }
        _ => false,
    }
}

fn orient_head(route: &mut [NodeId], id: NodeId) -> bool {
    match (route.first(), route.last()) {
        (Some(&first), _) if first == id => true,
        (_, Some(&last)) if last == id => {
            route.reverse();
            true
        }
        _ => false,
    }
}
