use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, Method, NodeId, Route, Solution, TOLERANCE};
use crate::savings::clarke_wright;

/// Search nodes explored before giving up on an optimality proof.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

/// Client sets are tracked in a `u64` bitmask.
pub const EXACT_CLIENT_LIMIT: usize = 63;

/// Largest instance the comparison harness hands to the exact solver.
pub const EXACT_RECOMMENDED_CLIENTS: usize = 14;

/// Costs closer than this count as equal, so rounding noise never replaces an incumbent.
const TIE_SLACK: f64 = 1e-12;

/// Exact CVRP by depth-first branch-and-bound over routes.
///
/// A node either appends an unserved client to the open route (if it fits)
/// or closes the route at the depot. A route may only close once it contains
/// the lowest-id client that was unserved when it opened, which removes
/// route-permutation symmetry, and only if its first client id is below its
/// last, which removes reversals. A route boundary reached again with the
/// same served set at no lower cost is dropped.
///
/// A node is cut when its cost plus a lower bound on the remaining cost
/// reaches the incumbent. Every remaining edge is charged half to each
/// endpoint that still has to be visited or left: an unserved client pays
/// half of its two cheapest edges to vertices it can still be adjacent to,
/// the last client pays half of its cheapest way out, and the depot pays half
/// its cheapest client edge twice for every further route the remaining
/// demand forces.
///
/// The Clarke-Wright solution is the starting incumbent. If `node_limit` is
/// reached the best solution so far is returned with `"optimal": false` in
/// its parameters.
pub fn solve_exact(instance: &Instance, matrix: &DistanceMatrix, node_limit: u64) -> Result<Solution> {
    instance.ensure_valid()?;
    let n = instance.len();
    if n > EXACT_CLIENT_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact solver client count",
            size: n,
            limit: EXACT_CLIENT_LIMIT,
        });
    }

    let mut clients: Vec<(NodeId, usize, f64)> = instance
        .customers
        .iter()
        .map(|c| Ok((c.id, matrix.position(c.id)?, c.demand)))
        .collect::<Result<_>>()?;
    clients.sort_by_key(|c| c.0);

    // Local vertex 0 is the depot, local k + 1 is clients[k].
    let mut positions = vec![matrix.position(crate::model::DEPOT_ID)?];
    positions.extend(clients.iter().map(|c| c.1));
    let dist: Vec<Vec<f64>> = positions
        .iter()
        .map(|&a| positions.iter().map(|&b| matrix.get(a, b)).collect())
        .collect();
    // Candidate neighbours by distance; the depot is listed twice since a
    // single-client route uses its depot edge in both directions.
    let neighbours: Vec<Vec<(f64, usize)>> = (0..=n)
        .map(|v| {
            let mut list: Vec<(f64, usize)> = (0..=n).filter(|&w| w != v).map(|w| (dist[v][w], w)).collect();
            if v != 0 {
                list.push((dist[v][0], 0));
            }
            list.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            list
        })
        .collect();

    let warm = clarke_wright(instance, matrix)?;
    let local_of = |id: NodeId| clients.iter().position(|c| c.0 == id).map(|k| k + 1);
    let incumbent: Vec<Vec<usize>> = warm
        .routes
        .iter()
        .map(|r| r.customer_ids.iter().filter_map(|&id| local_of(id)).collect())
        .collect();

    let mut search = Search {
        dist: &dist,
        demand: std::iter::once(0.0).chain(clients.iter().map(|c| c.2)).collect(),
        neighbours: &neighbours,
        capacity: instance.capacity,
        n,
        node_limit,
        nodes: 0,
        aborted: false,
        closed: Vec::new(),
        open: Vec::new(),
        anchors: Vec::new(),
        boundary: HashMap::new(),
        best_cost: warm.total_cost,
        best: incumbent,
    };
    if n > 0 {
        search.start_route(0, 0.0);
    }

    let optimal = !search.aborted;
    let nodes = search.nodes;
    let routes = search
        .best
        .into_iter()
        .map(|r| {
            let ids = r.into_iter().map(|k| clients[k - 1].0).collect();
            Route::oriented(ids, instance, matrix)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Solution::new(Method::Exact, routes)
        .with_param("optimal", optimal)
        .with_param("node_limit", node_limit)
        .with_param("nodes", nodes))
}

struct Search<'a> {
    dist: &'a [Vec<f64>],
    demand: Vec<f64>,
    neighbours: &'a [Vec<(f64, usize)>],
    capacity: f64,
    n: usize,
    node_limit: u64,
    nodes: u64,
    aborted: bool,
    closed: Vec<Vec<usize>>,
    open: Vec<usize>,
    anchors: Vec<usize>,
    /// Cheapest cost seen at each route boundary, keyed by served set.
    boundary: HashMap<u64, f64>,
    best_cost: f64,
    best: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn lowest_unserved(&self, served: u64) -> Option<usize> {
        let free = !served & ((1u64 << self.n) - 1);
        (free != 0).then(|| free.trailing_zeros() as usize + 1)
    }

    /// Opens a route that must eventually contain the lowest-id unserved client.
    fn start_route(&mut self, served: u64, cost: f64) {
        let Some(anchor) = self.lowest_unserved(served) else {
            return;
        };
        // What remains depends only on the served set, and the incumbent never
        // grows, so an earlier visit at no greater cost already covered this one.
        match self.boundary.get(&served) {
            Some(&seen) if seen <= cost => return,
            _ => {
                self.boundary.insert(served, cost);
            }
        }
        self.anchors.push(anchor);
        for first in 1..=self.n {
            if served & 1 << (first - 1) != 0 || self.demand[first] > self.capacity + TOLERANCE {
                continue;
            }
            self.open.push(first);
            self.branch(
                served | 1 << (first - 1),
                first,
                self.demand[first],
                cost + self.dist[0][first],
            );
            self.open.pop();
            if self.aborted {
                break;
            }
        }
        self.anchors.pop();
    }

    /// Whether the open route may return to the depot now.
    fn can_close(&self, served: u64) -> bool {
        let anchor = *self.anchors.last().expect("open route has an anchor");
        let first = self.open[0];
        let last = *self.open.last().expect("open route is non-empty");
        served & 1 << (anchor - 1) != 0 && first <= last
    }

    /// Lower bound on the cost still to come from `last` with `load` on board.
    fn remaining_bound(&self, served: u64, last: usize, load: f64) -> f64 {
        let open = |w: usize| w == 0 || served & 1 << (w - 1) == 0;
        let mut bound = self.neighbours[last]
            .iter()
            .find(|&&(_, w)| open(w))
            .map_or(0.0, |&(d, _)| d / 2.0);
        let mut pending = 0.0;
        let mut nearest_depot = f64::INFINITY;
        for v in (1..=self.n).filter(|&v| open(v)) {
            let mut two = self.neighbours[v].iter().filter(|&&(_, w)| open(w) || w == last);
            let a = two.next().map_or(0.0, |e| e.0);
            let b = two.next().map_or(a, |e| e.0);
            bound += (a + b) / 2.0;
            pending += self.demand[v];
            nearest_depot = nearest_depot.min(self.dist[0][v]);
        }
        let overflow = pending - (self.capacity - load);
        if overflow > TOLERANCE {
            let routes = (overflow / self.capacity - TOLERANCE).ceil().max(1.0);
            bound += routes * nearest_depot;
        }
        bound
    }

    fn branch(&mut self, served: u64, last: usize, load: f64, cost: f64) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return;
        }

        let all = (1u64 << self.n) - 1;
        if served == all {
            if !self.can_close(served) {
                return;
            }
            let total = cost + self.dist[last][0];
            if total < self.best_cost - TIE_SLACK {
                self.best_cost = total;
                self.best = self.closed.clone();
                self.best.push(self.open.clone());
            }
            return;
        }
        if cost + self.remaining_bound(served, last, load) >= self.best_cost - TIE_SLACK {
            return;
        }

        let mut candidates: Vec<usize> = (1..=self.n)
            .filter(|&k| served & (1 << (k - 1)) == 0)
            .filter(|&k| load + self.demand[k] <= self.capacity + TOLERANCE)
            .collect();
        candidates.sort_by(|&a, &b| self.dist[last][a].total_cmp(&self.dist[last][b]).then(a.cmp(&b)));
        for k in candidates {
            self.open.push(k);
            self.branch(
                served | 1 << (k - 1),
                k,
                load + self.demand[k],
                cost + self.dist[last][k],
            );
            self.open.pop();
            if self.aborted {
                return;
            }
        }

        if !self.can_close(served) {
            return;
        }
        let route = std::mem::take(&mut self.open);
        self.closed.push(route);
        self.start_route(served, cost + self.dist[last][0]);
        self.open = self.closed.pop().expect("route pushed above");
    }
}
