use super::{resolve_subset, Tour};
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, NodeId, DEPOT_ID};

/// Largest subset (depot included) [`brute_force_tsp`] will enumerate.
pub const BRUTE_FORCE_TSP_LIMIT: usize = 11;

/// Lengths closer than this count as ties, so rounding noise cannot reorder them.
const TIE_SLACK: f64 = 1e-12;

/// Optimal tour by exhaustive enumeration of orders with the depot fixed first.
///
/// Orders are generated in lexicographic id order and a candidate replaces the
/// incumbent only when strictly shorter, so ties resolve to the
/// lexicographically smallest order. Partial orders already as long as the
/// incumbent are cut, which cannot discard a strictly better tour.
pub fn brute_force_tsp(subset: &[NodeId], matrix: &DistanceMatrix) -> Result<Tour> {
    if subset.len() > BRUTE_FORCE_TSP_LIMIT {
        return Err(Error::SizeLimit {
            what: "brute-force TSP subset",
            size: subset.len(),
            limit: BRUTE_FORCE_TSP_LIMIT,
        });
    }
    let verts = resolve_subset(subset, matrix)?;
    if verts[0].0 != DEPOT_ID {
        return Err(Error::MissingDepot);
    }
    let k = verts.len();
    if k <= 2 {
        return Tour::from_order(verts.iter().map(|v| v.0).collect(), matrix);
    }

    let dist: Vec<Vec<f64>> = verts
        .iter()
        .map(|a| verts.iter().map(|b| matrix.get(a.1, b.1)).collect())
        .collect();

    let mut search = Search {
        dist: &dist,
        order: vec![0],
        used: vec![false; k],
        best_len: f64::INFINITY,
        best: Vec::new(),
    };
    search.used[0] = true;
    search.extend(0.0);

    let order = search.best.iter().map(|&i| verts[i].0).collect();
    Tour::from_order(order, matrix)
}

struct Search<'a> {
    dist: &'a [Vec<f64>],
    order: Vec<usize>,
    used: Vec<bool>,
    best_len: f64,
    best: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, partial: f64) {
        let k = self.used.len();
        let last = *self.order.last().expect("order starts with the depot");
        if self.order.len() == k {
            let total = partial + self.dist[last][0];
            if total < self.best_len - TIE_SLACK {
                self.best_len = total;
                self.best.clone_from(&self.order);
            }
            return;
        }
        for next in 1..k {
            if self.used[next] {
                continue;
            }
            let len = partial + self.dist[last][next];
            if len >= self.best_len - TIE_SLACK {
                continue;
            }
            self.used[next] = true;
            self.order.push(next);
            self.extend(len);
            self.order.pop();
            self.used[next] = false;
        }
    }
}
