//! Christofides' approximation for metric TSP.
//!
//! The tour is built in five steps: minimum spanning tree, the tree's
//! odd-degree vertices, a minimum-weight perfect matching on them, an Euler
//! circuit of tree ∪ matching, and finally shortcutting repeated vertices.
//! On metric inputs the result is at most 1.5 times the optimal tour.
//!
//! All functions take vertex ids and resolve them through the
//! [`DistanceMatrix`]; subsets are processed in ascending id order so results
//! do not depend on how the caller ordered them.

mod euler;
mod matching;
mod mst;
mod tsp;

pub use euler::{eulerian_circuit, walk_weight};
pub use matching::{min_weight_perfect_matching, Matching, MATCHING_LIMIT};
pub use mst::{minimum_spanning_tree, odd_degree_vertices, Edge, SpanningTree};
pub use tsp::{brute_force_tsp, BRUTE_FORCE_TSP_LIMIT};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, NodeId, DEPOT_ID};

/// A Hamiltonian cycle, stored open: `order[0]` is the depot and the closing
/// edge back to it is implied.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    pub order: Vec<NodeId>,
    pub length: f64,
}

impl Tour {
    pub(crate) fn from_order(order: Vec<NodeId>, matrix: &DistanceMatrix) -> Result<Self> {
        let length = cycle_length(&order, matrix)?;
        Ok(Tour { order, length })
    }
}

/// Closed-cycle length of `order` (returns to `order[0]`).
pub fn cycle_length(order: &[NodeId], matrix: &DistanceMatrix) -> Result<f64> {
    let positions = order
        .iter()
        .map(|&id| matrix.position(id))
        .collect::<Result<Vec<_>>>()?;
    let mut length = 0.0;
    for pair in positions.windows(2) {
        length += matrix.get(pair[0], pair[1]);
    }
    if let (Some(&first), Some(&last)) = (positions.first(), positions.last()) {
        length += matrix.get(last, first);
    }
    Ok(length)
}

/// Sorted, de-duplicated view of a vertex subset as `(id, matrix position)`.
pub(crate) fn resolve_subset(subset: &[NodeId], matrix: &DistanceMatrix) -> Result<Vec<(NodeId, usize)>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut ids = subset.to_vec();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertex(w[0]));
    }
    ids.into_iter().map(|id| Ok((id, matrix.position(id)?))).collect()
}

/// Turns a closed walk into a tour by keeping the first visit of each vertex.
///
/// `walk` must start and end at the same vertex and touch every vertex of
/// `subset` (and nothing else).
pub fn shortcut(walk: &[NodeId], subset: &[NodeId], matrix: &DistanceMatrix) -> Result<Tour> {
    let (first, last) = match (walk.first(), walk.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(Error::InvalidWalk("is empty".into())),
    };
    if first != last {
        return Err(Error::InvalidWalk(format!(
            "is not closed: starts at {first}, ends at {last}"
        )));
    }
    let members: HashSet<NodeId> = subset.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut order = Vec::with_capacity(members.len());
    for &v in walk {
        if !members.contains(&v) {
            return Err(Error::InvalidWalk(format!("visits {v}, which is outside the subset")));
        }
        if seen.insert(v) {
            order.push(v);
        }
    }
    if let Some(missing) = subset.iter().find(|v| !seen.contains(v)) {
        return Err(Error::InvalidWalk(format!("misses subset vertex {missing}")));
    }
    Tour::from_order(order, matrix)
}

/// Every intermediate product of one Christofides run.
#[derive(Debug, Clone)]
pub struct ChristofidesTrace {
    pub tree: SpanningTree,
    pub odd: Vec<NodeId>,
    pub matching: Matching,
    pub walk: Vec<NodeId>,
    pub tour: Tour,
}

/// Christofides tour over `subset`, which must contain the depot. The tour starts at the depot.
pub fn christofides_tour(subset: &[NodeId], matrix: &DistanceMatrix) -> Result<Tour> {
    christofides_with_trace(subset, matrix).map(|t| t.tour)
}

pub fn christofides_with_trace(subset: &[NodeId], matrix: &DistanceMatrix) -> Result<ChristofidesTrace> {
    let vertices = resolve_subset(subset, matrix)?;
    if vertices.first().map(|v| v.0) != Some(DEPOT_ID) {
        return Err(Error::MissingDepot);
    }
    let ids: Vec<NodeId> = vertices.iter().map(|v| v.0).collect();

    let tree = minimum_spanning_tree(&ids, matrix)?;
    if ids.len() <= 2 {
        // Nothing to match: the trivial tour is the tree walked out and back.
        let walk: Vec<NodeId> = ids.iter().chain(ids.first()).copied().collect();
        let tour = Tour::from_order(ids, matrix)?;
        return Ok(ChristofidesTrace {
            tree,
            odd: Vec::new(),
            matching: Matching::default(),
            walk,
            tour,
        });
    }

    let odd = odd_degree_vertices(&tree);
    let matching = min_weight_perfect_matching(&odd, matrix)?;
    let walk = eulerian_circuit(&tree, &matching, DEPOT_ID)?;
    let tour = shortcut(&walk, &ids, matrix)?;
    Ok(ChristofidesTrace {
        tree,
        odd,
        matching,
        walk,
        tour,
    })
}
