use std::collections::HashMap;

use super::{Matching, SpanningTree};
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, NodeId};

/// Euler circuit of the multigraph formed by the tree edges plus the
/// matching pairs, found with Hierholzer's algorithm starting at `start`.
///
/// The returned walk begins and ends at `start` and traverses every
/// multigraph edge exactly once, so it has `|T| + |M| + 1` entries.
pub fn eulerian_circuit(tree: &SpanningTree, matching: &Matching, start: NodeId) -> Result<Vec<NodeId>> {
    let local: HashMap<NodeId, usize> = tree.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let index = |v: NodeId| {
        local
            .get(&v)
            .copied()
            .ok_or_else(|| Error::Internal(format!("vertex {v} is not spanned by the tree")))
    };

    let mut edges = Vec::with_capacity(tree.edges.len() + matching.pairs.len());
    for e in &tree.edges {
        edges.push((index(e.u)?, index(e.v)?));
    }
    for &(a, b) in &matching.pairs {
        edges.push((index(a)?, index(b)?));
    }

    let n = tree.vertices.len();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adjacency[a].push((b, e));
        adjacency[b].push((a, e));
    }
    if let Some(v) = (0..n).find(|&v| adjacency[v].len() % 2 == 1) {
        return Err(Error::Internal(format!(
            "vertex {} has odd degree {} in tree + matching",
            tree.vertices[v],
            adjacency[v].len()
        )));
    }

    let start = index(start)?;
    let mut used = vec![false; edges.len()];
    let mut cursor = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        let adj = &adjacency[v];
        while cursor[v] < adj.len() && used[adj[cursor[v]].1] {
            cursor[v] += 1;
        }
        match adj.get(cursor[v]) {
            Some(&(u, e)) => {
                used[e] = true;
                stack.push(u);
            }
            None => {
                stack.pop();
                circuit.push(tree.vertices[v]);
            }
        }
    }
    if circuit.len() != edges.len() + 1 {
        return Err(Error::Internal("tree + matching multigraph is disconnected".into()));
    }
    circuit.reverse();
    Ok(circuit)
}

/// Total weight of consecutive steps of a walk.
pub fn walk_weight(walk: &[NodeId], matrix: &DistanceMatrix) -> Result<f64> {
    walk.windows(2).map(|w| matrix.between(w[0], w[1])).sum()
}
