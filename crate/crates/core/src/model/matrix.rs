use std::collections::HashMap;

use super::{Instance, Node, NodeId};
use crate::error::{Error, Result};

pub fn euclidean_distance(a: &Node, b: &Node) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Dense symmetric matrix of Euclidean distances.
///
/// Position 0 is the depot; position `k` is the `k`-th customer of the source
/// instance. Lookups by vertex id go through [`DistanceMatrix::position`].
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    ids: Vec<NodeId>,
    positions: HashMap<NodeId, usize>,
    data: Vec<f64>,
}

pub fn build_distance_matrix(instance: &Instance) -> DistanceMatrix {
    let nodes: Vec<Node> = instance.vertices().copied().collect();
    DistanceMatrix::from_nodes(&nodes)
}

impl DistanceMatrix {
    pub fn from_nodes(nodes: &[Node]) -> Self {
        let n = nodes.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean_distance(&nodes[i], &nodes[j]);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        let ids: Vec<NodeId> = nodes.iter().map(|v| v.id).collect();
        let positions = ids.iter().enumerate().map(|(p, &id)| (id, p)).collect();
        DistanceMatrix { ids, positions, data }
    }

    /// Points get ids `0..points.len()` in order; the first one plays the depot.
    pub fn from_points(points: &[(f64, f64)]) -> Self {
        let nodes: Vec<Node> = points
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Node::customer(i as NodeId, x, y, 0.0))
            .collect();
        Self::from_nodes(&nodes)
    }

    /// Number of vertices, depot included.
    pub fn size(&self) -> usize {
        self.ids.len()
    }

    /// Distance between two positions.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ids.len() + j]
    }

    pub fn id_at(&self, position: usize) -> NodeId {
        self.ids[position]
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn position(&self, id: NodeId) -> Result<usize> {
        self.positions.get(&id).copied().ok_or(Error::UnknownId(id))
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.positions.contains_key(&id)
    }

    /// Distance between two vertex ids.
    pub fn between(&self, a: NodeId, b: NodeId) -> Result<f64> {
        Ok(self.get(self.position(a)?, self.position(b)?))
    }
}
