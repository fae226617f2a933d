use super::resolve_subset;
use crate::error::Result;
use crate::model::{DistanceMatrix, NodeId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    /// Spanned vertices, ascending.
    pub vertices: Vec<NodeId>,
    pub edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn degree(&self, vertex: NodeId) -> usize {
        self.edges.iter().filter(|e| e.u == vertex || e.v == vertex).count()
    }
}

/// Prim's algorithm from the smallest id. Among equal keys the smaller id
/// joins first, and keys only change on strict improvement. Each edge is
/// stored with `u < v`.
pub fn minimum_spanning_tree(subset: &[NodeId], matrix: &DistanceMatrix) -> Result<SpanningTree> {
    let verts = resolve_subset(subset, matrix)?;
    let k = verts.len();
    let mut in_tree = vec![false; k];
    let mut key = vec![f64::INFINITY; k];
    let mut parent = vec![usize::MAX; k];
    let mut edges = Vec::with_capacity(k.saturating_sub(1));

    key[0] = 0.0;
    for _ in 0..k {
        let next = (0..k)
            .filter(|&i| !in_tree[i])
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if key[b] <= key[i] => Some(b),
                _ => Some(i),
            })
            .expect("a vertex remains outside the tree");
        in_tree[next] = true;
        if parent[next] != usize::MAX {
            let (a, b) = (verts[parent[next]].0, verts[next].0);
            edges.push(Edge {
                u: a.min(b),
                v: a.max(b),
                weight: key[next],
            });
        }
        for i in 0..k {
            if !in_tree[i] {
                let d = matrix.get(verts[next].1, verts[i].1);
                if d < key[i] {
                    key[i] = d;
                    parent[i] = next;
                }
            }
        }
    }

    Ok(SpanningTree {
        vertices: verts.into_iter().map(|v| v.0).collect(),
        edges,
    })
}

/// Vertices of odd degree in `tree`, ascending. Always an even number of them.
pub fn odd_degree_vertices(tree: &SpanningTree) -> Vec<NodeId> {
    let odd: Vec<NodeId> = tree
        .vertices
        .iter()
        .copied()
        .filter(|&v| tree.degree(v) % 2 == 1)
        .collect();
    assert!(odd.len().is_multiple_of(2), "handshake lemma violated");
    odd
}
