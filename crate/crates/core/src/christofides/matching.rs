use super::resolve_subset;
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, NodeId};

/// Largest vertex set the exact matching accepts.
pub const MATCHING_LIMIT: usize = 16;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(NodeId, NodeId)>,
    pub weight: f64,
}

/// Exact minimum-weight perfect matching by dynamic programming over subsets.
///
/// `best[mask]` is the cheapest perfect matching of the vertices in `mask`;
/// it pairs the lowest member of `mask` with each other member in turn.
/// O(2^k · k) time and space, hence the [`MATCHING_LIMIT`].
pub fn min_weight_perfect_matching(vertices: &[NodeId], matrix: &DistanceMatrix) -> Result<Matching> {
    let k = vertices.len();
    if k == 0 {
        return Ok(Matching::default());
    }
    if k % 2 == 1 {
        return Err(Error::OddMatchingSet(k));
    }
    if k > MATCHING_LIMIT {
        return Err(Error::SizeLimit {
            what: "odd-degree vertex set for exact matching",
            size: k,
            limit: MATCHING_LIMIT,
        });
    }
    let verts = resolve_subset(vertices, matrix)?;
    let w = |a: usize, b: usize| matrix.get(verts[a].1, verts[b].1);

    let full = (1usize << k) - 1;
    let mut best = vec![f64::INFINITY; full + 1];
    let mut partner = vec![u8::MAX; full + 1];
    best[0] = 0.0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let lo = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << lo);
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let cand = w(lo, j) + best[rest & !(1 << j)];
            if cand < best[mask] {
                best[mask] = cand;
                partner[mask] = j as u8;
            }
        }
    }

    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = full;
    while mask != 0 {
        let lo = mask.trailing_zeros() as usize;
        let j = partner[mask] as usize;
        pairs.push((verts[lo].0, verts[j].0));
        mask &= !(1 << lo) & !(1 << j);
    }
    let weight = pairs.iter().map(|&(a, b)| matrix.between(a, b)).sum::<Result<f64>>()?;
    Ok(Matching { pairs, weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TOLERANCE;
    use proptest::prelude::*;

    /// Exhaustive search over all perfect matchings.
    fn enumerate(ids: &[NodeId], m: &DistanceMatrix) -> f64 {
        if ids.is_empty() {
            return 0.0;
        }
        let first = ids[0];
        (1..ids.len())
            .map(|j| {
                let rest: Vec<NodeId> = ids[1..]
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i + 1 != j)
                    .map(|(_, &v)| v)
                    .collect();
                m.between(first, ids[j]).unwrap() + enumerate(&rest, m)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn small_cases() {
        let m = DistanceMatrix::from_points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        assert_eq!(min_weight_perfect_matching(&[], &m).unwrap(), Matching::default());

        let two = min_weight_perfect_matching(&[1, 3], &m).unwrap();
        assert_eq!(two.pairs, vec![(1, 3)]);

        let four = min_weight_perfect_matching(&[0, 1, 2, 3], &m).unwrap();
        assert_eq!(four.pairs, vec![(0, 1), (2, 3)]);
        assert!((four.weight - 2.0).abs() < TOLERANCE);
    }

    #[test]
    fn size_errors() {
        let pts: Vec<(f64, f64)> = (0..18).map(|i| (i as f64, 0.0)).collect();
        let m = DistanceMatrix::from_points(&pts);
        assert!(matches!(
            min_weight_perfect_matching(&[0, 1, 2], &m),
            Err(Error::OddMatchingSet(3))
        ));
        let all: Vec<NodeId> = (0..18).collect();
        let err = min_weight_perfect_matching(&all, &m).unwrap_err();
        assert!(err.to_string().contains("limit of 16"));
        assert!(min_weight_perfect_matching(&all[..16], &m).is_ok());
    }

    proptest! {
        #[test]
        fn matches_exhaustive_enumeration(
            pts in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..=4)
                .prop_map(|v| v.into_iter().flat_map(|p| [p, (p.1 * 0.5, -p.0)]).collect::<Vec<_>>())
        ) {
            let m = DistanceMatrix::from_points(&pts);
            let ids: Vec<NodeId> = (0..pts.len() as NodeId).collect();
            let dp = min_weight_perfect_matching(&ids, &m).unwrap();
            prop_assert!((dp.weight - enumerate(&ids, &m)).abs() <= TOLERANCE);
            let mut covered: Vec<NodeId> = dp.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            covered.sort_unstable();
            prop_assert_eq!(covered, ids);
        }
    }
}
