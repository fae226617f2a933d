use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, Node, NodeId};
use crate::error::{Error, Result};

/// Parameters for [`generate_instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    pub capacity: f64,
    pub demand_range: (f64, f64),
    pub coord_range: (f64, f64),
}

/// Draws a uniform random instance.
///
/// The stream is ChaCha8 keyed by `ChaCha8Rng::seed_from_u64(seed)`, and each
/// uniform real is built from the top 53 bits of one `next_u64` call, so the
/// output is identical on every platform. Per customer the draws are taken in
/// the order x, y, demand. Customers get ids `1..=n`; the depot sits at the
/// centre of the coordinate square.
pub fn generate_instance(config: &GeneratorConfig) -> Result<Instance> {
    let GeneratorConfig {
        seed,
        n,
        capacity,
        demand_range: (dlo, dhi),
        coord_range: (clo, chi),
    } = *config;

    let all_finite = [capacity, dlo, dhi, clo, chi].iter().all(|v| v.is_finite());
    if !all_finite {
        return Err(Error::InvalidParameter("generator values must be finite".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(0.0 < dlo && dlo <= dhi && dhi <= capacity) {
        return Err(Error::InvalidParameter(format!(
            "demand range [{dlo}, {dhi}] must satisfy 0 < lo <= hi <= capacity ({capacity})"
        )));
    }
    if clo > chi {
        return Err(Error::InvalidParameter(format!(
            "coordinate range [{clo}, {chi}] is reversed"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = |lo: f64, hi: f64| {
        let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + unit * (hi - lo)
    };

    let centre = 0.5 * (clo + chi);
    let customers = (1..=n)
        .map(|i| {
            let x = uniform(clo, chi);
            let y = uniform(clo, chi);
            let demand = uniform(dlo, dhi);
            Node::customer(i as NodeId, x, y, demand)
        })
        .collect();

    Ok(Instance {
        name: format!("gen-s{seed}-n{n}"),
        depot: Node::depot(centre, centre),
        customers,
        capacity,
    })
}
