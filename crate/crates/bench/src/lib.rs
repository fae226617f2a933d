//! Shared fixtures for the criterion benchmarks.

use vrp_core::{build_distance_matrix, generate_instance, DistanceMatrix, GeneratorConfig, Instance};

/// A uniform instance on a 100×100 square with demands in [1, 4] and capacity 10.
pub fn fixture(seed: u64, n: usize) -> (Instance, DistanceMatrix) {
    let instance = generate_instance(&GeneratorConfig {
        seed,
        n,
        capacity: 10.0,
        demand_range: (1.0, 4.0),
        coord_range: (0.0, 100.0),
    })
    .expect("fixture parameters are valid");
    let matrix = build_distance_matrix(&instance);
    (instance, matrix)
}
