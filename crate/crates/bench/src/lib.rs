//! Shared fixtures for the benchmarks.

use superdirac::SpaceConfig;

/// Configurations exercised by the acceptance criteria.
pub fn configs() -> Vec<SpaceConfig> {
    [(3, 0), (3, 1), (5, 0), (4, 2)]
        .into_iter()
        .map(|(m, n)| SpaceConfig::new(m, n).expect("valid configuration"))
        .collect()
}
