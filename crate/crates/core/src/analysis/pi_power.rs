use serde::{Deserialize, Serialize};

use crate::operators::pi_op;
use crate::superspace::{Element, SpaceConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiPowerRow {
    pub k: usize,
    pub zero: bool,
    pub terms: usize,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiPowerReport {
    pub rows: Vec<PiPowerRow>,
    /// Largest `k` for which a nonzero value is required.
    pub nonzero_through: usize,
    /// Power that must vanish, when `M = −2p`.
    pub vanishing_at: Option<usize>,
    pub nonzero_ok: bool,
    pub vanishing_ok: Option<bool>,
}

impl PiPowerReport {
    pub fn passed(&self) -> bool {
        self.nonzero_ok && self.vanishing_ok != Some(false)
    }
}

/// Iterates `Π_1` on `1 ⊗ 1`. For `M = −2p` the table runs to `2p+2`.
pub fn pi_power_test(cfg: &SpaceConfig, k_max: usize) -> PiPowerReport {
    let big_m = cfg.big_m();
    let vanishing_at = (big_m <= 0 && big_m % 2 == 0).then(|| (2 - big_m) as usize);
    let nonzero_through = vanishing_at.map_or(k_max, |v| v - 1);
    let top = vanishing_at.map_or(k_max, |v| v.max(k_max));
    let pi = pi_op(cfg, 1);
    let mut rows = Vec::new();
    let mut cur = Element::one();
    for k in 1..=top {
        cur = pi.apply(&cur);
        rows.push(PiPowerRow {
            k,
            zero: cur.is_zero(),
            terms: cur.len(),
            degree: cur.poly_degree(),
        });
    }
    let nonzero_ok = rows.iter().filter(|r| r.k <= nonzero_through).all(|r| !r.zero);
    let vanishing_ok = vanishing_at.map(|v| rows.iter().any(|r| r.k == v && r.zero));
    PiPowerReport {
        rows,
        nonzero_through,
        vanishing_at,
        nonzero_ok,
        vanishing_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_superdimension_never_vanishes() {
        let r = pi_power_test(&SpaceConfig::new(3, 1).unwrap(), 4);
        assert!(r.passed());
        assert_eq!(r.vanishing_at, None);
    }

    #[test]
    fn first_power_raises_degree() {
        let r = pi_power_test(&SpaceConfig::new(5, 0).unwrap(), 1);
        assert_eq!(r.rows[0].degree, Some(1));
    }

    #[test]
    fn negative_even_superdimension_vanishes() {
        let r = pi_power_test(&SpaceConfig::new(2, 2).unwrap(), 1);
        assert_eq!(r.vanishing_at, Some(4));
        assert!(r.passed(), "{r:?}");
    }
}
