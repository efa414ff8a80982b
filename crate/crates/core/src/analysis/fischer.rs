use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::spaces::{harmonics_spinor, monogenics, Chirality};
use super::element_json;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::intersect;
use crate::operators::{dirac, vector};
use crate::superspace::{Element, SpaceConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FischerReport {
    pub k: usize,
    pub q: usize,
    pub harmonic_dim: usize,
    pub monogenic_dim: usize,
    pub lower_monogenic_dim: usize,
    pub intersection_dim: usize,
    pub projection_ok: bool,
    /// `None` for odd `m`.
    pub refined_ok: Option<bool>,
    pub counterexample: Option<Value>,
}

impl FischerReport {
    pub fn passed(&self) -> bool {
        self.projection_ok && self.intersection_dim == 0 && self.refined_ok != Some(false)
    }
}

fn chirality_of(e: &Element) -> Option<u8> {
    let mut it = e.keys().map(|(_, s)| s.chirality());
    let first = it.next()?;
    it.all(|c| c == first).then_some(first)
}

/// Splits every `H ∈ H_k ⊗ S^{≤q}` as `(H + c·x∂x H) − c·x∂x H` with
/// `c = 1/(2k−2+M)` and checks both pieces, then checks that
/// `M_k^{≤q} ∩ x·M_{k−1}^{≤q−1} = 0`.
pub fn fischer_check(cfg: &SpaceConfig, k: usize, q: usize) -> Result<FischerReport> {
    let a = 2 * k as i64 - 2 + cfg.big_m();
    if a == 0 {
        return Err(Error::FischerSingular { k, big_m: cfg.big_m() });
    }
    let c = Scalar::frac(1, a);
    let d = dirac(cfg);
    let x = vector(cfg);
    let hs = harmonics_spinor(cfg, k, q, Chirality::All);
    let refine = !cfg.m_is_odd();

    let failure = hs.par_iter().find_map_first(|h| {
        let dh = d.apply(h);
        let mut mono = h.clone();
        mono.add_scaled(&x.apply(&dh), &c);
        let ok = d.apply(&mono).is_zero() && d.apply(&dh).is_zero();
        let chiral_ok = !refine || {
            let ch = chirality_of(h);
            chirality_of(&mono) == ch && (dh.is_zero() || chirality_of(&dh) == ch.map(|v| 1 - v))
        };
        (!ok || !chiral_ok).then(|| (ok, h.clone()))
    });

    let mk = monogenics(cfg, k, q, Chirality::All)?;
    let (lower_dim, intersection_dim) = if k == 0 || q == 0 {
        (0, 0)
    } else {
        let lower = monogenics(cfg, k - 1, q - 1, Chirality::All)?;
        let lifted: Vec<Element> = lower.par_iter().map(|v| x.apply(v)).collect();
        (lower.len(), intersect(&mk, &lifted).len())
    };

    let (projection_ok, refined_ok) = match &failure {
        None => (true, refine.then_some(true)),
        Some((ok, _)) => (*ok, refine.then_some(false)),
    };
    Ok(FischerReport {
        k,
        q,
        harmonic_dim: hs.len(),
        monogenic_dim: mk.len(),
        lower_monogenic_dim: lower_dim,
        intersection_dim,
        projection_ok,
        refined_ok,
        counterexample: failure.map(|(_, h)| element_json(cfg, &h)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_superdimension_passes() {
        let c = SpaceConfig::new(3, 1).unwrap();
        for k in 1..3 {
            let r = fischer_check(&c, k, 2).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.refined_ok.is_none());
        }
    }

    #[test]
    fn classical_case_passes() {
        let r = fischer_check(&SpaceConfig::new(5, 0).unwrap(), 2, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.harmonic_dim, 14 * 4);
    }

    #[test]
    fn excluded_degree_is_singular() {
        let c = SpaceConfig::new(4, 2).unwrap();
        let err = fischer_check(&c, 1, 2).unwrap_err();
        assert_eq!(err, Error::FischerSingular { k: 1, big_m: 0 });
        assert!(err.to_string().starts_with("FischerSingular: k = 1 − M/2"));
    }

    #[test]
    fn even_m_uses_refined_split() {
        let r = fischer_check(&SpaceConfig::new(4, 1).unwrap(), 1, 1).unwrap();
        assert_eq!(r.refined_ok, Some(true));
        assert!(r.passed());
    }
}
