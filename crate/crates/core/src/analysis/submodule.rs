use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spaces::{monogenics, power_apply, Chirality};
use crate::error::{Error, Result};
use crate::linalg::{combine, eliminate, intersect, member, same_span, span_basis, SparseVec};
use crate::operators::vector;
use crate::superspace::{block_basis, BasisKey, Element, SpaceConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleReport {
    pub k: usize,
    pub q: usize,
    pub chirality: Chirality,
    /// `p = 2d − 2n + 2k − 1`.
    pub power: usize,
    /// `k' = 2n − 2d − k + 1`.
    pub source_degree: usize,
    pub target_dim: usize,
    pub source_dim: usize,
    pub contained: bool,
    /// `(cut of the x-preimage, dim of M_k ∩ x(P⊗S), dim of x^p M_{k'})`.
    pub intersections: Vec<(usize, usize, usize)>,
    pub identity_holds: bool,
}

impl SubmoduleReport {
    pub fn passed(&self) -> bool {
        self.contained && self.identity_holds
    }
}

/// `span(vs) ∩ (P ⊗ S^{≤q})`.
fn truncate_span(vs: &[Element], q: usize) -> Vec<Element> {
    let high: Vec<SparseVec<BasisKey>> = vs
        .iter()
        .map(|v| {
            v.iter()
                .filter(|((_, s), _)| s.t_degree() > q)
                .map(|(k, c)| (*k, c.clone()))
                .collect()
        })
        .collect();
    span_basis(&combine(vs, &eliminate(&high).kernel))
}

/// Checks the unique submodule `x^p M_{k'}^{∓}` of `M_k^{±}` at the spinor cut `q`.
pub fn submodule_check(cfg: &SpaceConfig, k: usize, q: usize, chirality: Chirality) -> Result<SubmoduleReport> {
    let (m, n, d) = (cfg.m() as i64, cfg.n() as i64, cfg.d() as i64);
    let ki = k as i64;
    if m % 2 != 0 || d > n || ki < 1 + n - d || ki > 1 + 2 * n - 2 * d {
        return Err(Error::WindowViolation(format!(
            "requires m even, d ≤ n and {} ≤ k ≤ {}; got m = {m}, n = {n}, k = {k}",
            1 + n - d,
            1 + 2 * n - 2 * d
        )));
    }
    if chirality == Chirality::All {
        return Err(Error::UnsupportedConfig("submodule check needs a chirality".into()));
    }
    let p = (2 * d - 2 * n + 2 * ki - 1) as usize;
    let k_src = (2 * n - 2 * d - ki + 1) as usize;
    let x = vector(cfg);
    let target = monogenics(cfg, k, q, chirality)?;

    let source_at = |cut: usize| -> Result<Vec<Element>> {
        let src = monogenics(cfg, k_src, cut, chirality.flip())?;
        let lifted: Vec<Element> = src.par_iter().map(|v| power_apply(&x, v, p)).collect();
        Ok(truncate_span(&lifted, q))
    };
    let base = source_at(q.saturating_sub(p))?;
    let contained = base.iter().all(|v| member(v, &target));

    let mut intersections = Vec::new();
    let mut identity_holds = true;
    for (pre_cut, src_cut) in [(q.saturating_sub(1), q.saturating_sub(p)), (q + 1, q + 2 - p.min(q + 2))] {
        let pre: Vec<Element> = block_basis(cfg, k - 1, pre_cut)
            .into_par_iter()
            .map(|key| x.apply(&Element::basis(key)))
            .collect();
        let lhs = intersect(&target, &truncate_span(&pre, q));
        let rhs = source_at(src_cut)?;
        identity_holds &= same_span(&lhs, &rhs);
        intersections.push((pre_cut, lhs.len(), rhs.len()));
    }
    Ok(SubmoduleReport {
        k,
        q,
        chirality,
        power: p,
        source_degree: k_src,
        target_dim: target.len(),
        source_dim: base.len(),
        contained,
        intersections,
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_is_enforced() {
        let c = SpaceConfig::new(4, 2).unwrap();
        assert!(matches!(submodule_check(&c, 0, 2, Chirality::Plus), Err(Error::WindowViolation(_))));
        assert!(matches!(
            submodule_check(&SpaceConfig::new(3, 1).unwrap(), 1, 2, Chirality::Plus),
            Err(Error::WindowViolation(_))
        ));
    }

    #[test]
    fn x_times_constants_inside_degree_one() {
        let c = SpaceConfig::new(4, 2).unwrap();
        for ch in [Chirality::Plus, Chirality::Minus] {
            let r = submodule_check(&c, 1, 2, ch).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.source_dim > 0);
        }
    }
}
