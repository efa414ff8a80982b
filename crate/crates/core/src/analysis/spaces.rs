use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{block_matrix, kernel_on, member};
use crate::operators::{dirac, laplace, r2, Operator};
use crate::superspace::{poly_basis, spinor_basis, Element, SpaceConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chirality {
    All,
    /// Even total spinor degree.
    Plus,
    /// Odd total spinor degree.
    Minus,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::All => Chirality::All,
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }

    fn admits(self, chirality: u8) -> bool {
        match self {
            Chirality::All => true,
            Chirality::Plus => chirality == 0,
            Chirality::Minus => chirality == 1,
        }
    }
}

/// Basis of `H_k = ker Δ ∩ P_k` with trivial spinor factor.
pub fn harmonics(cfg: &SpaceConfig, k: usize) -> Vec<Element> {
    let polys: Vec<Element> = poly_basis(cfg, k).into_iter().map(Element::poly).collect();
    kernel_on(&laplace(cfg), &polys)
}

/// Basis of `H_k ⊗ S^{≤q}`, optionally restricted to one chirality.
pub fn harmonics_spinor(cfg: &SpaceConfig, k: usize, q: usize, chirality: Chirality) -> Vec<Element> {
    let hs = harmonics(cfg, k);
    let mut out = Vec::new();
    for s in spinor_basis(cfg, q) {
        if !chirality.admits(s.chirality()) {
            continue;
        }
        for h in &hs {
            out.push(Element::from_terms(h.iter().map(|((p, _), c)| ((*p, s), c.clone()))));
        }
    }
    out
}

/// Basis of `M_k^{≤q}`, the kernel of the Dirac operator on `P_k ⊗ S^{≤q}`.
pub fn monogenics(cfg: &SpaceConfig, k: usize, q: usize, chirality: Chirality) -> Result<Vec<Element>> {
    if chirality != Chirality::All && cfg.m_is_odd() {
        return Err(Error::UnsupportedConfig(format!(
            "chirality requires even m, got m = {}",
            cfg.m()
        )));
    }
    let d = dirac(cfg);
    let matrix = block_matrix(&d, k, q)?;
    let keep: Vec<usize> = (0..matrix.domain.len())
        .filter(|&c| chirality.admits(matrix.domain[c].1.chirality()))
        .collect();
    if keep.len() == matrix.domain.len() {
        return Ok(matrix.kernel_basis());
    }
    let vectors: Vec<Element> = keep.iter().map(|&c| Element::basis(matrix.domain[c])).collect();
    Ok(kernel_on(&d, &vectors))
}

/// Outcome of the `R^{2k+M−2} H_{2−M−k} ⊆ H_k` containment test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub power: usize,
    pub source_degree: usize,
    pub source_dim: usize,
    pub holds: bool,
}

/// Checks the submodule of `H_k` that exists when `M ∈ −2N` and
/// `2 − M/2 ≤ k ≤ 2 − M`. Returns `None` outside that window.
pub fn harmonic_containment(cfg: &SpaceConfig, k: usize) -> Option<Containment> {
    let big_m = cfg.big_m();
    let k = k as i64;
    if big_m > 0 || big_m % 2 != 0 || k < 2 - big_m / 2 || k > 2 - big_m {
        return None;
    }
    let power = ((2 * k + big_m - 2) / 2) as usize;
    let source_degree = (2 - big_m - k) as usize;
    let r = r2(cfg);
    let lifted: Vec<Element> = harmonics(cfg, source_degree)
        .iter()
        .map(|h| (0..power).fold(h.clone(), |acc, _| r.apply(&acc)))
        .collect();
    let target = harmonics(cfg, k as usize);
    let holds = lifted.iter().all(|v| member(v, &target));
    Some(Containment {
        power: 2 * power,
        source_degree,
        source_dim: lifted.len(),
        holds,
    })
}

/// Applies `op` `times` times.
pub(crate) fn power_apply(op: &Operator, v: &Element, times: usize) -> Element {
    (0..times).fold(v.clone(), |acc, _| op.apply(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::annihilates;
    use crate::superspace::dim_spinor;

    #[test]
    fn classical_harmonic_dimensions() {
        let c = SpaceConfig::new(3, 0).unwrap();
        for k in 0..5 {
            assert_eq!(harmonics(&c, k).len(), 2 * k + 1);
        }
    }

    #[test]
    fn degree_one_is_harmonic() {
        for (m, n) in [(3, 1), (4, 2), (2, 1)] {
            let c = SpaceConfig::new(m, n).unwrap();
            assert_eq!(harmonics(&c, 1).len(), c.dim());
        }
    }

    #[test]
    fn r_squared_times_constants_is_harmonic_at_m_zero() {
        let c = SpaceConfig::new(4, 2).unwrap();
        let got = harmonic_containment(&c, 2).unwrap();
        assert!(got.holds);
        assert_eq!(got.power, 2);
        assert!(harmonic_containment(&c, 3).is_none());
        assert!(harmonic_containment(&SpaceConfig::new(3, 1).unwrap(), 2).is_none());
    }

    #[test]
    fn constants_are_monogenic() {
        let c = SpaceConfig::new(3, 1).unwrap();
        for q in 0..3 {
            let m0 = monogenics(&c, 0, q, Chirality::All).unwrap();
            assert_eq!(m0.len() as u128, dim_spinor(&c, q));
            assert_eq!(m0.len(), 2 * (q + 1));
        }
    }

    #[test]
    fn classical_monogenic_dimensions() {
        let c = SpaceConfig::new(3, 0).unwrap();
        for k in 1..4 {
            let mk = monogenics(&c, k, 0, Chirality::All).unwrap();
            assert_eq!(mk.len(), 2 * (k + 1));
            assert!(annihilates(&dirac(&c), &mk));
            assert!(mk.iter().all(|v| v.poly_degree() == Some(k)));
        }
    }

    #[test]
    fn chirality_splits_the_kernel() {
        let c = SpaceConfig::new(4, 1).unwrap();
        let all = monogenics(&c, 1, 2, Chirality::All).unwrap().len();
        let plus = monogenics(&c, 1, 2, Chirality::Plus).unwrap().len();
        let minus = monogenics(&c, 1, 2, Chirality::Minus).unwrap().len();
        assert_eq!(all, plus + minus);
        assert!(monogenics(&SpaceConfig::new(3, 1).unwrap(), 1, 1, Chirality::Plus).is_err());
    }
}
