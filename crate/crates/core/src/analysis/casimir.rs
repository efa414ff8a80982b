use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spaces::{harmonics_spinor, Chirality};
use crate::field::Scalar;
use crate::operators::{casimir, Operator};
use crate::superspace::{Element, SpaceConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CasimirOutcome {
    /// `C(C + a) = 0` with both factors nonzero; eigenvalues `0` and `−a`.
    Eigenvalues { values: Vec<i64> },
    /// `C ≠ 0` and `C² = 0`.
    Nilpotent,
    Fail { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirReport {
    pub k: usize,
    pub q: usize,
    pub shift: i64,
    pub domain_dim: usize,
    pub outcome: CasimirOutcome,
}

impl CasimirReport {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, CasimirOutcome::Fail { .. })
    }
}

fn all_zero(op: &Operator, vs: &[Element]) -> bool {
    vs.par_iter().all(|v| op.apply(v).is_zero())
}

/// Spectrum of `C = x∂x` on `H_k ⊗ S^{≤q}` with `a = 2k−2+M`.
pub fn casimir_test(cfg: &SpaceConfig, k: usize, q: usize) -> CasimirReport {
    let a = 2 * k as i64 - 2 + cfg.big_m();
    let c = casimir(cfg);
    let hs = harmonics_spinor(cfg, k, q, Chirality::All);
    let c_nonzero = !all_zero(&c, &hs);
    let outcome = if a != 0 {
        let shifted = c.add(&Operator::scalar(cfg, Scalar::from(a)));
        let product = c.compose(&shifted);
        if !all_zero(&product, &hs) {
            CasimirOutcome::Fail {
                reason: format!("C(C + {a}) does not vanish"),
            }
        } else if !c_nonzero || all_zero(&shifted, &hs) {
            CasimirOutcome::Fail {
                reason: "one factor of C(C + a) vanishes identically".into(),
            }
        } else {
            CasimirOutcome::Eigenvalues { values: vec![-a, 0] }
        }
    } else if !c_nonzero {
        CasimirOutcome::Fail {
            reason: "C vanishes identically".into(),
        }
    } else if !all_zero(&c.compose(&c), &hs) {
        CasimirOutcome::Fail {
            reason: "C² does not vanish".into(),
        }
    } else {
        CasimirOutcome::Nilpotent
    };
    CasimirReport {
        k,
        q,
        shift: a,
        domain_dim: hs.len(),
        outcome,
    }
}
