use std::collections::BTreeMap;

use malachite_q::Rational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{element_json, Weight};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{combine, eliminate, kernel_on, SparseVec};
use crate::operators::{k_op, Operator};
use crate::superspace::{BasisKey, Element, SpaceConfig};

/// A raising operator with its root.
#[derive(Clone, Debug)]
pub struct RootOperator {
    pub weight: Weight,
    pub op: Operator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularVector {
    pub weight: Weight,
    pub vector: Value,
}

impl SingularVector {
    pub fn new(cfg: &SpaceConfig, v: &Element, weight: Weight) -> Self {
        SingularVector {
            weight,
            vector: element_json(cfg, v),
        }
    }
}

fn require_cartan(cfg: &SpaceConfig) -> Result<()> {
    if cfg.m() < 3 {
        return Err(Error::NoCartanConfig(format!(
            "m = {} (the Borel convention needs m > 2)",
            cfg.m()
        )));
    }
    Ok(())
}

/// `H^ε_j = −i K_{j,d+j}` for `j ≤ d`, then `H^δ_i = K_{m+i,m+n+i}`.
pub fn cartan_operators(cfg: &SpaceConfig) -> Result<Vec<Operator>> {
    require_cartan(cfg)?;
    let (m, n, d) = (cfg.m(), cfg.n(), cfg.d());
    let mut out = Vec::new();
    for j in 1..=d {
        out.push(k_op(cfg, j, d + j).scale(&-Scalar::i()).with_label(format!("Hε{j}")));
    }
    for i in 1..=n {
        out.push(k_op(cfg, m + i, m + n + i).with_label(format!("Hδ{i}")));
    }
    Ok(out)
}

/// Weight vectors of the defining representation as coordinate vectors.
fn defining_weights(cfg: &SpaceConfig) -> Vec<(Vec<Scalar>, Weight)> {
    let (m, n, d, dim) = (cfg.m(), cfg.n(), cfg.d(), cfg.dim());
    let unit = |pairs: &[(usize, Scalar)]| {
        let mut v = vec![Scalar::zero(); dim];
        for (j, c) in pairs {
            v[j - 1] = c.clone();
        }
        v
    };
    let mut out = Vec::new();
    for j in 1..=d {
        let eps = Weight::epsilon(cfg, j);
        out.push((unit(&[(j, Scalar::one()), (d + j, Scalar::i())]), eps.clone()));
        out.push((
            unit(&[(j, Scalar::one()), (d + j, -Scalar::i())]),
            eps.scale(&Rational::from(-1)),
        ));
    }
    if cfg.m_is_odd() {
        out.push((unit(&[(m, Scalar::one())]), Weight::zero(cfg)));
    }
    for i in 1..=n {
        let delta = Weight::delta(cfg, i);
        out.push((unit(&[(m + i, Scalar::one())]), delta.clone()));
        out.push((unit(&[(m + n + i, Scalar::one())]), delta.scale(&Rational::from(-1))));
    }
    out
}

/// Raising operators `Σ u_a[i] u_b[j] K_ij` for each lexicographically
/// positive root `wt(u_a) + wt(u_b)`.
pub fn positive_roots(cfg: &SpaceConfig) -> Result<Vec<RootOperator>> {
    require_cartan(cfg)?;
    let us = defining_weights(cfg);
    let dim = cfg.dim();
    let mut out = Vec::new();
    for a in 0..us.len() {
        for b in a..us.len() {
            let weight = us[a].1.add(&us[b].1);
            if !weight.is_positive() || weight.eps.iter().any(|e| *e == 2 || *e == -2) {
                continue;
            }
            let mut terms = Vec::new();
            for i in 1..=dim {
                for j in 1..=dim {
                    let c = &us[a].0[i - 1] * &us[b].0[j - 1];
                    if !c.is_zero() {
                        terms.push((c, k_op(cfg, i, j)));
                    }
                }
            }
            let op = Operator::combination(cfg, terms).with_label(format!("Y[{weight}]"));
            out.push(RootOperator { weight, op });
        }
    }
    Ok(out)
}

/// Splits `span(vs)` into joint eigenspaces of the Cartan operators.
pub fn weight_spaces(cfg: &SpaceConfig, vs: &[Element]) -> Result<Vec<(Weight, Vec<Element>)>> {
    let cartan = cartan_operators(cfg)?;
    let reach = vs
        .iter()
        .map(|v| v.poly_degree().unwrap_or(0) + v.max_t_degree())
        .max()
        .unwrap_or(0) as i64
        + (cfg.d() + cfg.n()) as i64
        + 1;
    let mut groups: Vec<(Vec<Rational>, Vec<Element>)> = vec![(Vec::new(), vs.to_vec())];
    for h in &cartan {
        let mut next = Vec::new();
        for (prefix, space) in groups {
            let mut found = 0;
            for twice in -2 * reach..=2 * reach {
                let lambda = Rational::from_signeds(twice, 2);
                let shifted = h.sub(&Operator::scalar(cfg, Scalar::from_rational(lambda.clone())));
                let eig = kernel_on(&shifted, &space);
                if eig.is_empty() {
                    continue;
                }
                found += eig.len();
                let mut p = prefix.clone();
                p.push(lambda);
                next.push((p, eig));
            }
            if found != space.len() {
                return Err(Error::UnsupportedConfig(format!(
                    "{} is not diagonalizable with half-integral eigenvalues on a space of dim {}",
                    h.label(),
                    space.len()
                )));
            }
        }
        groups = next;
    }
    let d = cfg.d();
    Ok(groups
        .into_iter()
        .map(|(mut coords, vecs)| {
            let delta = coords.split_off(d);
            (Weight { eps: coords, delta }, vecs)
        })
        .collect())
}

/// Vectors in `span(space)` killed by every positive root operator, with their weights.
pub fn singular_vectors(cfg: &SpaceConfig, space: &[Element]) -> Result<Vec<(Element, Weight)>> {
    let roots = positive_roots(cfg)?;
    let columns: Vec<SparseVec<(usize, BasisKey)>> = space
        .par_iter()
        .map(|v| {
            let mut col = BTreeMap::new();
            for (r, root) in roots.iter().enumerate() {
                for (key, c) in root.op.apply(v).into_terms() {
                    col.insert((r, key), c);
                }
            }
            col
        })
        .collect();
    let kernel = combine(space, &eliminate(&columns).kernel);
    let mut out = Vec::new();
    for (w, vecs) in weight_spaces(cfg, &kernel)? {
        out.extend(vecs.into_iter().map(|v| (v, w.clone())));
    }
    Ok(out)
}

/// Highest weights of the monogenic modules: one entry for odd `m`,
/// `[M_k^+, M_k^−]` for even `m`.
pub fn expected_monogenic_weights(cfg: &SpaceConfig, k: usize) -> Vec<Weight> {
    let n = cfg.n();
    let half = Rational::from_signeds(1, 2);
    let base = Weight::epsilon(cfg, 1)
        .scale(&Rational::from(k as i64))
        .add(&Weight::omega_d(cfg));
    let plus = base.add(&Weight::nu(cfg, n).scale(&-half.clone()));
    if cfg.m_is_odd() {
        return vec![plus];
    }
    let minus = if n == 0 {
        let mut w = base.clone();
        let last = w.eps.len() - 1;
        w.eps[last] = -half;
        w
    } else {
        base.add(&Weight::nu(cfg, n - 1))
            .add(&Weight::nu(cfg, n).scale(&Rational::from_signeds(-3, 2)))
    };
    vec![plus, minus]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{monogenics, Chirality};
    use crate::superspace::{PolyMonomial, SpinorMonomial};

    fn half(a: i64) -> Rational {
        Rational::from_signeds(a, 2)
    }

    #[test]
    fn cartan_calibration() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let h = cartan_operators(&c).unwrap();
        let one = Element::one();
        assert_eq!(h[0].apply(&one), one.scale(&Scalar::frac(1, 2)));
        let mut z = Element::var(&c, 1);
        z.add_scaled(&Element::var(&c, 2), &Scalar::i());
        assert_eq!(h[0].apply(&z), z.clone().scale(&Scalar::frac(3, 2)));
        let w = weight_spaces(&c, &[z]).unwrap();
        assert_eq!(w[0].0.eps, vec![half(3)]);
    }

    #[test]
    fn roots_of_osp_3_2() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let roots: Vec<String> = positive_roots(&c).unwrap().iter().map(|r| r.weight.to_string()).collect();
        assert_eq!(roots.len(), 5);
        for expected in ["1ε1", "1δ1", "1ε1 + 1δ1", "1ε1 + -1δ1", "2δ1"] {
            assert!(roots.contains(&expected.to_string()), "{roots:?}");
        }
    }

    #[test]
    fn spinor_space_weight() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let m0 = monogenics(&c, 0, 2, Chirality::All).unwrap();
        let sing = singular_vectors(&c, &m0).unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].1, expected_monogenic_weights(&c, 0)[0]);
        assert_eq!(sing[0].1.eps, vec![half(1)]);
        assert_eq!(sing[0].1.delta, vec![half(-1)]);
    }

    #[test]
    fn classical_so5_weight() {
        let c = SpaceConfig::new(5, 0).unwrap();
        let m1 = monogenics(&c, 1, 0, Chirality::All).unwrap();
        let sing = singular_vectors(&c, &m1).unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].1.eps, vec![half(3), half(1)]);
    }

    #[test]
    fn small_m_has_no_borel() {
        let c = SpaceConfig::new(2, 1).unwrap();
        assert!(matches!(cartan_operators(&c), Err(Error::NoCartanConfig(_))));
        let _ = (PolyMonomial::one(), SpinorMonomial::one());
    }
}
