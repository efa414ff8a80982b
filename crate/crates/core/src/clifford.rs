//! The super Clifford algebra `Cl_{m|2n}` and its realization on spinors.
//!
//! Words are normal ordered with non-decreasing generator indices. A bosonic
//! generator squares to `−1`, while a repeated fermionic generator behaves
//! like a power of a Weyl generator and survives.

use std::collections::BTreeMap;

use crate::field::Scalar;
use crate::superspace::{Element, PolyMonomial, SpaceConfig, SpinorMonomial};

/// A single word `coefficient · E_{f1} ⋯ E_{fr}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordWord {
    pub factors: Vec<usize>,
    pub coefficient: Scalar,
}

/// A linear combination of Clifford words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordElement {
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Chooses which out-of-order adjacent pair to rewrite next.
pub trait RewriteStrategy {
    /// `candidates` holds the left positions of rewritable pairs; never empty.
    fn choose(&mut self, candidates: &[usize]) -> usize;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Leftmost;

impl RewriteStrategy for Leftmost {
    fn choose(&mut self, candidates: &[usize]) -> usize {
        candidates[0]
    }
}

impl<F: FnMut(&[usize]) -> usize> RewriteStrategy for F {
    fn choose(&mut self, candidates: &[usize]) -> usize {
        self(candidates)
    }
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::word(Vec::new(), c)
    }

    pub fn word(factors: Vec<usize>, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_word(factors, c);
        e
    }

    pub fn generator(k: usize) -> Self {
        Self::word(vec![k], Scalar::one())
    }

    pub fn from_words(words: impl IntoIterator<Item = CliffordWord>) -> Self {
        let mut e = Self::zero();
        for w in words {
            e.add_word(w.factors, w.coefficient);
        }
        e
    }

    pub fn add_word(&mut self, factors: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(factors).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn words(&self) -> impl Iterator<Item = CliffordWord> + '_ {
        self.terms.iter().map(|(f, c)| CliffordWord {
            factors: f.clone(),
            coefficient: c.clone(),
        })
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_word(f.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (f, v) in &self.terms {
            out.add_word(f.clone(), v * c);
        }
        out
    }

    /// Concatenation product, not normal ordered.
    pub fn mul(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (f, a) in &self.terms {
            for (g, b) in &other.terms {
                let mut w = f.clone();
                w.extend_from_slice(g);
                out.add_word(w, a * b);
            }
        }
        out
    }

    pub fn is_normal(&self, cfg: &SpaceConfig) -> bool {
        self.terms.keys().all(|w| rewritable(cfg, w).is_empty())
    }

    pub fn normal_form(&self, cfg: &SpaceConfig) -> CliffordElement {
        self.normal_form_with(cfg, &mut Leftmost)
    }

    /// Applies `E_kE_l = −(−1)^{[k][l]}E_lE_k − 2g_{lk}` until every word is
    /// non-decreasing with no repeated bosonic index.
    pub fn normal_form_with(
        &self,
        cfg: &SpaceConfig,
        strategy: &mut dyn RewriteStrategy,
    ) -> CliffordElement {
        let mut pending: Vec<(Vec<usize>, Scalar)> =
            self.terms.iter().map(|(f, c)| (f.clone(), c.clone())).collect();
        let mut done = CliffordElement::zero();
        while let Some((w, c)) = pending.pop() {
            let cand = rewritable(cfg, &w);
            if cand.is_empty() {
                done.add_word(w, c);
                continue;
            }
            let p = strategy.choose(&cand);
            let (k, l) = (w[p], w[p + 1]);
            let mut shorter = w[..p].to_vec();
            shorter.extend_from_slice(&w[p + 2..]);
            if k == l {
                // bosonic square
                pending.push((shorter, -c));
                continue;
            }
            let mut swapped = w.clone();
            swapped.swap(p, p + 1);
            let s = if cfg.grade(k) * cfg.grade(l) == 1 { 1 } else { -1 };
            pending.push((swapped, c.scale_rational(&s.into())));
            let g = cfg.metric(l, k);
            if g != 0 {
                pending.push((shorter, c.scale_rational(&(-2 * g as i64).into())));
            }
        }
        done
    }

    /// The hat morphism, applied letterwise.
    pub fn hat(&self, cfg: &SpaceConfig) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (f, c) in &self.terms {
            let mut w = Vec::with_capacity(f.len());
            let mut coef = c.clone();
            for &k in f {
                let (j, g) = cfg.metric_partner(k);
                w.push(j);
                if g < 0 {
                    coef = -coef;
                }
            }
            out.add_word(w, coef);
        }
        out
    }
}

fn rewritable(cfg: &SpaceConfig, w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| w[p] > w[p + 1] || (w[p] == w[p + 1] && !cfg.is_fermionic(w[p])))
        .collect()
}

/// `Ê_k = Σ_j E_j g_{jk}`.
pub fn hat(cfg: &SpaceConfig, k: usize) -> CliffordElement {
    CliffordElement::generator(k).hat(cfg)
}

/// `B_ij = −½(g_{ji} + Ê_i Ê_j)`, in normal form.
pub fn bivector(cfg: &SpaceConfig, i: usize, j: usize) -> CliffordElement {
    let mut b = hat(cfg, i).mul(&hat(cfg, j));
    b.add_word(Vec::new(), Scalar::from(cfg.metric(j, i) as i64));
    b.scale(&Scalar::frac(-1, 2)).normal_form(cfg)
}

/// The defining action `K_ij E_k = g_{kj} E_i − (−1)^{[i][j]} g_{ki} E_j`.
pub fn defining_action(cfg: &SpaceConfig, i: usize, j: usize, k: usize) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    let a = cfg.metric(k, j) as i64;
    if a != 0 {
        out.push((a, i));
    }
    let b = cfg.metric(k, i) as i64;
    if b != 0 {
        let s = if cfg.grade(i) * cfg.grade(j) == 1 { -1 } else { 1 };
        out.push((-s * b, j));
    }
    let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
    for (c, idx) in out {
        *merged.entry(idx).or_default() += c;
    }
    merged.into_iter().filter(|&(_, c)| c != 0).map(|(i, c)| (c, i)).collect()
}

/// Elementary operators on `Λ_{d|n}`; indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinorGen {
    Theta(usize),
    DTheta(usize),
    T(usize),
    DT(usize),
    /// `G = (−1)^{Λ-degree}`.
    G,
}

impl SpinorGen {
    fn apply(self, s: &SpinorMonomial) -> Option<(i64, SpinorMonomial)> {
        let theta = s.theta();
        match self {
            SpinorGen::Theta(j) | SpinorGen::DTheta(j) => {
                let set = theta & (1 << j) != 0;
                if set == matches!(self, SpinorGen::Theta(_)) {
                    return None;
                }
                let before = (theta & ((1u8 << j) - 1)).count_ones();
                let sign = if before % 2 == 1 { -1 } else { 1 };
                Some((sign, s.with_theta(theta ^ (1 << j))))
            }
            SpinorGen::T(i) => {
                let sign = if theta.count_ones() % 2 == 1 { -1 } else { 1 };
                Some((sign, s.with_t(i, s.t()[i] + 1)))
            }
            SpinorGen::DT(i) => {
                let e = s.t()[i];
                if e == 0 {
                    return None;
                }
                let sign = if theta.count_ones() % 2 == 1 { -1 } else { 1 };
                Some((sign * e as i64, s.with_t(i, e - 1)))
            }
            SpinorGen::G => {
                let sign = if s.lambda_degree() % 2 == 1 { -1 } else { 1 };
                Some((sign, *s))
            }
        }
    }

    fn t_shift(self) -> i64 {
        match self {
            SpinorGen::T(_) => 1,
            SpinorGen::DT(_) => -1,
            _ => 0,
        }
    }

    fn lambda_shift(self) -> i64 {
        match self {
            SpinorGen::T(_) | SpinorGen::Theta(_) => 1,
            SpinorGen::DT(_) | SpinorGen::DTheta(_) => -1,
            SpinorGen::G => 0,
        }
    }
}

/// A linear combination of products of elementary spinor operators. Each
/// product is applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpinorOperator {
    terms: Vec<(Scalar, Vec<SpinorGen>)>,
    parity: u8,
}

impl SpinorOperator {
    pub fn identity() -> Self {
        SpinorOperator {
            terms: vec![(Scalar::one(), Vec::new())],
            parity: 0,
        }
    }

    fn single(c: Scalar, gens: Vec<SpinorGen>, parity: u8) -> Self {
        SpinorOperator {
            terms: vec![(c, gens)],
            parity,
        }
    }

    /// Natural parity of the operator.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn add(&self, other: &SpinorOperator) -> SpinorOperator {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SpinorOperator {
            terms,
            parity: self.parity,
        }
    }

    pub fn scale(&self, c: &Scalar) -> SpinorOperator {
        SpinorOperator {
            terms: self.terms.iter().map(|(a, g)| (a * c, g.clone())).collect(),
            parity: self.parity,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SpinorOperator) -> SpinorOperator {
        let mut terms = Vec::new();
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                let mut w = f.clone();
                w.extend_from_slice(g);
                terms.push((a * b, w));
            }
        }
        SpinorOperator {
            terms,
            parity: (self.parity + other.parity) % 2,
        }
    }

    /// Bounds on the change of t-degree over all terms.
    pub fn t_shift(&self) -> (i64, i64) {
        shift_bounds(&self.terms, SpinorGen::t_shift)
    }

    /// Bounds on the change of Λ-degree over all terms.
    pub fn lambda_shift(&self) -> (i64, i64) {
        shift_bounds(&self.terms, SpinorGen::lambda_shift)
    }

    pub fn apply_monomial(&self, s: &SpinorMonomial) -> BTreeMap<SpinorMonomial, Scalar> {
        let mut out: BTreeMap<SpinorMonomial, Scalar> = BTreeMap::new();
        'terms: for (c, gens) in &self.terms {
            let mut cur = *s;
            let mut k: i64 = 1;
            for g in gens.iter().rev() {
                match g.apply(&cur) {
                    Some((f, next)) => {
                        k *= f;
                        cur = next;
                    }
                    None => continue 'terms,
                }
            }
            let v = out.entry(cur).or_default();
            *v += &c.scale_rational(&k.into());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Applies the operator to the spinor factor of every term, without signs.
    pub fn apply(&self, v: &Element) -> Element {
        let mut out = Element::zero();
        for ((p, s), c) in v.iter() {
            for (s2, a) in self.apply_monomial(s) {
                out.add_term((*p, s2), c * &a);
            }
        }
        out
    }
}

fn shift_bounds(terms: &[(Scalar, Vec<SpinorGen>)], f: fn(SpinorGen) -> i64) -> (i64, i64) {
    let shifts = terms.iter().map(|(_, g)| g.iter().map(|&x| f(x)).sum::<i64>());
    let lo = shifts.clone().min().unwrap_or(0);
    let hi = shifts.max().unwrap_or(0);
    (lo, hi)
}

/// The spinor realization `κ(E_j)`.
pub fn kappa(cfg: &SpaceConfig, j: usize) -> SpinorOperator {
    let (m, n, d) = (cfg.m(), cfg.n(), cfg.d());
    let parity = cfg.grade(j);
    let one = Scalar::one();
    if j <= d {
        SpinorOperator::single(one.clone(), vec![SpinorGen::Theta(j - 1)], parity).add(
            &SpinorOperator::single(-one, vec![SpinorGen::DTheta(j - 1)], parity),
        )
    } else if j <= 2 * d {
        SpinorOperator::single(Scalar::i(), vec![SpinorGen::Theta(j - d - 1)], parity).add(
            &SpinorOperator::single(Scalar::i(), vec![SpinorGen::DTheta(j - d - 1)], parity),
        )
    } else if j == m {
        SpinorOperator::single(Scalar::i(), vec![SpinorGen::G], parity)
    } else if j <= m + n {
        SpinorOperator::single(Scalar::sqrt2(), vec![SpinorGen::T(j - m - 1)], parity)
    } else {
        SpinorOperator::single(-Scalar::sqrt2(), vec![SpinorGen::DT(j - m - n - 1)], parity)
    }
}

/// `κ` extended to the whole Clifford algebra.
pub fn kappa_element(cfg: &SpaceConfig, a: &CliffordElement) -> SpinorOperator {
    let mut out: Option<SpinorOperator> = None;
    for (word, c) in a.terms() {
        let mut op = SpinorOperator::identity();
        for &k in word {
            op = op.compose(&kappa(cfg, k));
        }
        let op = op.scale(c);
        out = Some(match out {
            None => op,
            Some(acc) => acc.add(&op),
        });
    }
    out.unwrap_or_else(|| SpinorOperator::identity().scale(&Scalar::zero()))
}

/// `E⊥(E_k ⊗ v) = κ(Ê_k) v` for a spinor `v`.
pub fn e_perp(cfg: &SpaceConfig, k: usize, v: &Element) -> Element {
    kappa_element(cfg, &hat(cfg, k)).apply(v)
}

/// A pure spinor `1 ⊗ s`.
pub fn spinor(s: SpinorMonomial) -> Element {
    Element::basis((PolyMonomial::one(), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::spinor_basis;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(m: usize, n: usize) -> SpaceConfig {
        SpaceConfig::new(m, n).unwrap()
    }

    fn e(k: &[usize]) -> CliffordElement {
        CliffordElement::word(k.to_vec(), Scalar::one())
    }

    fn lambda_le(c: &SpaceConfig, q: usize) -> Vec<SpinorMonomial> {
        spinor_basis(c, q).into_iter().filter(|s| s.lambda_degree() <= q).collect()
    }

    #[test]
    fn normal_form_examples() {
        let c = cfg(3, 1);
        assert_eq!(e(&[1, 1]).normal_form(&c), CliffordElement::scalar(Scalar::from(-1)));
        let comm = e(&[4, 5]).add(&e(&[5, 4]).scale(&Scalar::from(-1)));
        assert_eq!(comm.normal_form(&c), CliffordElement::scalar(Scalar::from(2)));
        assert!(e(&[1, 4]).add(&e(&[4, 1])).normal_form(&c).is_zero());
        assert_eq!(e(&[4, 4]).normal_form(&c), e(&[4, 4]));
    }

    #[test]
    fn hats_and_bivectors() {
        let c = cfg(3, 1);
        assert_eq!(hat(&c, 1), e(&[1]));
        assert_eq!(hat(&c, 4), e(&[5]).scale(&Scalar::from(-1)));
        assert_eq!(hat(&c, 5), e(&[4]));
        assert_eq!(bivector(&c, 1, 2), e(&[1, 2]).scale(&Scalar::frac(-1, 2)));
        for k in 1..=3 {
            assert!(bivector(&c, k, k).is_zero());
        }
        for k in 1..=c.dim() {
            let hh = hat(&c, k).hat(&c);
            let sign = if c.is_fermionic(k) { -1 } else { 1 };
            assert_eq!(hh, e(&[k]).scale(&Scalar::from(sign)));
        }
    }

    #[test]
    fn kappa_examples() {
        let c = cfg(3, 1);
        let one = spinor(SpinorMonomial::one());
        let t1 = spinor(SpinorMonomial::from_parts(0, [1, 0, 0, 0, 0, 0, 0, 0]));
        let th1 = spinor(SpinorMonomial::from_parts(1, [0; 8]));
        assert_eq!(kappa(&c, 4).apply(&one), t1.scale(&Scalar::sqrt2()));
        assert_eq!(kappa(&c, 3).apply(&one), one.scale(&Scalar::i()));
        assert_eq!(kappa(&c, 3).apply(&th1), th1.scale(&-Scalar::i()));
        assert_eq!(kappa(&c, 1).apply(&one), th1);
    }

    #[test]
    fn kappa_respects_clifford_relation() {
        for (m, n) in [(3, 1), (4, 2), (5, 1), (2, 1), (5, 0)] {
            let c = cfg(m, n);
            let basis = lambda_le(&c, 4);
            for k in 1..=c.dim() {
                for l in 1..=c.dim() {
                    let s = if c.grade(k) * c.grade(l) == 1 { -1 } else { 1 };
                    let lhs = kappa(&c, k)
                        .compose(&kappa(&c, l))
                        .add(&kappa(&c, l).compose(&kappa(&c, k)).scale(&Scalar::from(s)));
                    let g = Scalar::from(-2 * c.metric(l, k) as i64);
                    for b in &basis {
                        let v = spinor(*b);
                        assert_eq!(lhs.apply(&v), v.scale(&g), "({m},{n}) k={k} l={l} {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn e_perp_examples() {
        let c = cfg(3, 1);
        let one = spinor(SpinorMonomial::one());
        assert_eq!(e_perp(&c, 1, &one), spinor(SpinorMonomial::from_parts(1, [0; 8])));
        assert!(e_perp(&c, 4, &one).is_zero());
    }

    fn commutator_sign(c: &SpaceConfig, a: u8, b: u8) -> Scalar {
        let _ = c;
        Scalar::from(if a * b == 1 { -1 } else { 1 })
    }

    /// `π_S(K_ij)` as a spinor operator.
    fn pi_s(c: &SpaceConfig, i: usize, j: usize) -> SpinorOperator {
        kappa_element(c, &bivector(c, i, j))
    }

    #[test]
    fn bivectors_satisfy_structure_relations() {
        for (m, n) in [(3, 1), (2, 1)] {
            let c = cfg(m, n);
            let basis = lambda_le(&c, 4);
            let dim = c.dim();
            let gr = |x: usize| c.grade(x);
            for i in 1..=dim {
                for j in 1..=dim {
                    for k in 1..=dim {
                        for l in 1..=dim {
                            let pij = (gr(i) + gr(j)) % 2;
                            let pkl = (gr(k) + gr(l)) % 2;
                            let lhs = pi_s(&c, i, j)
                                .compose(&pi_s(&c, k, l))
                                .add(
                                    &pi_s(&c, k, l)
                                        .compose(&pi_s(&c, i, j))
                                        .scale(&-commutator_sign(&c, pij, pkl)),
                                );
                            let sg = |p: u8| Scalar::from(if p % 2 == 1 { -1 } else { 1 });
                            let terms = [
                                (Scalar::from(c.metric(k, j) as i64), pi_s(&c, i, l)),
                                (
                                    &sg(gr(i) * (gr(j) + gr(k))) * &Scalar::from(c.metric(l, i) as i64),
                                    pi_s(&c, j, k),
                                ),
                                (
                                    -(&sg(gr(k) * gr(l)) * &Scalar::from(c.metric(l, j) as i64)),
                                    pi_s(&c, i, k),
                                ),
                                (
                                    -(&sg(gr(i) * gr(j)) * &Scalar::from(c.metric(k, i) as i64)),
                                    pi_s(&c, j, l),
                                ),
                            ];
                            for b in &basis {
                                let v = spinor(*b);
                                let mut rhs = Element::zero();
                                for (coef, op) in &terms {
                                    rhs.add_scaled(&op.apply(&v), coef);
                                }
                                assert_eq!(lhs.apply(&v), rhs, "({m},{n}) {i}{j}{k}{l} {b:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn e_perp_is_equivariant() {
        let c = cfg(3, 1);
        let basis = lambda_le(&c, 3);
        let dim = c.dim();
        for i in 1..=dim {
            for j in 1..=dim {
                let k_s = pi_s(&c, i, j);
                for k in 1..=dim {
                    let sign = if c.grade(k) * ((c.grade(i) + c.grade(j)) % 2) == 1 { -1 } else { 1 };
                    for b in &basis {
                        let v = spinor(*b);
                        let mut lhs = Element::zero();
                        for (coef, idx) in defining_action(&c, i, j, k) {
                            lhs.add_scaled(&e_perp(&c, idx, &v), &Scalar::from(coef));
                        }
                        lhs.add_scaled(&e_perp(&c, k, &k_s.apply(&v)), &Scalar::from(sign));
                        let rhs = k_s.apply(&e_perp(&c, k, &v));
                        assert_eq!(lhs, rhs, "i={i} j={j} k={k} {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn shift_metadata_holds() {
        let c = cfg(4, 2);
        for k in 1..=c.dim() {
            let op = kappa(&c, k);
            let (lo, hi) = op.lambda_shift();
            for b in lambda_le(&c, 3) {
                for s in op.apply_monomial(&b).keys() {
                    let dl = s.lambda_degree() as i64 - b.lambda_degree() as i64;
                    assert!(lo <= dl && dl <= hi);
                }
            }
        }
    }

    fn random_word(rng: &mut ChaCha8Rng, dim: usize) -> Vec<usize> {
        let len = rng.gen_range(0..=6);
        (0..len).map(|_| rng.gen_range(1..=dim)).collect()
    }

    #[test]
    fn normal_form_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (m, n) in [(3, 1), (2, 2)] {
            let c = cfg(m, n);
            for _ in 0..250 {
                let w = CliffordElement::word(random_word(&mut rng, c.dim()), Scalar::one());
                let a = w.normal_form(&c);
                let mut r2 = ChaCha8Rng::seed_from_u64(rng.gen());
                let b = w.normal_form_with(&c, &mut |cand: &[usize]| cand[r2.gen_range(0..cand.len())]);
                assert_eq!(a, b);
                assert!(a.is_normal(&c));
                assert_eq!(a.normal_form(&c), a);
            }
        }
    }

    proptest! {
        #[test]
        fn normal_form_respects_kappa(word in prop::collection::vec(1usize..=5, 0..6)) {
            let c = cfg(3, 1);
            let w = CliffordElement::word(word, Scalar::one());
            let a = kappa_element(&c, &w);
            let b = kappa_element(&c, &w.normal_form(&c));
            for s in lambda_le(&c, 3) {
                let v = spinor(s);
                prop_assert_eq!(a.apply(&v), b.apply(&v));
            }
        }
    }
}
