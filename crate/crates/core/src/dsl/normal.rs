use std::collections::BTreeMap;
use std::fmt;

use malachite_q::Rational;

use super::ast::{Expr, Named};
use crate::clifford::{Leftmost, RewriteStrategy};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::superspace::SpaceConfig;

/// A polynomial in the symbol `M` with scalar coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly(BTreeMap<u32, Scalar>);

impl MPoly {
    pub fn constant(c: Scalar) -> Self {
        let mut m = MPoly::default();
        m.add_term(0, c);
        m
    }

    pub fn symbol() -> Self {
        let mut m = MPoly::default();
        m.add_term(1, Scalar::one());
        m
    }

    fn add_term(&mut self, power: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(power).or_default();
        *e += &c;
        if e.is_zero() {
            self.0.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&mut self, other: &MPoly) {
        for (p, c) in &other.0 {
            self.add_term(*p, c.clone());
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (p, a) in &self.0 {
            for (q, b) in &other.0 {
                out.add_term(p + q, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::default();
        for (p, a) in &self.0 {
            out.add_term(*p, a * c);
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn eval(&self, big_m: i64) -> Scalar {
        let m = Scalar::from(big_m);
        let mut out = Scalar::zero();
        for (p, c) in self.0.iter().rev() {
            let mut term = c.clone();
            for _ in 0..*p {
                term = &term * &m;
            }
            out += &term;
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(p, c)| match p {
                0 => format!("({c})"),
                1 => format!("({c})·M"),
                _ => format!("({c})·M^{p}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One generator of the Clifford–Weyl algebra. The derived order
/// `X < D < E` is the normal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X(usize),
    D(usize),
    E(usize),
}

impl Letter {
    fn index(self) -> usize {
        match self {
            Letter::X(j) | Letter::D(j) | Letter::E(j) => j,
        }
    }

    fn class(self) -> u8 {
        match self {
            Letter::X(_) => 0,
            Letter::D(_) => 1,
            Letter::E(_) => 2,
        }
    }

    fn howe_parity(self, cfg: &SpaceConfig) -> u8 {
        let g = cfg.grade(self.index());
        match self {
            Letter::E(_) => 1 - g,
            _ => g,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(j) => write!(f, "X({j})"),
            Letter::D(j) => write!(f, "D({j})"),
            Letter::E(j) => write!(f, "E({j})"),
        }
    }
}

/// Linear combination of normal words with coefficients polynomial in `M`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<Vec<Letter>, MPoly>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    fn word(w: Vec<Letter>, c: MPoly) -> Self {
        let mut nf = Self::zero();
        nf.add_word(w, &c);
        nf
    }

    fn add_word(&mut self, w: Vec<Letter>, c: &MPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        e.add(c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn add(&mut self, other: &NormalForm) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), c);
        }
    }

    fn scale(&self, c: &MPoly) -> NormalForm {
        let mut out = NormalForm::zero();
        for (w, a) in &self.terms {
            out.add_word(w.clone(), &a.mul(c));
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, MPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients after setting `M = m − 2n`.
    pub fn substitute(&self, cfg: &SpaceConfig) -> BTreeMap<Vec<Letter>, Scalar> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval(cfg.big_m())))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn is_zero_at(&self, cfg: &SpaceConfig) -> bool {
        self.substitute(cfg).is_empty()
    }

    pub fn equals_at(&self, other: &NormalForm, cfg: &SpaceConfig) -> bool {
        self.substitute(cfg) == other.substitute(cfg)
    }

    /// Howe-grading parity, `None` if the form mixes parities.
    pub fn parity(&self, cfg: &SpaceConfig) -> Option<u8> {
        let mut it = self
            .terms
            .keys()
            .map(|w| w.iter().map(|l| l.howe_parity(cfg)).sum::<u8>() % 2);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(Letter::to_string).collect();
                if word.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}·{}", word.join(""))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sgn(odd: bool) -> Scalar {
    Scalar::from(if odd { -1 } else { 1 })
}

fn rewritable(cfg: &SpaceConfig, w: &[Letter]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| {
            let (a, b) = (w[p], w[p + 1]);
            a > b || (a == b && (a.class() == 2) != cfg.is_fermionic(a.index()))
        })
        .collect()
}

/// Rewrites one word into normal words.
fn order_word(cfg: &SpaceConfig, w: Vec<Letter>, c: Scalar, strategy: &mut dyn RewriteStrategy) -> BTreeMap<Vec<Letter>, Scalar> {
    let mut pending = vec![(w, c)];
    let mut done: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        let cand = rewritable(cfg, &w);
        if cand.is_empty() {
            let e = done.entry(w.clone()).or_default();
            *e += &c;
            if e.is_zero() {
                done.remove(&w);
            }
            continue;
        }
        let p = strategy.choose(&cand);
        let (a, b) = (w[p], w[p + 1]);
        let (i, j) = (a.index(), b.index());
        let both_odd = cfg.grade(i) * cfg.grade(j) == 1;
        let mut shorter = w[..p].to_vec();
        shorter.extend_from_slice(&w[p + 2..]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        match (a, b) {
            (Letter::E(_), Letter::E(_)) => {
                if i == j {
                    pending.push((shorter, -c));
                } else {
                    pending.push((swapped, -(&c * &sgn(both_odd))));
                    let g = cfg.metric(j, i);
                    if g != 0 {
                        pending.push((shorter, c.scale_rational(&Rational::from(-2 * g as i64))));
                    }
                }
            }
            _ if a == b => {}
            (Letter::D(_), Letter::X(_)) => {
                if i == j {
                    pending.push((shorter, c.clone()));
                }
                pending.push((swapped, &c * &sgn(both_odd)));
            }
            _ => pending.push((swapped, &c * &sgn(both_odd))),
        }
    }
    done
}

struct Orderer<'a> {
    cfg: &'a SpaceConfig,
    strategy: &'a mut dyn RewriteStrategy,
}

impl Orderer<'_> {
    fn product(&mut self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let coef = ca.mul(cb);
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                for (nw, s) in order_word(self.cfg, w, Scalar::one(), &mut *self.strategy) {
                    out.add_word(nw, &coef.scale(&s));
                }
            }
        }
        out
    }

    fn letter(&self, l: Letter) -> NormalForm {
        NormalForm::word(vec![l], MPoly::constant(Scalar::one()))
    }

    fn scalar(&self, c: Scalar) -> NormalForm {
        NormalForm::word(Vec::new(), MPoly::constant(c))
    }

    fn combination(&mut self, parts: Vec<(Scalar, NormalForm)>) -> NormalForm {
        let mut out = NormalForm::zero();
        for (c, nf) in parts {
            out.add(&nf.scale(&MPoly::constant(c)));
        }
        out
    }

    fn hat(&self, k: usize) -> NormalForm {
        let (p, g) = self.cfg.metric_partner(k);
        NormalForm::word(vec![Letter::E(p)], MPoly::constant(Scalar::from(g as i64)))
    }

    fn dup(&self, k: usize) -> NormalForm {
        let (p, g) = self.cfg.metric_partner(k);
        NormalForm::word(vec![Letter::D(p)], MPoly::constant(Scalar::from(g as i64)))
    }

    fn named(&mut self, n: &Named) -> NormalForm {
        let cfg = self.cfg;
        let dim = cfg.dim();
        let one = Scalar::one;
        match *n {
            Named::Dirac => {
                let parts = (1..=dim)
                    .map(|k| (one(), self.product(&self.hat(k), &self.letter(Letter::D(k)))))
                    .collect();
                self.combination(parts)
            }
            Named::Vector => {
                let parts = (1..=dim)
                    .map(|j| (one(), self.product(&self.letter(Letter::X(j)), &self.letter(Letter::E(j)))))
                    .collect();
                self.combination(parts)
            }
            Named::Laplace | Named::R2 => {
                let make = |j| if *n == Named::R2 { Letter::X(j) } else { Letter::D(j) };
                let parts = (1..=dim)
                    .map(|k| {
                        let (p, g) = cfg.metric_partner(k);
                        (Scalar::from(g as i64), self.product(&self.letter(make(p)), &self.letter(make(k))))
                    })
                    .collect();
                self.combination(parts)
            }
            Named::Euler => {
                let parts = (1..=dim)
                    .map(|j| (one(), self.product(&self.letter(Letter::X(j)), &self.letter(Letter::D(j)))))
                    .collect();
                self.combination(parts)
            }
            Named::L(i, j) => {
                let s = -sgn(cfg.grade(i) * cfg.grade(j) == 1);
                let a = self.product(&self.letter(Letter::X(i)), &self.dup(j));
                let b = self.product(&self.letter(Letter::X(j)), &self.dup(i));
                self.combination(vec![(one(), a), (s, b)])
            }
            Named::B(i, j) => {
                let half = Scalar::frac(-1, 2);
                let hh = self.product(&self.hat(i), &self.hat(j));
                let g = self.scalar(Scalar::from(cfg.metric(j, i) as i64));
                self.combination(vec![(half.clone(), g), (half, hh)])
            }
            Named::K(i, j) => {
                let l = self.named(&Named::L(i, j));
                let b = self.named(&Named::B(i, j));
                self.combination(vec![(one(), l), (one(), b)])
            }
            Named::Pi(j) => {
                let x = self.named(&Named::Vector);
                let xe = self.product(&x, &self.hat(j));
                let mut m_2e = NormalForm::word(Vec::new(), MPoly::symbol());
                m_2e.add(&self.named(&Named::Euler).scale(&MPoly::constant(Scalar::from(2))));
                let xm = self.product(&self.letter(Letter::X(j)), &m_2e);
                let r2 = self.named(&Named::R2);
                let rd = self.product(&r2, &self.dup(j));
                self.combination(vec![(one(), xe), (one(), xm), (-one(), rd)])
            }
        }
    }

    fn expr(&mut self, e: &Expr) -> Result<NormalForm> {
        Ok(match e {
            Expr::X(j) => self.letter(Letter::X(*j)),
            Expr::D(j) => self.letter(Letter::D(*j)),
            Expr::Dup(j) => self.dup(*j),
            Expr::E(j) => self.letter(Letter::E(*j)),
            Expr::Named(n) => self.named(n),
            Expr::Lit(r) => self.scalar(Scalar::from_rational(r.clone())),
            Expr::I => self.scalar(Scalar::i()),
            Expr::Sqrt2 => self.scalar(Scalar::sqrt2()),
            Expr::M => NormalForm::word(Vec::new(), MPoly::symbol()),
            Expr::Sum(items) => {
                let mut out = NormalForm::zero();
                for it in items {
                    out.add(&self.expr(it)?);
                }
                out
            }
            Expr::Neg(a) => self.expr(a)?.scale(&MPoly::constant(-Scalar::one())),
            Expr::Product(items) => {
                let mut out = self.scalar(Scalar::one());
                for it in items {
                    let nf = self.expr(it)?;
                    out = self.product(&out, &nf);
                }
                out
            }
            Expr::Bracket(a, b) => {
                let (na, nb) = (self.expr(a)?, self.expr(b)?);
                let pa = na.parity(self.cfg).ok_or_else(|| Error::UndeclaredParity(a.to_string()))?;
                let pb = nb.parity(self.cfg).ok_or_else(|| Error::UndeclaredParity(b.to_string()))?;
                let mut out = self.product(&na, &nb);
                let ba = self.product(&nb, &na);
                out.add(&ba.scale(&MPoly::constant(-sgn(pa * pb == 1))));
                out
            }
        })
    }
}

/// Canonical form of `e`, with `M` symbolic.
pub fn normal_order(cfg: &SpaceConfig, e: &Expr) -> Result<NormalForm> {
    normal_order_with(cfg, e, &mut Leftmost)
}

pub fn normal_order_with(cfg: &SpaceConfig, e: &Expr, strategy: &mut dyn RewriteStrategy) -> Result<NormalForm> {
    let top = e.max_index();
    if top > cfg.dim() {
        return Err(Error::IndexOutOfRange {
            index: top,
            max: cfg.dim(),
        });
    }
    Orderer { cfg, strategy }.expr(e)
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn nf(cfg: &SpaceConfig, t: &str) -> NormalForm {
        normal_order(cfg, &parse(t).unwrap()).unwrap()
    }

    #[test]
    fn weyl_relation() {
        let c = SpaceConfig::new(3, 1).unwrap();
        assert!(nf(&c, "D(1)*X(1)").equals_at(&nf(&c, "X(1)*D(1) + 1"), &c));
        assert!(nf(&c, "D(4)*X(4)").equals_at(&nf(&c, "1 - X(4)*D(4)"), &c));
        assert!(nf(&c, "X(4)*X(4)").is_zero());
        assert!(nf(&c, "E(1)*E(1)").equals_at(&nf(&c, "-1"), &c));
    }

    #[test]
    fn anticommutator_of_dirac_and_vector() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let lhs = nf(&c, "dirac*vector + vector*dirac");
        let rhs = nf(&c, "-2*euler - M");
        assert_eq!(rhs.terms()[&Vec::new()], MPoly::symbol().scale(&Scalar::from(-1)));
        assert!(lhs.equals_at(&rhs, &c));
        assert!(nf(&c, "vector*vector").equals_at(&nf(&c, "-r2"), &c));
    }

    #[test]
    fn symbol_is_kept() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let e = nf(&c, "M*M + 2*M");
        assert_eq!(e.terms()[&Vec::new()].degree(), Some(2));
        assert_eq!(e.substitute(&c)[&Vec::new()], Scalar::from(3));
    }

    #[test]
    fn index_out_of_range() {
        let c = SpaceConfig::new(3, 1).unwrap();
        assert!(matches!(normal_order(&c, &parse("X(6)").unwrap()), Err(Error::IndexOutOfRange { .. })));
    }

    fn random_expr(rng: &mut impl rand::Rng, dim: usize, depth: u32) -> Expr {
        if depth == 0 || rng.gen_bool(0.3) {
            let j = rng.gen_range(1..=dim);
            return match rng.gen_range(0..6) {
                0 => Expr::X(j),
                1 => Expr::D(j),
                2 => Expr::E(j),
                3 => Expr::Dup(j),
                4 => Expr::M,
                _ => Expr::int(rng.gen_range(0..4)),
            };
        }
        let n = rng.gen_range(2..4);
        let items = (0..n).map(|_| random_expr(rng, dim, depth - 1)).collect();
        if rng.gen_bool(0.5) {
            Expr::Sum(items)
        } else {
            Expr::Product(items)
        }
    }

    #[test]
    fn confluent_under_random_strategies() {
        use rand::{Rng, SeedableRng};
        let c = SpaceConfig::new(3, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let e = random_expr(&mut rng, c.dim(), 3);
            let reference = normal_order(&c, &e).unwrap();
            for seed in 0..2u64 {
                let mut pick = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut strategy = |cand: &[usize]| cand[pick.gen_range(0..cand.len())];
                assert_eq!(normal_order_with(&c, &e, &mut strategy).unwrap(), reference, "{e}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn rightmost_matches_leftmost(seed in 0u64..1000, m in 1usize..5, n in 0usize..3) {
            use rand::SeedableRng;
            let c = SpaceConfig::new(m, n).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let e = random_expr(&mut rng, c.dim(), 2);
            let mut last = |cand: &[usize]| *cand.last().unwrap();
            proptest::prop_assert_eq!(normal_order_with(&c, &e, &mut last).unwrap(), normal_order(&c, &e).unwrap());
        }

        #[test]
        fn parsing_printed_form_is_stable(seed in 0u64..1000) {
            use rand::SeedableRng;
            let c = SpaceConfig::new(3, 1).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let e = random_expr(&mut rng, c.dim(), 2);
            let back = parse(&e.to_string()).unwrap();
            proptest::prop_assert!(normal_order(&c, &back).unwrap().equals_at(&normal_order(&c, &e).unwrap(), &c));
        }
    }
}
