//! Polynomials on the superspace `R^(m|2n)` with values in the spinor space
//! `Λ_{d|n}`.
//!
//! Variables are indexed `1..=m+2n` throughout the public API: `1..=m` are the
//! commuting coordinates `x_j`, and `m+1..=m+2n` are the Grassmann coordinates
//! `x`_1..x`_2n`.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceConfig {
    m: usize,
    n: usize,
}

impl SpaceConfig {
    pub const MAX_M: usize = 8;
    pub const MAX_N: usize = 8;

    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m > Self::MAX_M || n > Self::MAX_N {
            return Err(Error::UnsupportedConfig(format!(
                "(m, n) = ({m}, {n}) exceeds ({}, {})",
                Self::MAX_M,
                Self::MAX_N
            )));
        }
        Ok(SpaceConfig { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.m / 2
    }

    /// The superdimension `M = m − 2n`.
    pub fn big_m(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    /// Number of coordinates, `m + 2n`.
    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    pub fn m_is_odd(&self) -> bool {
        self.m % 2 == 1
    }

    pub fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.dim() {
            Err(Error::IndexOutOfRange {
                index: j,
                max: self.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// The grading `[j]`: 0 for commuting, 1 for anticommuting indices.
    pub fn grade(&self, j: usize) -> u8 {
        debug_assert!(j >= 1 && j <= self.dim());
        u8::from(j > self.m)
    }

    pub fn is_fermionic(&self, j: usize) -> bool {
        j > self.m
    }

    /// Entry `g_{ij}` of the orthosymplectic metric.
    pub fn metric(&self, i: usize, j: usize) -> i8 {
        let (m, n) = (self.m, self.n);
        if i <= m || j <= m {
            return i8::from(i == j && i <= m);
        }
        if j == i + n && i <= m + n {
            1
        } else if i == j + n && j <= m + n {
            -1
        } else {
            0
        }
    }

    pub fn metric_matrix(&self) -> Vec<Vec<i8>> {
        (1..=self.dim())
            .map(|i| (1..=self.dim()).map(|j| self.metric(i, j)).collect())
            .collect()
    }

    /// The unique row `j` with `g_{jk} ≠ 0`, together with that entry.
    pub fn metric_partner(&self, k: usize) -> (usize, i8) {
        let (m, n) = (self.m, self.n);
        if k <= m {
            (k, 1)
        } else if k <= m + n {
            (k + n, -1)
        } else {
            (k - n, 1)
        }
    }

    fn fer_bit(&self, j: usize) -> usize {
        j - self.m - 1
    }

    pub fn var_name(&self, j: usize) -> String {
        if j <= self.m {
            format!("x{j}")
        } else {
            format!("x`{}", j - self.m)
        }
    }
}

/// Exponent record `x^bos · x`^fer` of a monomial in `P`.
///
/// The fermionic factors are written in increasing index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyMonomial {
    bos: [u8; 8],
    fer: u16,
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

impl PolyMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_parts(bos: [u8; 8], fer: u16) -> Self {
        PolyMonomial { bos, fer }
    }

    pub fn var(cfg: &SpaceConfig, j: usize) -> Self {
        Self::one()
            .mul_var(cfg, j)
            .map(|(_, p)| p)
            .expect("a single variable is nonzero")
    }

    pub fn bos(&self) -> &[u8; 8] {
        &self.bos
    }

    pub fn fer(&self) -> u16 {
        self.fer
    }

    pub fn bos_degree(&self) -> usize {
        self.bos.iter().map(|&e| e as usize).sum()
    }

    pub fn degree(&self) -> usize {
        self.bos_degree() + self.fer.count_ones() as usize
    }

    pub fn parity(&self) -> u8 {
        (self.fer.count_ones() % 2) as u8
    }

    pub fn exponent(&self, cfg: &SpaceConfig, j: usize) -> u8 {
        if cfg.is_fermionic(j) {
            ((self.fer >> cfg.fer_bit(j)) & 1) as u8
        } else {
            self.bos[j - 1]
        }
    }

    /// `X_j · self`, returning the sign and the normal-ordered monomial.
    pub fn mul_var(&self, cfg: &SpaceConfig, j: usize) -> Option<(i64, PolyMonomial)> {
        let mut out = *self;
        if cfg.is_fermionic(j) {
            let b = cfg.fer_bit(j);
            if self.fer & (1 << b) != 0 {
                return None;
            }
            let before = (self.fer & ((1u16 << b) - 1)).count_ones();
            out.fer |= 1 << b;
            Some((sign(before % 2 == 1), out))
        } else {
            out.bos[j - 1] += 1;
            Some((1, out))
        }
    }

    /// `∂_{X_j} self`, returning the coefficient and the monomial.
    pub fn partial(&self, cfg: &SpaceConfig, j: usize) -> Option<(i64, PolyMonomial)> {
        let mut out = *self;
        if cfg.is_fermionic(j) {
            let b = cfg.fer_bit(j);
            if self.fer & (1 << b) == 0 {
                return None;
            }
            let before = (self.fer & ((1u16 << b) - 1)).count_ones();
            out.fer &= !(1 << b);
            Some((sign(before % 2 == 1), out))
        } else {
            let e = self.bos[j - 1];
            if e == 0 {
                return None;
            }
            out.bos[j - 1] = e - 1;
            Some((e as i64, out))
        }
    }

    /// `self · other` with the Koszul sign from reordering fermions.
    pub fn mul(&self, other: &PolyMonomial) -> Option<(i64, PolyMonomial)> {
        if self.fer & other.fer != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.fer;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (self.fer >> j >> 1).count_ones();
            rest &= rest - 1;
        }
        let mut bos = self.bos;
        for (a, b) in bos.iter_mut().zip(other.bos.iter()) {
            *a += b;
        }
        Some((
            sign(swaps % 2 == 1),
            PolyMonomial {
                bos,
                fer: self.fer | other.fer,
            },
        ))
    }

    pub fn display(&self, cfg: &SpaceConfig) -> String {
        let mut parts = Vec::new();
        for j in 1..=cfg.m() {
            match self.bos[j - 1] {
                0 => {}
                1 => parts.push(cfg.var_name(j)),
                e => parts.push(format!("{}^{e}", cfg.var_name(j))),
            }
        }
        for j in cfg.m() + 1..=cfg.dim() {
            if self.exponent(cfg, j) == 1 {
                parts.push(cfg.var_name(j));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn sort_key(&self) -> (usize, Reverse<usize>, Reverse<[u8; 8]>, u16) {
        (self.degree(), Reverse(self.bos_degree()), Reverse(self.bos), self.fer)
    }
}

impl Ord for PolyMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for PolyMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponent record `θ^theta · t^t` of a basis element of `Λ_{d|n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SpinorMonomial {
    theta: u8,
    t: [u8; 8],
}

impl SpinorMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_parts(theta: u8, t: [u8; 8]) -> Self {
        SpinorMonomial { theta, t }
    }

    pub fn theta(&self) -> u8 {
        self.theta
    }

    pub fn t(&self) -> &[u8; 8] {
        &self.t
    }

    pub fn t_degree(&self) -> usize {
        self.t.iter().map(|&e| e as usize).sum()
    }

    pub fn theta_degree(&self) -> usize {
        self.theta.count_ones() as usize
    }

    pub fn lambda_degree(&self) -> usize {
        self.theta_degree() + self.t_degree()
    }

    /// The Z₂ parity: `|θ_j| = 0` and `|t_i| = 1`.
    pub fn parity(&self) -> u8 {
        (self.t_degree() % 2) as u8
    }

    /// 0 for `S^+`, 1 for `S^−`.
    pub fn chirality(&self) -> u8 {
        (self.lambda_degree() % 2) as u8
    }

    pub(crate) fn with_theta(self, theta: u8) -> Self {
        SpinorMonomial { theta, ..self }
    }

    pub(crate) fn with_t(self, i: usize, e: u8) -> Self {
        let mut t = self.t;
        t[i] = e;
        SpinorMonomial { t, ..self }
    }

    pub fn display(&self, cfg: &SpaceConfig) -> String {
        let mut parts = Vec::new();
        for j in 0..cfg.d() {
            if self.theta & (1 << j) != 0 {
                parts.push(format!("θ{}", j + 1));
            }
        }
        for i in 0..cfg.n() {
            match self.t[i] {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                e => parts.push(format!("t{}^{e}", i + 1)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn sort_key(&self) -> (usize, u8, Reverse<[u8; 8]>) {
        (self.lambda_degree(), self.theta, Reverse(self.t))
    }
}

impl Ord for SpinorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for SpinorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A basis vector `h ⊗ v` of `P ⊗ S`.
pub type BasisKey = (PolyMonomial, SpinorMonomial);

/// A finitely supported vector in `P ⊗ S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        Self::term(key, Scalar::one())
    }

    pub fn term(key: BasisKey, coef: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(key, coef);
        e
    }

    /// The constant `1 ⊗ 1`.
    pub fn one() -> Self {
        Self::basis((PolyMonomial::one(), SpinorMonomial::one()))
    }

    pub fn poly(p: PolyMonomial) -> Self {
        Self::basis((p, SpinorMonomial::one()))
    }

    pub fn var(cfg: &SpaceConfig, j: usize) -> Self {
        Self::poly(PolyMonomial::var(cfg, j))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisKey, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn add_term(&mut self, key: BasisKey, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(*k, if c.is_one() { v.clone() } else { v * c });
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coef(&self, key: &BasisKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasisKey> {
        self.terms.keys()
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<BasisKey, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total parity `|h| + |v|` if every term agrees.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|(p, s)| (p.parity() + s.parity()) % 2);
        let first = it.next()?;
        it.all(|q| q == first).then_some(first)
    }

    /// Polynomial degree if the element is homogeneous.
    pub fn poly_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(p, _)| p.degree());
        let first = it.next()?;
        it.all(|q| q == first).then_some(first)
    }

    pub fn max_t_degree(&self) -> usize {
        self.terms.keys().map(|(_, s)| s.t_degree()).max().unwrap_or(0)
    }

    pub fn display(&self, cfg: &SpaceConfig) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((p, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "({c}) {} ⊗ {}", p.display(cfg), s.display(cfg));
        }
        out
    }
}

impl std::ops::AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl std::ops::SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v);
        }
    }
}

impl std::ops::Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from(-1))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((p, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})[{:?}|{:04x}]⊗[{:02x}|{:?}]", p.bos, p.fer, s.theta, s.t)?;
        }
        Ok(())
    }
}

/// Supercommutative product `f · g` for a pure polynomial `f`.
pub fn multiply(f: &Element, g: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for ((pf, sf), cf) in f.iter() {
        if *sf != SpinorMonomial::one() {
            return Err(Error::NotPolynomial(format!("{sf:?}")));
        }
        for ((pg, sg), cg) in g.iter() {
            if let Some((sgn, p)) = pf.mul(pg) {
                out.add_term((p, *sg), (cf * cg).scale_rational(&sgn.into()));
            }
        }
    }
    Ok(out)
}

/// `∂_{X_j} f`, acting on the polynomial factor.
pub fn partial(cfg: &SpaceConfig, j: usize, f: &Element) -> Element {
    let mut out = Element::zero();
    for ((p, s), c) in f.iter() {
        if let Some((k, q)) = p.partial(cfg, j) {
            out.add_term((q, *s), c.scale_rational(&k.into()));
        }
    }
    out
}

/// `∂_{X^j} = Σ_k g_{kj} ∂_{X_k}`.
pub fn partial_up(cfg: &SpaceConfig, j: usize, f: &Element) -> Element {
    let (k, g) = cfg.metric_partner(j);
    partial(cfg, k, f).scale(&Scalar::from(g as i64))
}

/// `X_j · f`.
pub fn mul_var(cfg: &SpaceConfig, j: usize, f: &Element) -> Element {
    let mut out = Element::zero();
    for ((p, s), c) in f.iter() {
        if let Some((k, q)) = p.mul_var(cfg, j) {
            out.add_term((q, *s), if k == 1 { c.clone() } else { -c });
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// `dim P_k = Σ_j C(2n, j) · C(k − j + m − 1, m − 1)`.
pub fn dim_poly(cfg: &SpaceConfig, k: usize) -> u128 {
    let (m, n) = (cfg.m() as u64, cfg.n() as u64);
    (0..=k.min(2 * cfg.n()) as u64)
        .map(|j| {
            let rest = k as u64 - j;
            let bos = if m == 0 {
                u128::from(rest == 0)
            } else {
                binomial(rest + m - 1, m - 1)
            };
            binomial(2 * n, j) * bos
        })
        .sum()
}

/// `dim S^{≤Q} = 2^d · C(Q + n, n)`.
pub fn dim_spinor(cfg: &SpaceConfig, q: usize) -> u128 {
    (1u128 << cfg.d()) * binomial((q + cfg.n()) as u64, cfg.n() as u64)
}

fn compositions(total: usize, parts: usize, acc: &mut Vec<u8>, out: &mut Vec<[u8; 8]>) {
    if acc.len() + 1 == parts {
        let mut e = [0u8; 8];
        e[..acc.len()].copy_from_slice(acc);
        e[acc.len()] = total as u8;
        out.push(e);
        return;
    }
    for first in (0..=total).rev() {
        acc.push(first as u8);
        compositions(total - first, parts, acc, out);
        acc.pop();
    }
}

fn exponent_vectors(total: usize, parts: usize) -> Vec<[u8; 8]> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push([0; 8]);
        }
    } else {
        compositions(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Basis of `P_k` in graded lexicographic order.
pub fn poly_basis(cfg: &SpaceConfig, k: usize) -> Vec<PolyMonomial> {
    let nf = 2 * cfg.n();
    let mut out = Vec::new();
    for fer in 0u32..(1u32 << nf) {
        let fdeg = fer.count_ones() as usize;
        if fdeg > k {
            continue;
        }
        for bos in exponent_vectors(k - fdeg, cfg.m()) {
            out.push(PolyMonomial::from_parts(bos, fer as u16));
        }
    }
    out.sort();
    out
}

pub fn poly_basis_upto(cfg: &SpaceConfig, k_max: usize) -> Vec<PolyMonomial> {
    (0..=k_max).flat_map(|k| poly_basis(cfg, k)).collect()
}

/// Basis of `S^{≤Q}`: every θ-monomial times every t-monomial of degree `≤ Q`.
pub fn spinor_basis(cfg: &SpaceConfig, q: usize) -> Vec<SpinorMonomial> {
    let mut out = Vec::new();
    for deg in 0..=q {
        for t in exponent_vectors(deg, cfg.n()) {
            for theta in 0u16..(1u16 << cfg.d()) {
                out.push(SpinorMonomial::from_parts(theta as u8, t));
            }
        }
    }
    out.sort();
    out
}

/// Basis of `P_k ⊗ S^{≤Q}`, polynomial factor outermost.
pub fn block_basis(cfg: &SpaceConfig, k: usize, q: usize) -> Vec<BasisKey> {
    let spin = spinor_basis(cfg, q);
    poly_basis(cfg, k)
        .into_iter()
        .flat_map(|p| spin.iter().map(move |s| (p, *s)))
        .collect()
}

/// Basis of `P_{≤k} ⊗ S^{≤Q}`.
pub fn block_basis_upto(cfg: &SpaceConfig, k_max: usize, q: usize) -> Vec<BasisKey> {
    (0..=k_max).flat_map(|k| block_basis(cfg, k, q)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    PolyDegree(usize),
    SpinorCut(usize),
    Block(usize, usize),
}

pub fn enumerate(cfg: &SpaceConfig, kind: BasisKind) -> Vec<BasisKey> {
    match kind {
        BasisKind::PolyDegree(k) => poly_basis(cfg, k)
            .into_iter()
            .map(|p| (p, SpinorMonomial::one()))
            .collect(),
        BasisKind::SpinorCut(q) => spinor_basis(cfg, q)
            .into_iter()
            .map(|s| (PolyMonomial::one(), s))
            .collect(),
        BasisKind::Block(k, q) => block_basis(cfg, k, q),
    }
}

/// One CSV row per monomial of `P_k`, one column per variable.
pub fn poly_basis_csv(cfg: &SpaceConfig, k: usize) -> String {
    let mut out = (1..=cfg.dim())
        .map(|j| cfg.var_name(j))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for p in poly_basis(cfg, k) {
        let row: Vec<String> = (1..=cfg.dim()).map(|j| p.exponent(cfg, j).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn spinor_basis_csv(cfg: &SpaceConfig, q: usize) -> String {
    let mut header: Vec<String> = (1..=cfg.d()).map(|j| format!("theta{j}")).collect();
    header.extend((1..=cfg.n()).map(|i| format!("t{i}")));
    let mut out = header.join(",");
    out.push('\n');
    for s in spinor_basis(cfg, q) {
        let mut row: Vec<String> = (0..cfg.d())
            .map(|j| ((s.theta() >> j) & 1).to_string())
            .collect();
        row.extend((0..cfg.n()).map(|i| s.t()[i].to_string()));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(m: usize, n: usize) -> SpaceConfig {
        SpaceConfig::new(m, n).unwrap()
    }

    #[test]
    fn metric_blocks() {
        let c = cfg(3, 1);
        assert_eq!(
            c.metric_matrix(),
            vec![
                vec![1, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1],
                vec![0, 0, 0, -1, 0],
            ]
        );
        for k in 1..=c.dim() {
            let (j, g) = c.metric_partner(k);
            assert_eq!(c.metric(j, k), g);
        }
        assert_eq!(c.grade(3), 0);
        assert_eq!(c.grade(4), 1);
    }

    #[test]
    fn fermion_products() {
        let c = cfg(3, 1);
        let a = Element::var(&c, 4);
        let b = Element::var(&c, 5);
        assert!(multiply(&a, &a).unwrap().is_zero());
        let ab = multiply(&a, &b).unwrap();
        let ba = multiply(&b, &a).unwrap();
        assert_eq!(ba, -&ab);
        let x1 = Element::var(&c, 1);
        assert_eq!(multiply(&x1, &a).unwrap(), multiply(&a, &x1).unwrap());
    }

    #[test]
    fn fermion_derivatives() {
        let c = cfg(3, 1);
        let ab = multiply(&Element::var(&c, 4), &Element::var(&c, 5)).unwrap();
        assert_eq!(partial(&c, 4, &ab), Element::var(&c, 5));
        assert_eq!(partial(&c, 5, &ab), -&Element::var(&c, 4));
        let x1sq = multiply(&Element::var(&c, 1), &Element::var(&c, 1)).unwrap();
        assert_eq!(partial(&c, 1, &x1sq), Element::var(&c, 1).scale(&Scalar::from(2)));
    }

    #[test]
    fn spinor_part_rejected_in_product() {
        let s = Element::basis((PolyMonomial::one(), SpinorMonomial::from_parts(1, [0; 8])));
        assert!(matches!(multiply(&s, &Element::one()), Err(Error::NotPolynomial(_))));
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(poly_basis(&cfg(3, 1), 1).len(), 5);
        let p2 = poly_basis(&cfg(2, 1), 2);
        assert_eq!(p2.len(), 8);
        let c = cfg(2, 1);
        let names: Vec<String> = p2.iter().map(|p| p.display(&c)).collect();
        assert_eq!(
            names,
            ["x1^2", "x1*x2", "x2^2", "x1*x`1", "x1*x`2", "x2*x`1", "x2*x`2", "x`1*x`2"]
        );
        let s = spinor_basis(&cfg(2, 1), 1);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn dimension_formula_matches_enumeration() {
        for (m, n) in [(3, 1), (4, 2), (5, 0)] {
            let c = cfg(m, n);
            for k in 0..=6 {
                assert_eq!(poly_basis(&c, k).len() as u128, dim_poly(&c, k), "({m},{n}) k={k}");
            }
            for q in 0..=4 {
                assert_eq!(spinor_basis(&c, q).len() as u128, dim_spinor(&c, q));
            }
        }
    }

    #[test]
    fn enumeration_is_stable() {
        let c = cfg(4, 2);
        assert_eq!(block_basis(&c, 3, 2), block_basis(&c, 3, 2));
        let b = block_basis(&c, 2, 2);
        let mut sorted = b.clone();
        sorted.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        assert_eq!(b, sorted);
    }

    #[test]
    fn fermionic_derivative_squares_to_zero() {
        for (m, n) in [(3, 1), (4, 2)] {
            let c = cfg(m, n);
            for p in poly_basis_upto(&c, 4) {
                let e = Element::poly(p);
                for j in c.m() + 1..=c.dim() {
                    assert!(partial(&c, j, &partial(&c, j, &e)).is_zero());
                }
            }
        }
    }

    #[test]
    fn csv_dump() {
        let csv = poly_basis_csv(&cfg(1, 1), 1);
        assert_eq!(csv, "x1,x`1,x`2\n1,0,0\n0,1,0\n0,0,1\n");
        let s = spinor_basis_csv(&cfg(2, 1), 0);
        assert_eq!(s, "theta1,t1\n0,0\n1,0\n");
    }

    fn arb_monomial() -> impl Strategy<Value = PolyMonomial> {
        (prop::array::uniform4(0u8..3), 0u16..16).prop_map(|(b, f)| {
            let mut bos = [0u8; 8];
            bos[..4].copy_from_slice(&b);
            PolyMonomial::from_parts(bos, f)
        })
    }

    proptest! {
        #[test]
        fn supercommutativity(a in arb_monomial(), b in arb_monomial()) {
            let ea = Element::poly(a);
            let eb = Element::poly(b);
            let ab = multiply(&ea, &eb).unwrap();
            let ba = multiply(&eb, &ea).unwrap();
            let s = if a.parity() * b.parity() == 1 { -1 } else { 1 };
            prop_assert_eq!(ab, ba.scale(&Scalar::from(s)));
        }

        #[test]
        fn leibniz_rule(a in arb_monomial(), b in arb_monomial(), j in 1usize..=8) {
            let c = SpaceConfig::new(4, 2).unwrap();
            let ea = Element::poly(a);
            let eb = Element::poly(b);
            let lhs = partial(&c, j, &multiply(&ea, &eb).unwrap());
            let s = if c.grade(j) * a.parity() == 1 { -1 } else { 1 };
            let mut rhs = multiply(&partial(&c, j, &ea), &eb).unwrap();
            rhs.add_scaled(&multiply(&ea, &partial(&c, j, &eb)).unwrap(), &Scalar::from(s));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
