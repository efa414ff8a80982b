//! Differential operators on `P ⊗ S` as composable exact linear maps.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{hat, kappa, kappa_element, SpinorOperator};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::superspace::{block_basis_upto, BasisKey, Element, SpaceConfig};

/// Which Z₂-grading to use when forming super commutators.
///
/// Under `Natural`, `|X_j| = |∂_j| = |E_j| = [j]`, so `x` and `∂x` are even.
/// Under `Howe`, the Clifford generators carry an extra unit, `|E_j| = 1 + [j]`,
/// which makes `x` and `∂x` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    Natural,
    Howe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub natural_parity: Option<u8>,
    pub howe_parity: Option<u8>,
    /// Inclusive range of polynomial degree change.
    pub poly_shift: Option<(i64, i64)>,
    /// Inclusive range of spinor t-degree change.
    pub t_shift: Option<(i64, i64)>,
}

impl Meta {
    fn leaf(natural: u8, howe: u8, poly: (i64, i64), t: (i64, i64)) -> Self {
        Meta {
            natural_parity: Some(natural % 2),
            howe_parity: Some(howe % 2),
            poly_shift: Some(poly),
            t_shift: Some(t),
        }
    }

    pub fn parity(&self, grading: Grading) -> Option<u8> {
        match grading {
            Grading::Natural => self.natural_parity,
            Grading::Howe => self.howe_parity,
        }
    }

    fn sum(metas: impl Iterator<Item = Meta>) -> Meta {
        let mut out: Option<Meta> = None;
        for m in metas {
            out = Some(match out {
                None => m,
                Some(acc) => Meta {
                    natural_parity: same(acc.natural_parity, m.natural_parity),
                    howe_parity: same(acc.howe_parity, m.howe_parity),
                    poly_shift: hull(acc.poly_shift, m.poly_shift),
                    t_shift: hull(acc.t_shift, m.t_shift),
                },
            });
        }
        out.unwrap_or(Meta::leaf(0, 0, (0, 0), (0, 0)))
    }

    fn compose(a: Meta, b: Meta) -> Meta {
        let add = |x: Option<(i64, i64)>, y: Option<(i64, i64)>| Some((x?.0 + y?.0, x?.1 + y?.1));
        let par = |x: Option<u8>, y: Option<u8>| Some((x? + y?) % 2);
        Meta {
            natural_parity: par(a.natural_parity, b.natural_parity),
            howe_parity: par(a.howe_parity, b.howe_parity),
            poly_shift: add(a.poly_shift, b.poly_shift),
            t_shift: add(a.t_shift, b.t_shift),
        }
    }
}

fn same(a: Option<u8>, b: Option<u8>) -> Option<u8> {
    match (a, b) {
        (Some(x), Some(y)) if x == y => Some(x),
        _ => None,
    }
}

fn hull(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    let (a, b) = (a?, b?);
    Some((a.0.min(b.0), a.1.max(b.1)))
}

enum Node {
    Identity,
    MulVar(usize),
    Partial(usize),
    /// `E_j · (h ⊗ v) = (−1)^{[j]|h|} h ⊗ κ(E_j) v`.
    Clifford(usize, SpinorOperator),
    /// A spinor operator acting on the spinor factor with no Koszul sign.
    SpinorOnly(SpinorOperator),
    /// Component `j` of the gradient: `(−1)^{[j](1+|h|)} ∂_{X_j} h ⊗ v`.
    Gradient(usize),
    Euler,
    /// `(−1)^E`.
    ParityInv,
    Sum(Vec<(Scalar, Operator)>),
    /// Applied right to left.
    Compose(Vec<Operator>),
}

/// An exact linear map on `P ⊗ S` with degree and parity metadata.
#[derive(Clone)]
pub struct Operator {
    node: Arc<Node>,
    label: String,
    meta: Meta,
    cfg: SpaceConfig,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator({})", self.label)
    }
}

fn sgn(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

impl Operator {
    fn new(cfg: &SpaceConfig, node: Node, label: impl Into<String>, meta: Meta) -> Self {
        Operator {
            node: Arc::new(node),
            label: label.into(),
            meta,
            cfg: *cfg,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn meta(&self) -> Meta {
        self.meta
    }

    pub fn config(&self) -> &SpaceConfig {
        &self.cfg
    }

    pub fn parity(&self, grading: Grading) -> Option<u8> {
        self.meta.parity(grading)
    }

    fn is_trivially_zero(&self) -> bool {
        matches!(&*self.node, Node::Sum(t) if t.is_empty())
    }

    pub fn identity(cfg: &SpaceConfig) -> Self {
        Self::new(cfg, Node::Identity, "1", Meta::leaf(0, 0, (0, 0), (0, 0)))
    }

    pub fn zero(cfg: &SpaceConfig) -> Self {
        Self::new(cfg, Node::Sum(Vec::new()), "0", Meta::leaf(0, 0, (0, 0), (0, 0)))
    }

    pub fn scalar(cfg: &SpaceConfig, c: Scalar) -> Self {
        let label = format!("({c})");
        Self::identity(cfg).scale(&c).with_label(label)
    }

    pub fn mul_var(cfg: &SpaceConfig, j: usize) -> Self {
        let g = cfg.grade(j);
        Self::new(cfg, Node::MulVar(j), format!("X{j}"), Meta::leaf(g, g, (1, 1), (0, 0)))
    }

    pub fn partial(cfg: &SpaceConfig, j: usize) -> Self {
        let g = cfg.grade(j);
        Self::new(cfg, Node::Partial(j), format!("D{j}"), Meta::leaf(g, g, (-1, -1), (0, 0)))
    }

    /// `∂_{X^j} = Σ_k g_{kj} ∂_{X_k}`.
    pub fn partial_up(cfg: &SpaceConfig, j: usize) -> Self {
        let (k, g) = cfg.metric_partner(j);
        Self::partial(cfg, k)
            .scale(&Scalar::from(g as i64))
            .with_label(format!("Dup{j}"))
    }

    pub fn clifford(cfg: &SpaceConfig, j: usize) -> Self {
        let g = cfg.grade(j);
        let k = kappa(cfg, j);
        let t = k.t_shift();
        Self::new(cfg, Node::Clifford(j, k), format!("E{j}"), Meta::leaf(g, g + 1, (0, 0), t))
    }

    /// Action of `Ê_k = Σ_j E_j g_{jk}`.
    pub fn clifford_hat(cfg: &SpaceConfig, k: usize) -> Self {
        let (j, g) = cfg.metric_partner(k);
        Self::clifford(cfg, j)
            .scale(&Scalar::from(g as i64))
            .with_label(format!("Ehat{k}"))
    }

    fn spinor_only(cfg: &SpaceConfig, op: SpinorOperator, natural: u8, howe: u8, label: String) -> Self {
        let t = op.t_shift();
        Self::new(cfg, Node::SpinorOnly(op), label, Meta::leaf(natural, howe, (0, 0), t))
    }

    pub fn gradient_component(cfg: &SpaceConfig, j: usize) -> Self {
        let g = cfg.grade(j);
        Self::new(cfg, Node::Gradient(j), format!("grad{j}"), Meta::leaf(g, g, (-1, -1), (0, 0)))
    }

    pub fn euler(cfg: &SpaceConfig) -> Self {
        Self::new(cfg, Node::Euler, "euler", Meta::leaf(0, 0, (0, 0), (0, 0)))
    }

    pub fn parity_inv(cfg: &SpaceConfig) -> Self {
        Self::new(cfg, Node::ParityInv, "(-1)^E", Meta::leaf(0, 0, (0, 0), (0, 0)))
    }

    /// Linear combination `Σ c_i A_i`.
    pub fn combination(cfg: &SpaceConfig, terms: Vec<(Scalar, Operator)>) -> Self {
        let terms: Vec<_> = terms
            .into_iter()
            .filter(|(c, o)| !c.is_zero() && !o.is_trivially_zero())
            .collect();
        let meta = Meta::sum(terms.iter().map(|(_, o)| o.meta));
        let label = if terms.is_empty() {
            "0".to_string()
        } else {
            terms
                .iter()
                .map(|(c, o)| {
                    if c.is_one() {
                        o.label.clone()
                    } else {
                        format!("({c})*{}", o.label)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        Self::new(cfg, Node::Sum(terms), label, meta)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::combination(&self.cfg, vec![(c.clone(), self.clone())])
    }

    pub fn add(&self, other: &Operator) -> Self {
        Self::combination(
            &self.cfg,
            vec![(Scalar::one(), self.clone()), (Scalar::one(), other.clone())],
        )
    }

    pub fn sub(&self, other: &Operator) -> Self {
        Self::combination(
            &self.cfg,
            vec![(Scalar::one(), self.clone()), (Scalar::from(-1), other.clone())],
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from(-1))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Self {
        Self::compose_all(&self.cfg, vec![self.clone(), other.clone()])
    }

    pub fn compose_all(cfg: &SpaceConfig, ops: Vec<Operator>) -> Self {
        let meta = ops
            .iter()
            .map(|o| o.meta)
            .reduce(Meta::compose)
            .unwrap_or(Meta::leaf(0, 0, (0, 0), (0, 0)));
        let label = ops
            .iter()
            .map(|o| {
                if matches!(*o.node, Node::Sum(ref t) if t.len() > 1) {
                    format!("({})", o.label)
                } else {
                    o.label.clone()
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        Self::new(cfg, Node::Compose(ops), label, meta)
    }

    pub fn apply(&self, f: &Element) -> Element {
        let cfg = &self.cfg;
        match &*self.node {
            Node::Identity => f.clone(),
            Node::MulVar(j) => crate::superspace::mul_var(cfg, *j, f),
            Node::Partial(j) => crate::superspace::partial(cfg, *j, f),
            Node::Clifford(j, k) => {
                let odd = cfg.grade(*j) == 1;
                let mut out = Element::zero();
                for ((p, s), c) in f.iter() {
                    let flip = odd && p.parity() == 1;
                    for (s2, a) in k.apply_monomial(s) {
                        let v = c * &a;
                        out.add_term((*p, s2), if flip { -v } else { v });
                    }
                }
                out
            }
            Node::SpinorOnly(k) => k.apply(f),
            Node::Gradient(j) => {
                let mut out = Element::zero();
                let odd = cfg.grade(*j) == 1;
                for ((p, s), c) in f.iter() {
                    if let Some((k, q)) = p.partial(cfg, *j) {
                        let s_odd = odd && p.parity() == 0;
                        out.add_term((q, *s), c.scale_rational(&(k * sgn(s_odd)).into()));
                    }
                }
                out
            }
            Node::Euler => {
                let mut out = Element::zero();
                for ((p, s), c) in f.iter() {
                    out.add_term((*p, *s), c.scale_rational(&(p.degree() as i64).into()));
                }
                out
            }
            Node::ParityInv => {
                let mut out = Element::zero();
                for ((p, s), c) in f.iter() {
                    out.add_term((*p, *s), if p.degree() % 2 == 1 { -c } else { c.clone() });
                }
                out
            }
            Node::Sum(terms) => {
                let mut out = Element::zero();
                for (c, op) in terms {
                    out.add_scaled(&op.apply(f), c);
                }
                out
            }
            Node::Compose(ops) => {
                let mut cur = f.clone();
                for op in ops.iter().rev() {
                    if cur.is_zero() {
                        break;
                    }
                    cur = op.apply(&cur);
                }
                cur
            }
        }
    }

    pub fn apply_basis(&self, key: BasisKey) -> Element {
        self.apply(&Element::basis(key))
    }
}

/// Graded commutator `[A, B] = A∘B − (−1)^{|A||B|} B∘A`.
pub fn bracket(a: &Operator, b: &Operator, grading: Grading) -> Result<Operator> {
    let pa = a
        .parity(grading)
        .ok_or_else(|| Error::UndeclaredParity(a.label.clone()))?;
    let pb = b
        .parity(grading)
        .ok_or_else(|| Error::UndeclaredParity(b.label.clone()))?;
    let s = Scalar::from(-sgn(pa * pb == 1));
    Ok(Operator::combination(
        &a.cfg,
        vec![(Scalar::one(), a.compose(b)), (s, b.compose(a))],
    )
    .with_label(format!("[{}, {}]", a.label, b.label)))
}

/// Outcome of comparing two operators on a block.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub input: BasisKey,
    pub left: Element,
    pub right: Element,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Applies both operators to every basis vector of `P_{≤k_max} ⊗ S^{≤q_max}`.
pub fn equal_on(a: &Operator, b: &Operator, k_max: usize, q_max: usize) -> Comparison {
    let basis = block_basis_upto(&a.cfg, k_max, q_max);
    equal_on_basis(a, b, &basis)
}

pub fn equal_on_basis(a: &Operator, b: &Operator, basis: &[BasisKey]) -> Comparison {
    let counterexample = basis.par_iter().find_map_first(|key| {
        let e = Element::basis(*key);
        let (l, r) = (a.apply(&e), b.apply(&e));
        (l != r).then(|| Counterexample {
            input: *key,
            left: l,
            right: r,
        })
    });
    Comparison {
        checked: basis.len(),
        counterexample,
    }
}

/// Checks that `a` annihilates every basis vector of the block.
pub fn vanishes_on(a: &Operator, k_max: usize, q_max: usize) -> Comparison {
    equal_on(a, &Operator::zero(&a.cfg), k_max, q_max)
}

/// `E_k · f`.
pub fn clifford_act(cfg: &SpaceConfig, k: usize, f: &Element) -> Element {
    Operator::clifford(cfg, k).apply(f)
}

fn m_scalar(cfg: &SpaceConfig) -> Scalar {
    Scalar::from(cfg.big_m())
}

fn one() -> Scalar {
    Scalar::one()
}

/// Indices of the conformal algebra: `−1`, `0`, or `1..=m+2n`.
pub type ConfIndex = i64;

/// Generators of the Howe algebra, before the `(−1)^{([i]+[j])E}` twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HoweTag {
    /// `X_i X_j`
    XX(usize, usize),
    /// `2 X_i ∂_{X^j} + g_{ji}`
    XD(usize, usize),
    /// `∂_{X^i} ∂_{X^j}`
    DD(usize, usize),
    /// `B_ij`
    B(usize, usize),
    /// `X_i E_j`
    XE(usize, usize),
    /// `E_j ∂_{X^i}`
    ED(usize, usize),
}

impl HoweTag {
    pub fn indices(&self) -> (usize, usize) {
        match *self {
            HoweTag::XX(i, j)
            | HoweTag::XD(i, j)
            | HoweTag::DD(i, j)
            | HoweTag::B(i, j)
            | HoweTag::XE(i, j)
            | HoweTag::ED(i, j) => (i, j),
        }
    }

    /// Every generator for the given configuration.
    pub fn all(cfg: &SpaceConfig) -> Vec<HoweTag> {
        let dim = cfg.dim();
        let mut out = Vec::new();
        let ctors: [fn(usize, usize) -> HoweTag; 6] = [
            HoweTag::XX,
            HoweTag::XD,
            HoweTag::DD,
            HoweTag::B,
            HoweTag::XE,
            HoweTag::ED,
        ];
        for ctor in ctors {
            for i in 1..=dim {
                for j in 1..=dim {
                    out.push(ctor(i, j));
                }
            }
        }
        out
    }
}

/// Request for a catalog operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpSpec {
    MulX(usize),
    Partial(usize),
    PartialUp(usize),
    Clifford(usize),
    CliffordHat(usize),
    Gradient(usize),
    Euler,
    R2,
    Laplace,
    Dirac,
    DiracSteinWeiss,
    Vector,
    L(usize, usize),
    B(usize, usize),
    K(usize, usize),
    Pi(usize),
    Kconf(ConfIndex, ConfIndex),
    Casimir,
    ParityInv,
    Howe(HoweTag),
}

fn check(cfg: &SpaceConfig, idx: &[usize]) -> Result<()> {
    idx.iter().try_for_each(|&j| cfg.check_index(j))
}

fn check_conf(cfg: &SpaceConfig, a: ConfIndex) -> Result<()> {
    if a < -1 || a > cfg.dim() as i64 {
        Err(Error::IndexOutOfRange {
            index: a.max(0) as usize,
            max: cfg.dim(),
        })
    } else {
        Ok(())
    }
}

/// Builds the operator described by `spec`.
pub fn make_operator(cfg: &SpaceConfig, spec: OpSpec) -> Result<Operator> {
    let c = cfg;
    Ok(match spec {
        OpSpec::MulX(j) => {
            check(c, &[j])?;
            Operator::mul_var(c, j)
        }
        OpSpec::Partial(j) => {
            check(c, &[j])?;
            Operator::partial(c, j)
        }
        OpSpec::PartialUp(j) => {
            check(c, &[j])?;
            Operator::partial_up(c, j)
        }
        OpSpec::Clifford(j) => {
            check(c, &[j])?;
            Operator::clifford(c, j)
        }
        OpSpec::CliffordHat(j) => {
            check(c, &[j])?;
            Operator::clifford_hat(c, j)
        }
        OpSpec::Gradient(j) => {
            check(c, &[j])?;
            Operator::gradient_component(c, j)
        }
        OpSpec::Euler => Operator::euler(c),
        OpSpec::R2 => r2(c),
        OpSpec::Laplace => laplace(c),
        OpSpec::Dirac => dirac(c),
        OpSpec::DiracSteinWeiss => dirac_stein_weiss(c),
        OpSpec::Vector => vector(c),
        OpSpec::L(i, j) => {
            check(c, &[i, j])?;
            l_op(c, i, j)
        }
        OpSpec::B(i, j) => {
            check(c, &[i, j])?;
            b_op(c, i, j)
        }
        OpSpec::K(i, j) => {
            check(c, &[i, j])?;
            k_op(c, i, j)
        }
        OpSpec::Pi(j) => {
            check(c, &[j])?;
            pi_op(c, j)
        }
        OpSpec::Kconf(a, b) => {
            check_conf(c, a)?;
            check_conf(c, b)?;
            k_conf(c, a, b)
        }
        OpSpec::Casimir => casimir(c),
        OpSpec::ParityInv => Operator::parity_inv(c),
        OpSpec::Howe(tag) => {
            let (i, j) = tag.indices();
            check(c, &[i, j])?;
            howe_generator(c, tag)
        }
    })
}

/// `R² = Σ_{jk} X_j g_{jk} X_k`.
pub fn r2(cfg: &SpaceConfig) -> Operator {
    let terms = (1..=cfg.dim())
        .map(|k| {
            let (j, g) = cfg.metric_partner(k);
            (
                Scalar::from(g as i64),
                Operator::mul_var(cfg, j).compose(&Operator::mul_var(cfg, k)),
            )
        })
        .collect();
    Operator::combination(cfg, terms).with_label("r2")
}

/// `Δ = Σ_{jk} ∂_{X_j} g_{jk} ∂_{X_k}`.
pub fn laplace(cfg: &SpaceConfig) -> Operator {
    let terms = (1..=cfg.dim())
        .map(|k| {
            let (j, g) = cfg.metric_partner(k);
            (
                Scalar::from(g as i64),
                Operator::partial(cfg, j).compose(&Operator::partial(cfg, k)),
            )
        })
        .collect();
    Operator::combination(cfg, terms).with_label("laplace")
}

/// `∂x = Σ_k κ(Ê_k) ∂_{X_k}`.
pub fn dirac(cfg: &SpaceConfig) -> Operator {
    let terms = (1..=cfg.dim())
        .map(|k| {
            (
                one(),
                Operator::clifford_hat(cfg, k).compose(&Operator::partial(cfg, k)),
            )
        })
        .collect();
    Operator::combination(cfg, terms).with_label("dirac")
}

/// `∂x = E⊥ ∘ ∇`, with `E⊥(E_j ⊗ v) = κ(Ê_j) v`.
pub fn dirac_stein_weiss(cfg: &SpaceConfig) -> Operator {
    let terms = (1..=cfg.dim())
        .map(|j| {
            let g = cfg.grade(j);
            let e_perp = Operator::spinor_only(
                cfg,
                kappa_element(cfg, &hat(cfg, j)),
                g,
                g + 1,
                format!("Eperp{j}"),
            );
            (one(), e_perp.compose(&Operator::gradient_component(cfg, j)))
        })
        .collect();
    Operator::combination(cfg, terms).with_label("dirac_sw")
}

/// `x = Σ_j X_j E_j`.
pub fn vector(cfg: &SpaceConfig) -> Operator {
    let terms = (1..=cfg.dim())
        .map(|j| (one(), Operator::mul_var(cfg, j).compose(&Operator::clifford(cfg, j))))
        .collect();
    Operator::combination(cfg, terms).with_label("vector")
}

/// `L_ij = X_i ∂_{X^j} − (−1)^{[i][j]} X_j ∂_{X^i}`.
pub fn l_op(cfg: &SpaceConfig, i: usize, j: usize) -> Operator {
    let s = Scalar::from(-sgn(cfg.grade(i) * cfg.grade(j) == 1));
    Operator::combination(
        cfg,
        vec![
            (one(), Operator::mul_var(cfg, i).compose(&Operator::partial_up(cfg, j))),
            (s, Operator::mul_var(cfg, j).compose(&Operator::partial_up(cfg, i))),
        ],
    )
    .with_label(format!("L({i},{j})"))
}

/// `B_ij = −½(g_{ji} + Ê_i Ê_j)` acting through κ.
pub fn b_op(cfg: &SpaceConfig, i: usize, j: usize) -> Operator {
    let half = Scalar::frac(-1, 2);
    Operator::combination(
        cfg,
        vec![
            (
                &half * &Scalar::from(cfg.metric(j, i) as i64),
                Operator::identity(cfg),
            ),
            (
                half.clone(),
                Operator::clifford_hat(cfg, i).compose(&Operator::clifford_hat(cfg, j)),
            ),
        ],
    )
    .with_label(format!("B({i},{j})"))
}

/// `K_ij = L_ij + B_ij`.
pub fn k_op(cfg: &SpaceConfig, i: usize, j: usize) -> Operator {
    l_op(cfg, i, j)
        .add(&b_op(cfg, i, j))
        .with_label(format!("K({i},{j})"))
}

/// `Π_j = x Ê_j + X_j (M + 2E) − R² ∂_{X^j}`.
pub fn pi_op(cfg: &SpaceConfig, j: usize) -> Operator {
    let m_plus_2e = Operator::combination(
        cfg,
        vec![
            (m_scalar(cfg), Operator::identity(cfg)),
            (Scalar::from(2), Operator::euler(cfg)),
        ],
    );
    Operator::combination(
        cfg,
        vec![
            (one(), vector(cfg).compose(&Operator::clifford_hat(cfg, j))),
            (one(), Operator::mul_var(cfg, j).compose(&m_plus_2e)),
            (Scalar::from(-1), r2(cfg).compose(&Operator::partial_up(cfg, j))),
        ],
    )
    .with_label(format!("Pi({j})"))
}

/// The conformal grading: `[−1] = [0] = 0`.
pub fn conf_grade(cfg: &SpaceConfig, a: ConfIndex) -> u8 {
    if a <= 0 {
        0
    } else {
        cfg.grade(a as usize)
    }
}

/// The metric `h = diag(−1, 1, g)` on conformal indices.
pub fn conf_metric(cfg: &SpaceConfig, a: ConfIndex, b: ConfIndex) -> i64 {
    match (a, b) {
        (-1, -1) => -1,
        (0, 0) => 1,
        (x, y) if x > 0 && y > 0 => cfg.metric(x as usize, y as usize) as i64,
        _ => 0,
    }
}

/// The conformal generators `K_{αβ}`.
pub fn k_conf(cfg: &SpaceConfig, a: ConfIndex, b: ConfIndex) -> Operator {
    let label = format!("Kconf({a},{b})");
    if a > b {
        let s = -sgn(conf_grade(cfg, a) * conf_grade(cfg, b) == 1);
        return k_conf(cfg, b, a).scale(&Scalar::from(s)).with_label(label);
    }
    let half = Scalar::frac(1, 2);
    let op = match (a, b) {
        (-1, -1) | (0, 0) => Operator::zero(cfg),
        (-1, 0) => Operator::euler(cfg).add(&Operator::scalar(
            cfg,
            Scalar::frac(cfg.big_m() - 1, 2),
        )),
        (-1, j) => Operator::combination(
            cfg,
            vec![
                (half.clone(), pi_op(cfg, j as usize)),
                (-half, Operator::partial_up(cfg, j as usize)),
            ],
        ),
        (0, j) => Operator::combination(
            cfg,
            vec![
                (half.clone(), pi_op(cfg, j as usize)),
                (half, Operator::partial_up(cfg, j as usize)),
            ],
        ),
        (i, j) => k_op(cfg, i as usize, j as usize),
    };
    op.with_label(label)
}

/// `C = x ∂x`.
pub fn casimir(cfg: &SpaceConfig) -> Operator {
    vector(cfg).compose(&dirac(cfg)).with_label("casimir")
}

/// Generator of the Howe algebra, including the `(−1)^{([i]+[j])E}` twist.
pub fn howe_generator(cfg: &SpaceConfig, tag: HoweTag) -> Operator {
    let (i, j) = tag.indices();
    let base = match tag {
        HoweTag::XX(..) => Operator::mul_var(cfg, i).compose(&Operator::mul_var(cfg, j)),
        HoweTag::XD(..) => Operator::mul_var(cfg, i)
            .compose(&Operator::partial_up(cfg, j))
            .scale(&Scalar::from(2)),
        HoweTag::DD(..) => Operator::partial_up(cfg, i).compose(&Operator::partial_up(cfg, j)),
        HoweTag::B(..) => b_op(cfg, i, j),
        HoweTag::XE(..) => Operator::mul_var(cfg, i).compose(&Operator::clifford(cfg, j)),
        HoweTag::ED(..) => Operator::clifford(cfg, j).compose(&Operator::partial_up(cfg, i)),
    };
    let twisted = if (cfg.grade(i) + cfg.grade(j)) % 2 == 1 {
        base.compose(&Operator::parity_inv(cfg))
    } else {
        base
    };
    let op = match tag {
        HoweTag::XD(..) => twisted.add(&Operator::scalar(cfg, Scalar::from(cfg.metric(j, i) as i64))),
        _ => twisted,
    };
    op.with_label(format!("{tag:?}"))
}

/// One line of the operator catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub spec: OpSpec,
    pub label: String,
    pub natural_parity: Option<u8>,
    pub howe_parity: Option<u8>,
    pub poly_shift: Option<(i64, i64)>,
    pub t_shift: Option<(i64, i64)>,
}

/// Representative catalog of named operators for a configuration.
pub fn catalog(cfg: &SpaceConfig) -> Vec<CatalogEntry> {
    let mut specs = vec![
        OpSpec::MulX(1),
        OpSpec::Partial(1),
        OpSpec::PartialUp(1),
        OpSpec::Clifford(1),
        OpSpec::CliffordHat(1),
        OpSpec::Gradient(1),
        OpSpec::Euler,
        OpSpec::R2,
        OpSpec::Laplace,
        OpSpec::Dirac,
        OpSpec::DiracSteinWeiss,
        OpSpec::Vector,
        OpSpec::L(1, 2.min(cfg.dim())),
        OpSpec::B(1, 2.min(cfg.dim())),
        OpSpec::K(1, 2.min(cfg.dim())),
        OpSpec::Pi(1),
        OpSpec::Kconf(-1, 0),
        OpSpec::Kconf(-1, 1),
        OpSpec::Kconf(0, 1),
        OpSpec::Casimir,
        OpSpec::ParityInv,
    ];
    if cfg.n() > 0 {
        let f = cfg.m() + 1;
        specs.extend([
            OpSpec::MulX(f),
            OpSpec::Clifford(f),
            OpSpec::Clifford(f + cfg.n()),
            OpSpec::Pi(f),
            OpSpec::K(1, f),
        ]);
    }
    specs.extend([
        OpSpec::Howe(HoweTag::XX(1, 1)),
        OpSpec::Howe(HoweTag::XD(1, 1)),
        OpSpec::Howe(HoweTag::DD(1, 1)),
        OpSpec::Howe(HoweTag::B(1, 1)),
        OpSpec::Howe(HoweTag::XE(1, 1)),
        OpSpec::Howe(HoweTag::ED(1, 1)),
    ]);
    specs
        .into_iter()
        .filter_map(|spec| {
            let op = make_operator(cfg, spec).ok()?;
            let meta = op.meta();
            Some(CatalogEntry {
                spec,
                label: op.label().to_string(),
                natural_parity: meta.natural_parity,
                howe_parity: meta.howe_parity,
                poly_shift: meta.poly_shift,
                t_shift: meta.t_shift,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::{block_basis, SpinorMonomial};

    fn cfg(m: usize, n: usize) -> SpaceConfig {
        SpaceConfig::new(m, n).unwrap()
    }

    fn th1() -> SpinorMonomial {
        SpinorMonomial::from_parts(1, [0; 8])
    }

    fn t1() -> SpinorMonomial {
        SpinorMonomial::from_parts(0, [1, 0, 0, 0, 0, 0, 0, 0])
    }

    #[test]
    fn clifford_action_signs() {
        let c = cfg(3, 1);
        let one = Element::one();
        let xf = Element::var(&c, 4);
        let (pf, _) = *xf.keys().next().unwrap();
        assert_eq!(
            clifford_act(&c, 4, &one),
            Element::term((Default::default(), t1()), Scalar::sqrt2())
        );
        assert_eq!(
            clifford_act(&c, 4, &xf),
            Element::term((pf, t1()), -Scalar::sqrt2())
        );
        assert_eq!(clifford_act(&c, 1, &xf), Element::basis((pf, th1())));
    }

    #[test]
    fn dirac_examples() {
        let c = cfg(3, 1);
        let d = dirac(&c);
        assert_eq!(d.apply(&Element::var(&c, 1)), Element::basis((Default::default(), th1())));
        let dx = d.compose(&vector(&c));
        assert_eq!(dx.apply(&Element::one()), Element::one().scale(&Scalar::from(-1)));
        assert_eq!(
            laplace(&c).apply(&r2(&c).apply(&Element::one())),
            Element::one().scale(&Scalar::from(2))
        );
    }

    #[test]
    fn vector_squares_to_minus_r2() {
        for (m, n) in [(3, 1), (4, 1)] {
            let c = cfg(m, n);
            let x = vector(&c);
            assert!(equal_on(&x.compose(&x), &r2(&c).neg(), 3, 3).equal());
        }
    }

    #[test]
    fn stein_weiss_matches_clifford_form() {
        for (m, n) in [(3, 1), (2, 1), (4, 2), (5, 0)] {
            let c = cfg(m, n);
            let cmp = equal_on(&dirac(&c), &dirac_stein_weiss(&c), 3, 2);
            assert!(cmp.equal(), "({m},{n}): {:?}", cmp.counterexample);
        }
    }

    #[test]
    fn dirac_commutes_with_symmetries() {
        let c = cfg(3, 1);
        let d = dirac(&c);
        for i in 1..=c.dim() {
            for j in 1..=c.dim() {
                let br = bracket(&d, &k_op(&c, i, j), Grading::Natural).unwrap();
                let cmp = vanishes_on(&br, 2, 2);
                assert!(cmp.equal(), "K({i},{j}): {:?}", cmp.counterexample);
            }
        }
    }

    #[test]
    fn pi_symmetry() {
        let c = cfg(3, 1);
        let d = dirac(&c);
        for j in 1..=c.dim() {
            let p = pi_op(&c, j);
            let lhs = d.compose(&p);
            let rhs = p
                .add(&Operator::mul_var(&c, j).scale(&Scalar::from(2)))
                .compose(&d);
            let cmp = equal_on(&lhs, &rhs, 2, 2);
            assert!(cmp.equal(), "j={j}: {:?}", cmp.counterexample);
        }
    }

    #[test]
    fn index_errors() {
        let c = cfg(3, 1);
        assert!(matches!(
            make_operator(&c, OpSpec::MulX(6)),
            Err(Error::IndexOutOfRange { index: 6, max: 5 })
        ));
        assert!(make_operator(&c, OpSpec::Kconf(-2, 0)).is_err());
    }

    #[test]
    fn undeclared_parity() {
        let c = cfg(3, 1);
        let mixed = Operator::mul_var(&c, 1).add(&Operator::mul_var(&c, 4));
        assert!(matches!(
            bracket(&mixed, &dirac(&c), Grading::Howe),
            Err(Error::UndeclaredParity(_))
        ));
    }

    #[test]
    fn declared_shifts_hold() {
        let c = cfg(3, 1);
        for entry in catalog(&c) {
            let op = make_operator(&c, entry.spec).unwrap();
            let (plo, phi) = entry.poly_shift.unwrap();
            let (tlo, thi) = entry.t_shift.unwrap();
            for k in 0..=2 {
                for key in block_basis(&c, k, 2) {
                    for (p, s) in op.apply_basis(key).keys() {
                        let dp = p.degree() as i64 - k as i64;
                        let dt = s.t_degree() as i64 - key.1.t_degree() as i64;
                        assert!(plo <= dp && dp <= phi, "{} poly {dp}", entry.label);
                        assert!(tlo <= dt && dt <= thi, "{} t {dt}", entry.label);
                    }
                }
            }
        }
    }

    #[test]
    fn howe_generators_have_consistent_parity() {
        let c = cfg(3, 1);
        for tag in HoweTag::all(&c) {
            let op = howe_generator(&c, tag);
            assert!(op.parity(Grading::Howe).is_some(), "{tag:?}");
        }
    }
}
