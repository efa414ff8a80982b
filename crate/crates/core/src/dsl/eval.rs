use serde::Serialize;
use serde_json::Value;

use super::ast::{Expr, Named};
use super::normal::normal_order;
use crate::analysis::counterexample_json;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::operators::{self as ops, bracket, equal_on, Grading, Operator};
use crate::superspace::SpaceConfig;

/// Builds the operator denoted by `e`, with `M` set to `m − 2n`.
pub fn evaluate(cfg: &SpaceConfig, e: &Expr) -> Result<Operator> {
    let top = e.max_index();
    if top > cfg.dim() {
        return Err(Error::IndexOutOfRange {
            index: top,
            max: cfg.dim(),
        });
    }
    Ok(match e {
        Expr::X(j) => Operator::mul_var(cfg, *j),
        Expr::D(j) => Operator::partial(cfg, *j),
        Expr::Dup(j) => Operator::partial_up(cfg, *j),
        Expr::E(j) => Operator::clifford(cfg, *j),
        Expr::Named(n) => match *n {
            Named::Dirac => ops::dirac(cfg),
            Named::Vector => ops::vector(cfg),
            Named::Laplace => ops::laplace(cfg),
            Named::R2 => ops::r2(cfg),
            Named::Euler => Operator::euler(cfg),
            Named::L(i, j) => ops::l_op(cfg, i, j),
            Named::B(i, j) => ops::b_op(cfg, i, j),
            Named::K(i, j) => ops::k_op(cfg, i, j),
            Named::Pi(j) => ops::pi_op(cfg, j),
        },
        Expr::Lit(r) => Operator::scalar(cfg, Scalar::from_rational(r.clone())),
        Expr::I => Operator::scalar(cfg, Scalar::i()),
        Expr::Sqrt2 => Operator::scalar(cfg, Scalar::sqrt2()),
        Expr::M => Operator::scalar(cfg, Scalar::from(cfg.big_m())),
        Expr::Sum(items) => {
            let parts = items
                .iter()
                .map(|it| Ok((Scalar::one(), evaluate(cfg, it)?)))
                .collect::<Result<Vec<_>>>()?;
            Operator::combination(cfg, parts)
        }
        Expr::Neg(a) => evaluate(cfg, a)?.neg(),
        Expr::Product(items) => {
            let parts = items.iter().map(|it| evaluate(cfg, it)).collect::<Result<Vec<_>>>()?;
            Operator::compose_all(cfg, parts)
        }
        Expr::Bracket(a, b) => bracket(&evaluate(cfg, a)?, &evaluate(cfg, b)?, Grading::Howe)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub lhs: String,
    pub rhs: String,
    /// Normal forms agree after substituting `M`.
    pub symbolic: bool,
    /// Both sides act identically on `P_{≤k} ⊗ S^{≤q}`.
    pub evaluated: bool,
    pub checked: usize,
    pub witness: Option<Value>,
    pub engine_disagreement: bool,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.symbolic && self.evaluated
    }
}

/// Verifies `lhs == rhs` by normal ordering and by evaluation on a block.
pub fn verify_identity(cfg: &SpaceConfig, lhs: &Expr, rhs: &Expr, k_max: usize, q_max: usize) -> Result<IdentityCheck> {
    let symbolic = normal_order(cfg, lhs)?.equals_at(&normal_order(cfg, rhs)?, cfg);
    let cmp = equal_on(&evaluate(cfg, lhs)?, &evaluate(cfg, rhs)?, k_max, q_max);
    let witness = cmp.counterexample.as_ref().map(|c| counterexample_json(cfg, c));
    Ok(IdentityCheck {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        symbolic,
        evaluated: cmp.equal(),
        checked: cmp.checked,
        witness,
        engine_disagreement: symbolic != cmp.equal(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse_identity;
    use super::*;

    fn check(cfg: &SpaceConfig, text: &str) -> IdentityCheck {
        let (l, r) = parse_identity(text).unwrap();
        verify_identity(cfg, &l, &r, 2, 1).unwrap()
    }

    #[test]
    fn bracket_of_dirac_and_vector() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let r = check(&c, "[dirac, vector] == -2*euler - M");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn dirac_intertwines_pi() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let r = check(&c, "dirac*Pi(1) == (Pi(1) + 2*X(1))*dirac");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn false_identity_has_witness() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let r = check(&c, "dirac == vector");
        assert!(!r.symbolic && !r.evaluated);
        assert!(r.witness.is_some());
        assert!(!r.engine_disagreement);
    }

    #[test]
    fn letters_agree_with_operators() {
        let c = SpaceConfig::new(3, 1).unwrap();
        for i in 1..=c.dim() {
            for j in 1..=c.dim() {
                for (a, b) in [("E", "E"), ("D", "X"), ("E", "X"), ("E", "D"), ("X", "X")] {
                    let t = format!("{a}({i})*{b}({j}) == {a}({i})*{b}({j}) + 0");
                    let (l, _) = parse_identity(&t).unwrap();
                    let nf = normal_order(&c, &l).unwrap();
                    let back = nf_to_expr(&nf);
                    let r = verify_identity(&c, &l, &back, 2, 1).unwrap();
                    assert!(r.evaluated, "{t}");
                }
            }
        }
    }

    fn nf_to_expr(nf: &super::super::NormalForm) -> Expr {
        use super::super::Letter;
        let c = SpaceConfig::new(3, 1).unwrap();
        let mut sum = Vec::new();
        for (w, coef) in nf.substitute(&c) {
            let r = coef.as_rational().unwrap().clone();
            let lit = if r < 0 { Expr::Neg(Box::new(Expr::Lit(-r))) } else { Expr::Lit(r) };
            let mut f = vec![lit];
            f.extend(w.into_iter().map(|l| match l {
                Letter::X(j) => Expr::X(j),
                Letter::D(j) => Expr::D(j),
                Letter::E(j) => Expr::E(j),
            }));
            sum.push(Expr::Product(f));
        }
        Expr::Sum(sum)
    }
}
