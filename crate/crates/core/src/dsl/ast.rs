use std::fmt;

use malachite_q::Rational;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Named {
    Dirac,
    Vector,
    Laplace,
    R2,
    Euler,
    L(usize, usize),
    B(usize, usize),
    K(usize, usize),
    Pi(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Multiplication by `X_j`.
    X(usize),
    /// `∂_{X_j}`.
    D(usize),
    /// `∂_{X^j}`.
    Dup(usize),
    /// Clifford generator `E_j`.
    E(usize),
    Named(Named),
    /// Non-negative rational literal.
    Lit(Rational),
    I,
    Sqrt2,
    /// The superdimension.
    M,
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Product(Vec<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(n: u64) -> Expr {
        Expr::Lit(Rational::from(n))
    }

    pub fn minus(self, other: Expr) -> Expr {
        Expr::Sum(vec![self, -other])
    }

    /// Largest index mentioned.
    pub fn max_index(&self) -> usize {
        match self {
            Expr::X(j) | Expr::D(j) | Expr::Dup(j) | Expr::E(j) => *j,
            Expr::Named(Named::Pi(j)) => *j,
            Expr::Named(Named::L(i, j) | Named::B(i, j) | Named::K(i, j)) => *i.max(j),
            Expr::Named(_) | Expr::Lit(_) | Expr::I | Expr::Sqrt2 | Expr::M => 0,
            Expr::Sum(v) | Expr::Product(v) => v.iter().map(Expr::max_index).max().unwrap_or(0),
            Expr::Neg(a) => a.max_index(),
            Expr::Bracket(a, b) => a.max_index().max(b.max_index()),
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Dirac => write!(f, "dirac"),
            Named::Vector => write!(f, "vector"),
            Named::Laplace => write!(f, "laplace"),
            Named::R2 => write!(f, "r2"),
            Named::Euler => write!(f, "euler"),
            Named::L(i, j) => write!(f, "L({i},{j})"),
            Named::B(i, j) => write!(f, "B({i},{j})"),
            Named::K(i, j) => write!(f, "K({i},{j})"),
            Named::Pi(j) => write!(f, "Pi({j})"),
        }
    }
}

fn wrapped(e: &Expr, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X(j) => write!(f, "X({j})"),
            Expr::D(j) => write!(f, "D({j})"),
            Expr::Dup(j) => write!(f, "Dup({j})"),
            Expr::E(j) => write!(f, "E({j})"),
            Expr::Named(n) => write!(f, "{n}"),
            Expr::Lit(r) => write!(f, "{r}"),
            Expr::I => write!(f, "i"),
            Expr::Sqrt2 => write!(f, "sqrt2"),
            Expr::M => write!(f, "M"),
            Expr::Sum(items) => {
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    wrapped(e, f, matches!(e, Expr::Sum(_)))?;
                }
                Ok(())
            }
            Expr::Neg(e) => {
                write!(f, "-")?;
                wrapped(e, f, matches!(**e, Expr::Sum(_) | Expr::Product(_)))
            }
            Expr::Product(items) => {
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    wrapped(e, f, matches!(e, Expr::Sum(_) | Expr::Product(_)))?;
                }
                Ok(())
            }
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
    Eq,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut p = 0;
    while p < chars.len() {
        let c = chars[p];
        if c.is_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let start = p;
            while p < chars.len() && chars[p].is_ascii_digit() {
                p += 1;
            }
            let s: String = chars[start..p].iter().collect();
            let n = s.parse().map_err(|_| Error::SyntaxError {
                pos: start,
                msg: "number too large".into(),
            })?;
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() {
            let start = p;
            while p < chars.len() && chars[p].is_ascii_alphanumeric() {
                p += 1;
            }
            out.push((start, Tok::Ident(chars[start..p].iter().collect())));
        } else if c == '=' && chars.get(p + 1) == Some(&'=') {
            out.push((p, Tok::Eq));
            p += 2;
        } else if "()[],+*/".contains(c) {
            out.push((p, Tok::Sym(c)));
            p += 1;
        } else if c == '-' || c == '−' {
            out.push((p, Tok::Sym('-')));
            p += 1;
        } else {
            return Err(Error::SyntaxError {
                pos: p,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut items = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    items.push(self.term()?);
                }
                Tok::Sym('-') => {
                    self.bump();
                    items.push(-self.term()?);
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Sum(items) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut items = vec![self.unary()?];
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Product(items) })
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn index(&mut self) -> Result<usize> {
        match self.peek() {
            Tok::Num(n) if *n >= 1 => {
                let n = *n as usize;
                self.bump();
                Ok(n)
            }
            _ => self.err("expected an index ≥ 1"),
        }
    }

    fn args(&mut self, count: usize) -> Result<Vec<usize>> {
        self.expect('(')?;
        let mut out = vec![self.index()?];
        for _ in 1..count {
            self.expect(',')?;
            out.push(self.index()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.pos();
        match self.bump() {
            Tok::Num(n) => {
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let Tok::Num(d) = self.peek().clone() else {
                        return self.err("expected a denominator");
                    };
                    if d == 0 {
                        return self.err("zero denominator");
                    }
                    self.bump();
                    return Ok(Expr::Lit(Rational::from_unsigneds(n, d)));
                }
                Ok(Expr::int(n))
            }
            Tok::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => Ok(match name.as_str() {
                "M" => Expr::M,
                "i" => Expr::I,
                "sqrt2" => Expr::Sqrt2,
                "dirac" => Expr::Named(Named::Dirac),
                "vector" => Expr::Named(Named::Vector),
                "laplace" => Expr::Named(Named::Laplace),
                "r2" => Expr::Named(Named::R2),
                "euler" => Expr::Named(Named::Euler),
                "X" => Expr::X(self.args(1)?[0]),
                "D" => Expr::D(self.args(1)?[0]),
                "Dup" => Expr::Dup(self.args(1)?[0]),
                "E" => Expr::E(self.args(1)?[0]),
                "Pi" => Expr::Named(Named::Pi(self.args(1)?[0])),
                "L" | "B" | "K" => {
                    let a = self.args(2)?;
                    Expr::Named(match name.as_str() {
                        "L" => Named::L(a[0], a[1]),
                        "B" => Named::B(a[0], a[1]),
                        _ => Named::K(a[0], a[1]),
                    })
                }
                other => {
                    return Err(Error::SyntaxError {
                        pos: start,
                        msg: format!("unknown name '{other}'"),
                    })
                }
            }),
            Tok::End => Err(Error::SyntaxError {
                pos: start,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::SyntaxError {
                pos: start,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

fn parse_tokens(toks: Vec<(usize, Tok)>) -> Result<(Expr, Parser)> {
    let mut p = Parser { toks, at: 0 };
    let e = p.sum()?;
    Ok((e, p))
}

pub fn parse(text: &str) -> Result<Expr> {
    let (e, p) = parse_tokens(lex(text)?)?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses `lhs == rhs`.
pub fn parse_identity(text: &str) -> Result<(Expr, Expr)> {
    let (lhs, mut p) = parse_tokens(lex(text)?)?;
    if *p.peek() != Tok::Eq {
        return p.err("expected '=='");
    }
    p.bump();
    let rhs = p.sum()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok((lhs, rhs))
}
