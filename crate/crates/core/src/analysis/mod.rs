//! Representation-theoretic checks on truncated blocks of `P ⊗ S`.

mod casimir;
mod fischer;
mod howe;
mod pi_power;
mod singular;
mod spaces;
mod submodule;
pub mod suites;

use std::collections::BTreeMap;
use std::fmt;

use malachite_q::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::field::Scalar;
use crate::operators::Counterexample;
use crate::superspace::{Element, SpaceConfig};

pub use casimir::{casimir_test, CasimirOutcome, CasimirReport};
pub use fischer::{fischer_check, FischerReport};
pub use howe::{howe_closure_check, osp_dimension, HoweReport};
pub use pi_power::{pi_power_test, PiPowerReport, PiPowerRow};
pub use singular::{
    cartan_operators, expected_monogenic_weights, positive_roots, singular_vectors, weight_spaces,
    RootOperator, SingularVector,
};
pub use spaces::{
    harmonic_containment, harmonics, harmonics_spinor, monogenics, Chirality, Containment,
};
pub use submodule::{submodule_check, SubmoduleReport};

/// A weight `Σ a_j ε_j + Σ b_i δ_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub eps: Vec<Rational>,
    pub delta: Vec<Rational>,
}

impl Weight {
    pub fn zero(cfg: &SpaceConfig) -> Self {
        Weight {
            eps: vec![Rational::from(0); cfg.d()],
            delta: vec![Rational::from(0); cfg.n()],
        }
    }

    pub fn epsilon(cfg: &SpaceConfig, j: usize) -> Self {
        let mut w = Self::zero(cfg);
        w.eps[j - 1] = Rational::from(1);
        w
    }

    pub fn delta(cfg: &SpaceConfig, i: usize) -> Self {
        let mut w = Self::zero(cfg);
        w.delta[i - 1] = Rational::from(1);
        w
    }

    /// `ω_d = ½(ε_1 + … + ε_d)`.
    pub fn omega_d(cfg: &SpaceConfig) -> Self {
        let mut w = Self::zero(cfg);
        for e in &mut w.eps {
            *e = Rational::from_signeds(1, 2);
        }
        w
    }

    /// `ν_j = δ_1 + … + δ_j`.
    pub fn nu(cfg: &SpaceConfig, j: usize) -> Self {
        let mut w = Self::zero(cfg);
        for e in w.delta.iter_mut().take(j) {
            *e = Rational::from(1);
        }
        w
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a + b).collect(),
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight {
            eps: self.eps.iter().map(|a| a * c).collect(),
            delta: self.delta.iter().map(|a| a * c).collect(),
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = &Rational> {
        self.eps.iter().chain(self.delta.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(|a| *a == 0)
    }

    /// First nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.coords().find(|a| **a != 0).is_some_and(|a| *a > 0)
    }

    /// Whether every entry is an integer or a half-integer.
    pub fn is_half_integral(&self) -> bool {
        self.coords().all(|a| {
            let twice: Rational = a * Rational::from(2);
            *twice.denominator_ref() == 1u32
        })
    }

    pub fn to_strings(&self) -> (Vec<String>, Vec<String>) {
        (
            self.eps.iter().map(|a| a.to_string()).collect(),
            self.delta.iter().map(|a| a.to_string()).collect(),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let named = self
            .eps
            .iter()
            .enumerate()
            .map(|(j, a)| (format!("ε{}", j + 1), a))
            .chain(self.delta.iter().enumerate().map(|(i, a)| (format!("δ{}", i + 1), a)));
        for (name, a) in named {
            if *a != 0 {
                parts.push(format!("{a}{name}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (eps, delta) = self.to_strings();
        json!({ "eps": eps, "delta": delta }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            eps: Vec<String>,
            delta: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let parse = |v: Vec<String>| -> Result<Vec<Rational>, D::Error> {
            v.iter()
                .map(|s| s.parse::<Rational>().map_err(|_| serde::de::Error::custom(format!("bad rational {s}"))))
                .collect()
        };
        Ok(Weight {
            eps: parse(raw.eps)?,
            delta: parse(raw.delta)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One named assertion in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, ok: bool, data: Value) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            data,
        }
    }

    pub fn skipped(name: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            data: json!({ "reason": reason.into() }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// The serialised result of a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub params: Value,
    pub suite: String,
    pub checks: Vec<Check>,
    pub version: String,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: Value) -> Self {
        Report {
            params,
            suite: suite.into(),
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

/// Aggregated data about a truncated module.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub dimensions: BTreeMap<String, usize>,
    pub submodules: BTreeMap<String, usize>,
    pub casimir: Option<Value>,
    pub singular: Vec<SingularVector>,
    pub flags: BTreeMap<String, bool>,
}

impl ModuleReport {
    pub fn new(cfg: &SpaceConfig, k: usize, q: usize) -> Self {
        ModuleReport {
            m: cfg.m(),
            n: cfg.n(),
            k,
            q,
            ..Default::default()
        }
    }
}

/// Scalars as 4-tuples of exact rationals.
pub fn scalar_json(c: &Scalar) -> Value {
    json!(c.to_strings())
}

/// An element as a list of `{basis, coef}` pairs.
pub fn element_json(cfg: &SpaceConfig, e: &Element) -> Value {
    Value::Array(
        e.iter()
            .map(|((p, s), c)| {
                json!({
                    "basis": format!("{} ⊗ {}", p.display(cfg), s.display(cfg)),
                    "coef": c.to_strings(),
                })
            })
            .collect(),
    )
}

pub fn counterexample_json(cfg: &SpaceConfig, c: &Counterexample) -> Value {
    json!({
        "input": element_json(cfg, &Element::basis(c.input)),
        "left": element_json(cfg, &c.left),
        "right": element_json(cfg, &c.right),
    })
}

pub(crate) fn params(cfg: &SpaceConfig, extra: Value) -> Value {
    let mut v = json!({ "m": cfg.m(), "n": cfg.n(), "M": cfg.big_m() });
    if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
        obj.extend(more);
    }
    v
}
