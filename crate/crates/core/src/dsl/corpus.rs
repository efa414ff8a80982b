use serde::Serialize;

use crate::superspace::SpaceConfig;

/// A named identity `lhs == rhs` in the expression language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenIdentity {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
}

impl GoldenIdentity {
    fn new(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        GoldenIdentity {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn text(&self) -> String {
        format!("{} == {}", self.lhs, self.rhs)
    }
}

const SAMPLED_QUADRUPLES: usize = 40;

fn linear(terms: &[(i64, String)]) -> String {
    let mut out = String::new();
    for (c, t) in terms.iter().filter(|(c, _)| *c != 0) {
        let mag = if c.abs() == 1 { t.clone() } else { format!("{}*{t}", c.abs()) };
        if out.is_empty() {
            out = if *c < 0 { format!("-{mag}") } else { mag };
        } else {
            out += if *c < 0 { " - " } else { " + " };
            out += &mag;
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn parity_sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Identities every configuration should satisfy.
pub fn golden_corpus(cfg: &SpaceConfig) -> Vec<GoldenIdentity> {
    let mut out = vec![
        GoldenIdentity::new("dirac squared", "dirac*dirac", "-laplace"),
        GoldenIdentity::new("vector squared", "vector*vector", "-r2"),
        GoldenIdentity::new("[dirac, vector]", "[dirac, vector]", "-2*euler - M"),
        GoldenIdentity::new("[vector, vector^2]", "[vector, vector*vector]", "0"),
        GoldenIdentity::new("[dirac, vector^2]", "[dirac, vector*vector]", "-2*vector"),
        GoldenIdentity::new("[vector, laplace]", "[vector, laplace]", "-2*dirac"),
        GoldenIdentity::new("[dirac, laplace]", "[dirac, laplace]", "0"),
        GoldenIdentity::new("[vector, euler + M/2]", "[vector, euler + 1/2*M]", "-vector"),
        GoldenIdentity::new("[dirac, euler + M/2]", "[dirac, euler + 1/2*M]", "dirac"),
        GoldenIdentity::new("[laplace, r2]", "[laplace, r2]", "4*euler + 2*M"),
        GoldenIdentity::new("[euler + M/2, r2]", "[euler + 1/2*M, r2]", "2*r2"),
        GoldenIdentity::new("[euler + M/2, laplace]", "[euler + 1/2*M, laplace]", "-2*laplace"),
    ];

    let dim = cfg.dim();
    let g = |a: usize, b: usize| cfg.metric(a, b) as i64;
    let gr = |a: usize| cfg.grade(a) as i64;
    let pairs: Vec<(usize, usize)> = (1..=dim)
        .flat_map(|i| (i..=dim).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j || cfg.is_fermionic(i))
        .collect();
    let quads: Vec<_> = pairs
        .iter()
        .flat_map(|&a| pairs.iter().map(move |&b| (a, b)))
        .collect();
    let stride = quads.len().div_ceil(SAMPLED_QUADRUPLES).max(1);
    for &((a, b), (c, d)) in quads.iter().step_by(stride) {
        let k = |x: usize, y: usize| format!("K({x},{y})");
        let rhs = linear(&[
            (g(c, b), k(a, d)),
            (parity_sign(gr(a) * (gr(b) + gr(c)) % 2 == 1) * g(d, a), k(b, c)),
            (-parity_sign(gr(c) * gr(d) % 2 == 1) * g(d, b), k(a, c)),
            (-parity_sign(gr(a) * gr(b) % 2 == 1) * g(c, a), k(b, d)),
        ]);
        out.push(GoldenIdentity::new(
            format!("[K_{a}{b}, K_{c}{d}]"),
            format!("[K({a},{b}), K({c},{d})]"),
            rhs,
        ));
    }

    for &(i, j) in &pairs {
        for l in 1..=dim {
            let hat = |x: usize| {
                let (p, s) = cfg.metric_partner(x);
                if s < 0 {
                    format!("(-E({p}))")
                } else {
                    format!("E({p})")
                }
            };
            let swap = parity_sign((gr(i) + gr(j)) * gr(l) % 2 == 1);
            let lhs = linear(&[
                (1, format!("B({i},{j})*{}", hat(l))),
                (-swap, format!("{}*B({i},{j})", hat(l))),
            ]);
            let rhs = linear(&[
                (g(l, j), hat(i)),
                (-parity_sign(gr(i) * gr(j) == 1) * g(l, i), hat(j)),
            ]);
            out.push(GoldenIdentity::new(format!("B_{i}{j} acting on Ê_{l}"), lhs, rhs));
        }
    }

    for j in 1..=dim {
        out.push(GoldenIdentity::new(
            format!("Π_{j} symmetry"),
            format!("dirac*Pi({j})"),
            format!("(Pi({j}) + 2*X({j}))*dirac"),
        ));
    }
    out
}
