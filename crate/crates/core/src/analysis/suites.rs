//! Named verification suites that produce [`Report`]s.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::*;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::operators::{
    b_op, bracket, conf_grade, conf_metric, dirac, dirac_stein_weiss, equal_on, k_conf, k_op,
    laplace, pi_op, r2, vector, ConfIndex, Grading, Operator,
};
use crate::superspace::SpaceConfig;

fn sign(odd: bool) -> Scalar {
    Scalar::from(if odd { -1 } else { 1 })
}

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn compare(cfg: &SpaceConfig, name: &str, anchor: &str, a: &Operator, b: &Operator, deg: usize, cut: usize) -> Check {
    let cmp = equal_on(a, b, deg, cut);
    let data = match &cmp.counterexample {
        None => json!({ "checked": cmp.checked }),
        Some(c) => json!({ "checked": cmp.checked, "counterexample": counterexample_json(cfg, c) }),
    };
    Check::new(name, anchor, cmp.equal(), data)
}

fn bracket_check(
    cfg: &SpaceConfig,
    name: &str,
    anchor: &str,
    a: &Operator,
    b: &Operator,
    grading: Grading,
    rhs: &Operator,
    deg: usize,
    cut: usize,
) -> Check {
    match bracket(a, b, grading) {
        Ok(br) => compare(cfg, name, anchor, &br, rhs, deg, cut),
        Err(e) => Check::new(name, anchor, false, json!({ "error": e.to_string() })),
    }
}

/// Merges many sub-checks into one, keeping the first failure.
fn fold_checks(name: &str, anchor: &str, parts: Vec<Check>) -> Check {
    let total: u64 = parts.iter().filter_map(|c| c.data["checked"].as_u64()).sum();
    match parts.iter().find(|c| c.status == Status::Fail) {
        None => Check::new(name, anchor, true, json!({ "relations": parts.len(), "checked": total })),
        Some(bad) => Check::new(
            name,
            anchor,
            false,
            json!({ "relations": parts.len(), "failing": bad.name, "detail": bad.data }),
        ),
    }
}

const OSP12: &str = "osp(1|2) realization by the Dirac operator and the vector variable";

/// Relations of the `osp(1|2)` realization on `P_{≤deg} ⊗ S^{≤cut}`.
pub fn osp12_suite(cfg: &SpaceConfig, deg: usize, cut: usize) -> Report {
    let mut report = Report::new("verify-osp12", params(cfg, json!({ "deg": deg, "spin_cut": cut })));
    let (d, x, lap, rr) = (dirac(cfg), vector(cfg), laplace(cfg), r2(cfg));
    let e = Operator::euler(cfg);
    let m = s(cfg.big_m());
    let id = Operator::identity(cfg);
    let e_half = e.add(&Operator::scalar(cfg, Scalar::frac(cfg.big_m(), 2)));
    let x2 = x.compose(&x);
    let h = Grading::Howe;
    let zero = Operator::zero(cfg);
    let dx_rhs = Operator::combination(cfg, vec![(s(-2), e.clone()), (-m.clone(), id.clone())]);
    let sl2_rhs = Operator::combination(cfg, vec![(s(4), e.clone()), (s(2) * m, id)]);
    let items: Vec<(&str, Box<dyn Fn() -> Check + Sync + Send>)> = vec![
        ("dirac squared is minus Laplace", Box::new(|| compare(cfg, "∂x² = −Δ", OSP12, &d.compose(&d), &lap.neg(), deg, cut))),
        ("vector squared", Box::new(|| compare(cfg, "x² = −R²", OSP12, &x2, &rr.neg(), deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[∂x, x] = −2E − M", OSP12, &d, &x, h, &dx_rhs, deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[x, x²] = 0", OSP12, &x, &x2, h, &zero, deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[∂x, x²] = −2x", OSP12, &d, &x2, h, &x.scale(&s(-2)), deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[x, Δ] = −2∂x", OSP12, &x, &lap, h, &d.scale(&s(-2)), deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[∂x, Δ] = 0", OSP12, &d, &lap, h, &zero, deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[x, E + M/2] = −x", OSP12, &x, &e_half, h, &x.neg(), deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[∂x, E + M/2] = ∂x", OSP12, &d, &e_half, h, &d, deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[Δ, R²] = 4E + 2M", OSP12, &lap, &rr, h, &sl2_rhs, deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[E + M/2, R²] = 2R²", OSP12, &e_half, &rr, h, &rr.scale(&s(2)), deg, cut))),
        ("", Box::new(|| bracket_check(cfg, "[E + M/2, Δ] = −2Δ", OSP12, &e_half, &lap, h, &lap.scale(&s(-2)), deg, cut))),
    ];
    for (_, run) in items {
        report.push(run());
    }
    report
}

/// The compressed gradient against the Clifford-form Dirac operator.
pub fn stein_weiss_suite(cfg: &SpaceConfig, deg: usize, cut: usize) -> Report {
    let mut report = Report::new("stein-weiss", params(cfg, json!({ "deg": deg, "spin_cut": cut })));
    report.push(compare(
        cfg,
        "E⊥∘∇ = Σ κ(Ê_k) ∂_{X_k}",
        "Dirac operator as compressed gradient versus Clifford form",
        &dirac_stein_weiss(cfg),
        &dirac(cfg),
        deg,
        cut,
    ));
    report
}

/// Index pairs `(i, j)` with `i < j`, plus `(i, i)` for fermionic `i`.
fn index_pairs(cfg: &SpaceConfig) -> Vec<(usize, usize)> {
    let n = cfg.dim();
    (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j || cfg.is_fermionic(i))
        .collect()
}

/// Right-hand side of the `osp` bracket with metric `h` and grading `gr`.
fn osp_rhs<I: Copy>(
    cfg: &SpaceConfig,
    (a, b, c, d): (I, I, I, I),
    h: impl Fn(I, I) -> i64,
    gr: impl Fn(I) -> u8,
    k: impl Fn(I, I) -> Operator,
) -> Operator {
    let odd = |x: u8| x % 2 == 1;
    let terms = vec![
        (s(h(c, b)), k(a, d)),
        (sign(odd(gr(a) * (gr(b) + gr(c)))) * s(h(d, a)), k(b, c)),
        (-sign(odd(gr(c) * gr(d))) * s(h(d, b)), k(a, c)),
        (-sign(odd(gr(a) * gr(b))) * s(h(c, a)), k(b, d)),
    ];
    Operator::combination(cfg, terms.into_iter().filter(|(c, _)| !c.is_zero()).collect())
}

const INVARIANCE: &str = "osp(m|2n) invariance of the Dirac operator";
const COMML: &str = "osp(m|2n) commutation relations of K_ij";
const BACTION: &str = "bivector action on vectors: [B_ij, Ê_k] = g_kj Ê_i − (−1)^{[i][j]} g_ki Ê_j";

/// `[∂x, K_ij] = 0`, the `K_ij` bracket table and the bivector action.
pub fn invariance_suite(cfg: &SpaceConfig, deg: usize, cut: usize) -> Report {
    let mut report = Report::new("verify-invariance", params(cfg, json!({ "deg": deg, "spin_cut": cut })));
    let d = dirac(cfg);
    let zero = Operator::zero(cfg);
    let dim = cfg.dim();
    let all_pairs: Vec<(usize, usize)> = (1..=dim).flat_map(|i| (1..=dim).map(move |j| (i, j))).collect();
    let parts: Vec<Check> = all_pairs
        .par_iter()
        .map(|&(i, j)| {
            let name = format!("[∂x, K_{i}{j}] = 0");
            bracket_check(cfg, &name, INVARIANCE, &d, &k_op(cfg, i, j), Grading::Natural, &zero, deg, cut)
        })
        .collect();
    report.push(fold_checks("[∂x, K_ij] = 0 for all i, j", INVARIANCE, parts));

    let pairs = index_pairs(cfg);
    let quads: Vec<(usize, usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(i, j)| pairs.iter().map(move |&(k, l)| (i, j, k, l)))
        .collect();
    let parts: Vec<Check> = quads
        .par_iter()
        .map(|&q| {
            let (i, j, k, l) = q;
            let rhs = osp_rhs(cfg, q, |a, b| cfg.metric(a, b) as i64, |a| cfg.grade(a), |a, b| k_op(cfg, a, b));
            let name = format!("[K_{i}{j}, K_{k}{l}]");
            bracket_check(cfg, &name, COMML, &k_op(cfg, i, j), &k_op(cfg, k, l), Grading::Natural, &rhs, deg, cut)
        })
        .collect();
    report.push(fold_checks("K_ij bracket table", COMML, parts));

    let triples: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(i, j)| (1..=dim).map(move |k| (i, j, k)))
        .collect();
    let parts: Vec<Check> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let hat = |a| Operator::clifford_hat(cfg, a);
            let rhs = Operator::combination(
                cfg,
                vec![
                    (s(cfg.metric(k, j) as i64), hat(i)),
                    (-sign(cfg.grade(i) * cfg.grade(j) == 1) * s(cfg.metric(k, i) as i64), hat(j)),
                ]
                .into_iter()
                .filter(|(c, _)| !c.is_zero())
                .collect(),
            );
            let name = format!("[B_{i}{j}, Ê_{k}]");
            bracket_check(cfg, &name, BACTION, &b_op(cfg, i, j), &hat(k), Grading::Natural, &rhs, deg, cut)
        })
        .collect();
    report.push(fold_checks("bivector action", BACTION, parts));
    report
}

const PI_SYM: &str = "Π_j is a generalized symmetry: ∂x Π_j = (Π_j + 2X_j) ∂x";
const CONF: &str = "conformal algebra osp(m+1,1|2n) relations with metric h";

/// Conformal symmetries `Π_j` and the `K_αβ` bracket table.
pub fn conformal_suite(cfg: &SpaceConfig, deg: usize, cut: usize) -> Report {
    let mut report = Report::new("verify-conformal", params(cfg, json!({ "deg": deg, "spin_cut": cut })));
    let d = dirac(cfg);
    let dim = cfg.dim();
    let parts: Vec<Check> = (1..=dim)
        .into_par_iter()
        .map(|j| {
            let pi = pi_op(cfg, j);
            let rhs = pi.add(&Operator::mul_var(cfg, j).scale(&s(2))).compose(&d);
            compare(cfg, &format!("∂x Π_{j}"), PI_SYM, &d.compose(&pi), &rhs, deg, cut)
        })
        .collect();
    report.push(fold_checks("Π_j symmetry for all j", PI_SYM, parts));

    let idx: Vec<ConfIndex> = (-1..=dim as i64).collect();
    let pairs: Vec<(ConfIndex, ConfIndex)> = idx
        .iter()
        .flat_map(|&a| idx.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b || (a == b && conf_grade(cfg, a) == 1))
        .collect();
    let quads: Vec<_> = pairs
        .iter()
        .flat_map(|&(a, b)| pairs.iter().map(move |&(c, e)| (a, b, c, e)))
        .collect();
    let parts: Vec<Check> = quads
        .par_iter()
        .map(|&q| {
            let (a, b, c, e) = q;
            let rhs = osp_rhs(cfg, q, |x, y| conf_metric(cfg, x, y), |x| conf_grade(cfg, x), |x, y| k_conf(cfg, x, y));
            let name = format!("[K_({a},{b}), K_({c},{e})]");
            bracket_check(cfg, &name, CONF, &k_conf(cfg, a, b), &k_conf(cfg, c, e), Grading::Natural, &rhs, deg, cut)
        })
        .collect();
    report.push(fold_checks("K_αβ bracket table", CONF, parts));
    report
}

fn needs_m_above_two(cfg: &SpaceConfig, report: &mut Report, name: &str, anchor: &str) -> bool {
    if cfg.m() <= 2 {
        report.push(Check::skipped(name, anchor, format!("m = {} but the statement assumes m > 2", cfg.m())));
        return true;
    }
    false
}

const FISCHER: &str = "monogenic Fischer decomposition H_k ⊗ S = M_k ⊕ x M_{k−1}";
const PX2L: &str = "∂x x^{2l} M_k = −2l x^{2l−1} M_k and ∂x x^{2l+1} M_k = −(2k+2l+M) x^{2l} M_k";

/// Fischer decomposition at each `k`, with `q = k + 2` unless given.
pub fn fischer_suite(cfg: &SpaceConfig, ks: &[usize], q: Option<usize>) -> Report {
    let mut report = Report::new("fischer", params(cfg, json!({ "k": ks, "spin_cut": q })));
    if needs_m_above_two(cfg, &mut report, "fischer", FISCHER) {
        return report;
    }
    for &k in ks {
        let q = q.unwrap_or(k + 2);
        let name = format!("fischer k = {k}, Q = {q}");
        match fischer_check(cfg, k, q) {
            Ok(r) => {
                let ok = r.passed();
                report.push(Check::new(name, FISCHER, ok, serde_json::to_value(&r).unwrap_or(Value::Null)));
                report.push(px2l_check(cfg, k, q));
            }
            Err(e) => report.push(Check::new(name, FISCHER, false, json!({ "reason": e.to_string() }))),
        }
    }
    report
}

fn px2l_check(cfg: &SpaceConfig, k: usize, q: usize) -> Check {
    let name = format!("x-power relations on M_{k}");
    let mk = match monogenics(cfg, k, q, Chirality::All) {
        Ok(v) => v,
        Err(e) => return Check::new(name, PX2L, false, json!({ "reason": e.to_string() })),
    };
    let (d, x) = (dirac(cfg), vector(cfg));
    let big_m = cfg.big_m();
    let failure = mk.par_iter().find_map_first(|v| {
        let mut powers = vec![v.clone()];
        for _ in 0..5 {
            powers.push(x.apply(powers.last().expect("nonempty")));
        }
        for l in 0..=2usize {
            let li = l as i64;
            if l >= 1 && d.apply(&powers[2 * l]) != powers[2 * l - 1].scale(&s(-2 * li)) {
                return Some(format!("even power 2l = {}", 2 * l));
            }
            if d.apply(&powers[2 * l + 1]) != powers[2 * l].scale(&s(-(2 * k as i64 + 2 * li + big_m))) {
                return Some(format!("odd power 2l+1 = {}", 2 * l + 1));
            }
        }
        None
    });
    Check::new(
        name,
        PX2L,
        failure.is_none(),
        json!({ "basis": mk.len(), "failing": failure }),
    )
}

/// Dimension of `M_k^{≤q}` with the annihilation and Euler checks.
pub fn monogenics_suite(cfg: &SpaceConfig, k: usize, q: Option<usize>, chirality: Chirality) -> Report {
    let q = q.unwrap_or(k + 2);
    let mut report = Report::new(
        "monogenics",
        params(cfg, json!({ "k": k, "spin_cut": q, "chirality": chirality })),
    );
    let anchor = "spherical monogenics M_k = ker ∂x ∩ P_k ⊗ S";
    match monogenics(cfg, k, q, chirality) {
        Ok(basis) => {
            let d = dirac(cfg);
            let e = Operator::euler(cfg);
            let killed = crate::linalg::annihilates(&d, &basis);
            let euler = basis.iter().all(|v| e.apply(v) == v.scale(&s(k as i64)));
            let mut rep = ModuleReport::new(cfg, k, q);
            rep.dimensions.insert("M_k".into(), basis.len());
            rep.flags.insert("annihilated".into(), killed);
            rep.flags.insert("euler_eigenvalue".into(), euler);
            report.push(Check::new(
                "monogenic basis",
                anchor,
                killed && euler,
                json!({
                    "dim": basis.len(),
                    "euler": k,
                    "lowest_weight": format!("{}/2", 2 * k as i64 + cfg.big_m()),
                    "module": rep,
                }),
            ));
        }
        Err(e) => report.push(Check::new("monogenic basis", anchor, false, json!({ "reason": e.to_string() }))),
    }
    report
}

const CASIMIR: &str = "Casimir x∂x on H_k ⊗ S: diagonalizable unless 2k − 2 + M = 0";

pub fn casimir_suite(cfg: &SpaceConfig, ks: &[usize], q: Option<usize>) -> Report {
    let mut report = Report::new("casimir", params(cfg, json!({ "k": ks, "spin_cut": q })));
    if needs_m_above_two(cfg, &mut report, "casimir", CASIMIR) {
        return report;
    }
    for &k in ks {
        let q = q.unwrap_or(k + 2);
        let r = casimir_test(cfg, k, q);
        report.push(Check::new(
            format!("casimir k = {k}, Q = {q}"),
            CASIMIR,
            r.passed(),
            serde_json::to_value(&r).unwrap_or(Value::Null),
        ));
    }
    report
}

const SUBMODULE: &str = "unique submodule x^{2d−2n+2k−1} M_{2n−2d−k+1}^∓ of M_k^±";

pub fn submodule_suite(cfg: &SpaceConfig, ks: &[usize], q: Option<usize>) -> Report {
    let mut report = Report::new("submodule", params(cfg, json!({ "k": ks, "spin_cut": q })));
    if needs_m_above_two(cfg, &mut report, "submodule", SUBMODULE) {
        return report;
    }
    for &k in ks {
        let q = q.unwrap_or(k + 2);
        for ch in [Chirality::Plus, Chirality::Minus] {
            let name = format!("submodule k = {k}, Q = {q}, {ch:?}");
            match submodule_check(cfg, k, q, ch) {
                Ok(r) => report.push(Check::new(name, SUBMODULE, r.passed(), serde_json::to_value(&r).unwrap_or(Value::Null))),
                Err(Error::WindowViolation(reason)) => report.push(Check::skipped(name, SUBMODULE, reason)),
                Err(e) => report.push(Check::new(name, SUBMODULE, false, json!({ "reason": e.to_string() }))),
            }
        }
    }
    report
}

const SINGULAR: &str = "highest weights of spherical monogenics: kε_1 + ω_d − ½ν_n";

/// Singular vectors in `M_k^{≤q}` and their weights.
pub fn singular_suite(cfg: &SpaceConfig, ks: &[usize], q: Option<usize>) -> Report {
    let mut report = Report::new("singular", params(cfg, json!({ "k": ks, "spin_cut": q })));
    if needs_m_above_two(cfg, &mut report, "singular", SINGULAR) {
        return report;
    }
    for &k in ks {
        let q = q.unwrap_or(k + 2);
        let name = format!("singular vectors k = {k}, Q = {q}");
        match singular_report(cfg, k, q) {
            Ok((ok, data)) => report.push(Check::new(name, SINGULAR, ok, data)),
            Err(e) => report.push(Check::new(name, SINGULAR, false, json!({ "reason": e.to_string() }))),
        }
    }
    report
}

fn singular_report(cfg: &SpaceConfig, k: usize, q: usize) -> Result<(bool, Value)> {
    let expected = expected_monogenic_weights(cfg, k);
    let chiralities = if cfg.m_is_odd() {
        vec![Chirality::All]
    } else {
        vec![Chirality::Plus, Chirality::Minus]
    };
    let mut ok = true;
    let mut rows = Vec::new();
    for (ch, want) in chiralities.into_iter().zip(&expected) {
        let space = monogenics(cfg, k, q, ch)?;
        let found = singular_vectors(cfg, &space)?;
        let matched = found.len() == 1 && &found[0].1 == want;
        ok &= matched;
        let mut rep = ModuleReport::new(cfg, k, q);
        rep.dimensions.insert("M_k".into(), space.len());
        rep.singular = found.iter().map(|(v, w)| SingularVector::new(cfg, v, w.clone())).collect();
        rep.flags.insert("unique_line_with_expected_weight".into(), matched);
        rows.push(json!({
            "chirality": ch,
            "expected": want,
            "expected_display": want.to_string(),
            "found": found.iter().map(|(_, w)| w.to_string()).collect::<Vec<_>>(),
            "module": rep,
        }));
    }
    Ok((ok, json!({ "borel": "lexicographic in (ε_1..ε_d, δ_1..δ_n)", "spaces": rows })))
}

const PI_POWER: &str = "irreducibility of monogenics under the conformal algebra via Π_1^k(1) ≠ 0";

pub fn pi_power_suite(cfg: &SpaceConfig, k_max: usize) -> Report {
    let mut report = Report::new("pi-power", params(cfg, json!({ "k_max": k_max })));
    if needs_m_above_two(cfg, &mut report, "pi-power", PI_POWER) {
        return report;
    }
    let r = pi_power_test(cfg, k_max);
    report.push(Check::new(
        "Π_1^k(1 ⊗ 1) nonzero",
        PI_POWER,
        r.nonzero_ok,
        json!({ "through": r.nonzero_through, "rows": r.rows }),
    ));
    if let (Some(v), Some(ok)) = (r.vanishing_at, r.vanishing_ok) {
        report.push(Check::new(
            "Π_1^{2p+2}(1 ⊗ 1) vanishes",
            "degree bound for x R^{2p} when M = −2p",
            ok,
            json!({ "power": v }),
        ));
    }
    report
}

const HOWE: &str = "Howe dual pair: generators span osp(m+4n|2m+2n)";

pub fn howe_suite(cfg: &SpaceConfig, d_cut: usize, q_cut: usize) -> Report {
    let mut report = Report::new("howe-closure", params(cfg, json!({ "deg": d_cut, "spin_cut": q_cut })));
    match howe_closure_check(cfg, d_cut, q_cut) {
        Ok(r) => report.push(Check::new("closure", HOWE, r.passed(), serde_json::to_value(&r).unwrap_or(Value::Null))),
        Err(e) => report.push(Check::new("closure", HOWE, false, json!({ "reason": e.to_string() }))),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp12_small() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let r = osp12_suite(&c, 2, 1);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(r.checks.len(), 12);
    }

    #[test]
    fn invariance_small() {
        let r = invariance_suite(&SpaceConfig::new(3, 1).unwrap(), 1, 1);
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn conformal_small() {
        let r = conformal_suite(&SpaceConfig::new(3, 1).unwrap(), 1, 1);
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn small_m_is_skipped() {
        let r = fischer_suite(&SpaceConfig::new(2, 1).unwrap(), &[1], None);
        assert_eq!(r.checks[0].status, Status::Skipped);
        assert!(r.passed());
    }

    #[test]
    fn report_round_trips() {
        let r = monogenics_suite(&SpaceConfig::new(3, 0).unwrap(), 2, None, Chirality::All);
        assert_eq!(r.checks[0].data["dim"], 6);
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
