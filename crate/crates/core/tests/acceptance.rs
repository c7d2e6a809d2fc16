//! End-to-end acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! to stderr (bypassing the harness capture) and then asserts.

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use qfg::chars::CharTable;
use qfg::group::FiniteGroup;
use qfg::run::{
    self, ActionConfig, FieldConfig, FixedField, GroupConfig, RunConfig, RunOptions, RunReport, UnramifiedField,
};
use qfg::skew::skew_suite;
use qfg::CycElem;

fn verdict(n: u32, failures: &[String], detail: &str) {
    let line = if failures.is_empty() {
        format!("criterion {n}: PASS ({detail})\n")
    } else {
        format!("criterion {n}: FAIL ({detail}): {}\n", failures.join("; "))
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(failures.is_empty(), "criterion {n}: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

/// Multiplicative order of `a` mod `m` by repeated multiplication.
fn brute_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

fn opts() -> RunOptions {
    RunOptions::default()
}

#[test]
fn criterion_1_sophie_germain_three() {
    let start = Instant::now();
    let r = run::sophie_germain(3, &opts()).unwrap();
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    check(&mut f, r.passed, || format!("{} failing checks", r.checks_failed));
    check(&mut f, r.components.len() == 2, || format!("{} components", r.components.len()));
    let big: Vec<_> = r.components.iter().filter(|c| c.orbit.len() > 1).collect();
    check(&mut f, big.len() == 1, || "expected one nontrivial component".into());
    if let Some(c) = big.first() {
        let got = (c.w_chi, c.v_chi, c.n_chi, c.s_chi, c.covered_by_prior_work);
        check(&mut f, got == (3, 1, 1, 3, false), || format!("(w, v, n, s, prior) = {got:?}"));
        let fc = (c.f_chi.degree, c.f_chi.e, c.f_chi.f);
        check(&mut f, fc == (2, 1, 2), || format!("F_chi (deg, e, f) = {fc:?}"));
        let rel = (c.relative.degree, c.relative.e, c.relative.f);
        check(&mut f, rel == (3, 1, 3), || format!("F(eta)/F_chi (deg, e, f) = {rel:?}"));
    }
    check(&mut f, elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
    verdict(1, &f, &format!("2 components, w = 3, v = 1, n = 1, s = 3 in {elapsed:.2?}"));
}

#[test]
fn criterion_2_sophie_germain_family() {
    let mut f = Vec::new();
    let mut flagged = Vec::new();
    for p in [5u64, 11, 23] {
        let start = Instant::now();
        let r = run::sophie_germain(p, &opts()).unwrap();
        let elapsed = start.elapsed();
        check(&mut f, r.passed, || format!("p = {p}: {:?}", r.failures()));
        let ord = brute_order(p, 2 * p + 1);
        let sg = r.sophie_germain.as_ref().unwrap();
        check(&mut f, sg.order_of_p == ord, || format!("p = {p}: reported order {} vs {ord}", sg.order_of_p));
        let flag = r.discrepancies.iter().any(|d| d.flagged);
        check(&mut f, flag == (ord != 2 * p), || format!("p = {p}: flag {flag} with order {ord}"));
        if flag {
            flagged.push(p);
        }
        for c in r.components.iter().filter(|c| c.orbit.len() > 1) {
            let got = (c.w_chi, c.v_chi, c.relative.degree as u64, c.relative.e, c.n_chi, c.s_chi);
            check(&mut f, got == (p, 1, p, 1, 1, p), || format!("p = {p}: (w, v, deg, e, n, s) = {got:?}"));
        }
        check(&mut f, elapsed < Duration::from_secs(5), || format!("p = {p} took {elapsed:?}"));
    }
    check(&mut f, flagged == [5], || format!("flagged {flagged:?}"));
    verdict(2, &f, "p = 5, 11, 23; degree discrepancy flagged at p = 5 only");
}

/// Every (group, action) pair of the sweep, with its order.
fn sweep_groups() -> Vec<(GroupConfig, ActionConfig, u64, Option<u64>)> {
    use ActionConfig::*;
    use GroupConfig::*;
    let mut out = Vec::new();
    for n in [1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 20, 24] {
        out.push((Cyclic(n), Trivial, n, None));
    }
    out.push((Abelian(vec![2, 2]), Trivial, 4, None));
    out.push((Metacyclic([3, 2, 2]), Trivial, 6, None));
    out.push((Metacyclic([7, 3, 2]), Trivial, 21, None));
    out.push((Metacyclic([13, 3, 3]), Trivial, 39, None));
    // nontrivial actions of p-power order, valid only for the stated p
    out.push((Cyclic(7), Power(2), 7, Some(3)));
    out.push((Cyclic(13), Power(3), 13, Some(3)));
    out.push((Cyclic(11), Power(3), 11, Some(5)));
    out.push((Abelian(vec![2, 2]), Perm(vec![0, 2, 3, 1]), 4, Some(3)));
    out
}

fn fields(p: u64) -> Vec<(&'static str, FieldConfig)> {
    let squares: Vec<u64> = (1..p).map(|a| a * a % p).collect();
    vec![
        ("Q_p", FieldConfig::default()),
        ("unramified quadratic", FieldConfig::Unramified(UnramifiedField { unramified: 2 })),
        (
            "ramified quadratic",
            FieldConfig::Fixed(FixedField {
                conductor: p,
                subgroup_generators: squares,
            }),
        ),
    ]
}

struct Sweep {
    runs: Vec<(String, RunConfig, RunReport)>,
    elapsed: Duration,
}

/// The configurations shared by criteria 3 to 6, each run once with base
/// change and (for `|H| <= 16`) the idempotent suite.
fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let mut runs = Vec::new();
        for (group, action, order, only_p) in sweep_groups() {
            for p in [3u64, 5, 7] {
                if order % p == 0 || only_p.is_some_and(|q| q != p) {
                    continue;
                }
                for (fname, field) in fields(p) {
                    let mut cfg = RunConfig::new(p, group.clone());
                    cfg.action = action.clone();
                    cfg.field = field;
                    cfg.verify.idempotent_budget = 16;
                    let name = format!("p = {p}, {group:?}, {action:?}, {fname}");
                    let report = run::run_verify(&cfg, &opts()).unwrap_or_else(|e| panic!("{name}: {e}"));
                    runs.push((name, cfg, report));
                }
            }
        }
        Sweep {
            runs,
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn criterion_3_dimension_sum_rule() {
    let s = sweep();
    let mut f = Vec::new();
    let mut groups = std::collections::BTreeSet::new();
    for (name, cfg, r) in &s.runs {
        let order = r.group.as_ref().unwrap().order as u64;
        groups.insert(format!("{:?}", cfg.group));
        let dim: u64 = r
            .components
            .iter()
            .map(|c| c.v_chi * c.eta_degree * c.eta_degree * c.deg_f_eta_over_f as u64)
            .sum();
        check(&mut f, dim == order, || format!("{name}: dimension {dim} != {order}"));
        for c in &r.components {
            check(&mut f, c.n_chi * c.s_chi == c.eta_degree * c.w_chi, || {
                format!("{name} [{}]: n s != eta(1) w", c.representative)
            });
            check(
                &mut f,
                c.v_chi * c.deg_f_eta_over_f as u64 == c.w_chi * c.deg_f_chi_over_f as u64,
                || format!("{name} [{}]: v (F(eta):F) != w (F_chi:F)", c.representative),
            );
        }
        let b = r.base_field.as_ref().unwrap();
        let want = if name.ends_with("Q_p") {
            (1, 1)
        } else if name.ends_with("unramified quadratic") {
            (2, 1)
        } else {
            (2, 2)
        };
        check(&mut f, (b.degree, b.e) == want, || format!("{name}: base field (deg, e) = ({}, {})", b.degree, b.e));
        let inv = r.checks.iter().filter(|c| c.suite == "invariants" && !c.passed).count();
        check(&mut f, inv == 0, || format!("{name}: {inv} invariant checks failed"));
    }
    check(&mut f, s.runs.len() >= 20, || format!("only {} configurations", s.runs.len()));
    verdict(3, &f, &format!("{} configurations over {} groups", s.runs.len(), groups.len()));
}

#[test]
fn criterion_4_idempotents() {
    let s = sweep();
    let mut f = Vec::new();
    let mut covered = 0;
    let mut total = 0;
    for (name, _, r) in &s.runs {
        let order = r.group.as_ref().unwrap().order;
        let idem: Vec<_> = r.checks.iter().filter(|c| c.suite == "idempotents").collect();
        if order <= 16 {
            covered += 1;
            total += idem.len();
            let needed = ["routes agree", "idempotent", "central", "phi-invariant", "rank of", "rank additivity", "sum of eps_(F,chi) = 1", "orthogonal"];
            for key in needed {
                check(&mut f, idem.iter().any(|c| c.name.contains(key)), || format!("{name}: no '{key}' check"));
            }
            for c in idem.iter().filter(|c| !c.passed) {
                f.push(format!("{name}: {} (expected {}, got {})", c.name, c.expected, c.actual));
            }
        }
    }
    check(&mut f, s.elapsed < Duration::from_secs(60), || format!("sweep took {:?}", s.elapsed));
    verdict(4, &f, &format!("{total} checks over {covered} configurations with |H| <= 16, sweep {:.1?}", s.elapsed));
}

fn divisors(n: usize) -> usize {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count()
}

#[test]
fn criterion_5_base_change() {
    let s = sweep();
    let mut f = Vec::new();
    let mut records = 0;
    for (name, _, r) in &s.runs {
        let expected: usize = r.components.iter().map(|c| divisors(c.relative.degree)).sum();
        check(&mut f, r.base_change.len() == expected, || {
            format!("{name}: {} base-change records, expected {expected}", r.base_change.len())
        });
        for b in &r.base_change {
            let comp = r.components.iter().find(|c| c.representative == b.representative).unwrap();
            check(&mut f, b.v_e == comp.v_chi * b.degree as u64 && b.v_e == b.expected_v, || {
                format!("{name} [{}]: v_E = {} over degree {}", b.representative, b.v_e, b.degree)
            });
            check(&mut f, b.tau_e == b.expected_tau, || {
                format!("{name} [{}]: tau_E = {} vs {}", b.representative, b.tau_e, b.expected_tau)
            });
        }
        records += r.base_change.len();
        for c in r.checks.iter().filter(|c| c.suite == "base-change" && !c.passed) {
            f.push(format!("{name}: {}", c.name));
        }
    }
    verdict(5, &f, &format!("{records} intermediate fields"));
}

#[test]
fn criterion_6_f_chi_routes() {
    let s = sweep();
    let mut f = Vec::new();
    let mut n = 0;
    for (name, _, r) in &s.runs {
        let routes: Vec<_> = r.checks.iter().filter(|c| c.name.contains("F_chi: fixed field")).collect();
        check(&mut f, routes.len() == r.components.len(), || format!("{name}: {} route checks", routes.len()));
        for c in routes.iter().filter(|c| !c.passed) {
            f.push(format!("{name}: {} ({})", c.name, c.actual));
        }
        n += routes.len();
    }
    verdict(6, &f, &format!("{n} components"));
}

#[test]
fn criterion_7_skew_series() {
    let start = Instant::now();
    let runs = skew_suite(3, 4, 8, 20240601, 100, &[1, 2, 3]).unwrap();
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    let laws = ["associativity", "delta(ab)", "(1+X) c = tau(c) (1+X)", "(1+X)^ord(tau) is central", "unit inversion"];
    for run in &runs {
        for law in laws {
            let c = run.checks.iter().find(|c| c.name.starts_with(law));
            check(&mut f, c.is_some_and(|c| c.passed), || format!("f = {}: {law}: {c:?}", run.residue_degree));
        }
        check(&mut f, run.checks.iter().all(|c| c.passed), || format!("f = {}: failing check", run.residue_degree));
        let expected_order = [1, 2, 3][run.residue_degree - 1];
        check(&mut f, run.tau_order == expected_order, || format!("f = {}: ord tau {}", run.residue_degree, run.tau_order));
    }
    check(&mut f, elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"));
    verdict(7, &f, &format!("f = 1, 2, 3 with 100 samples per law in {elapsed:.2?}"));
}

/// Exact first orthogonality relation, computed directly from class sizes.
fn orthogonality(group: &FiniteGroup, t: &CharTable) -> Result<(), String> {
    let sizes = t.classes().sizes();
    let n = group.order() as i64;
    let e = t.modulus();
    for (i, a) in t.chars().iter().enumerate() {
        for (j, b) in t.chars().iter().enumerate() {
            let mut sum = CycElem::zero(e);
            for (c, &size) in sizes.iter().enumerate() {
                let term = a.value(c) * &b.value(c).conj();
                for _ in 0..size {
                    sum = &sum + &term;
                }
            }
            let want = CycElem::from_int(e, if i == j { n } else { 0 });
            if sum != want {
                return Err(format!("rows {i}, {j}"));
            }
        }
    }
    // column relation at the identity: sum of degrees squared
    let deg2: u64 = t.chars().iter().map(|c| c.degree() * c.degree()).sum();
    if deg2 != n as u64 {
        return Err(format!("sum of squared degrees {deg2}"));
    }
    Ok(())
}

#[test]
fn criterion_8_character_tables() {
    let mut f = Vec::new();
    let mut groups: Vec<(String, FiniteGroup)> =
        (1..=24).map(|n| (format!("C_{n}"), FiniteGroup::cyclic(n).unwrap())).collect();
    groups.push(("C_2 x C_2".into(), FiniteGroup::abelian(&[2, 2]).unwrap()));
    groups.push(("C_3 x| C_2".into(), FiniteGroup::metacyclic(3, 2, 2).unwrap()));
    groups.push(("C_7 x| C_3".into(), FiniteGroup::metacyclic(7, 3, 2).unwrap()));
    groups.push(("C_13 x| C_3".into(), FiniteGroup::metacyclic(13, 3, 3).unwrap()));
    groups.push(("C_5 x| C_4".into(), FiniteGroup::metacyclic(5, 4, 2).unwrap()));
    for (name, g) in &groups {
        let dixon = CharTable::dixon(g).unwrap();
        if let Err(e) = orthogonality(g, &dixon) {
            f.push(format!("{name}: Dixon table fails orthogonality at {e}"));
        }
        match CharTable::closed_form(g) {
            Some(Ok(closed)) => {
                let (mut a, mut b) = (dixon.chars().to_vec(), closed.chars().to_vec());
                a.sort();
                b.sort();
                check(&mut f, a == b, || format!("{name}: Dixon and closed form differ"));
            }
            Some(Err(e)) => f.push(format!("{name}: closed form failed: {e}")),
            None => f.push(format!("{name}: no closed form")),
        }
    }
    verdict(8, &f, &format!("{} groups, Dixon = closed form up to row order", groups.len()));
}

#[test]
fn criterion_9_determinism() {
    let mut f = Vec::new();
    let mut cfg = RunConfig::new(3, GroupConfig::Cyclic(7));
    cfg.action = ActionConfig::Power(2);
    cfg.verify.skew = true;
    cfg.skew.samples = 20;
    cfg.skew.seed = 99;
    let runs: [Box<dyn Fn() -> RunReport>; 4] = [
        Box::new(|| run::sophie_germain(3, &opts()).unwrap()),
        Box::new(|| run::run_verify(&cfg, &opts()).unwrap()),
        Box::new(|| run::run_decompose(&RunConfig::new(5, GroupConfig::Metacyclic([7, 3, 2])), &opts()).unwrap()),
        Box::new(|| run::skew_check(3, 4, 8, 7).unwrap()),
    ];
    for (i, make) in runs.iter().enumerate() {
        let (a, b) = (make(), make());
        check(&mut f, a.to_doc() == b.to_doc(), || format!("run {i}: documents differ"));
        check(&mut f, run::render_human(&a) == run::render_human(&b), || format!("run {i}: tables differ"));
    }
    verdict(9, &f, "4 report kinds, document and table output");
}
