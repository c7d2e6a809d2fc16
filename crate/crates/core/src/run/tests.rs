use super::*;
use crate::error::Error;

const SG3: &str = r#"
p = 3
group = { cyclic = 7 }
action = { power = 2 }
field = "Qp"
"#;

#[test]
fn parses_every_field_form() {
    let cfg = RunConfig::from_toml(SG3).unwrap();
    assert_eq!(cfg.group, GroupConfig::Cyclic(7));
    assert_eq!(cfg.action, ActionConfig::Power(2));
    assert_eq!(cfg.field, FieldConfig::Named(FieldName::Qp));
    let cfg = RunConfig::from_toml("p = 5\ngroup = { metacyclic = [3, 2, 2] }\nfield = { unramified = 2 }\n").unwrap();
    assert_eq!(cfg.field, FieldConfig::Unramified(UnramifiedField { unramified: 2 }));
    assert_eq!(cfg.action, ActionConfig::Trivial);
    let cfg = RunConfig::from_toml(
        "p = 3\ngroup = { abelian = [2, 2] }\nfield = { conductor = 3, subgroup_generators = [4] }\n[verify]\nskew = true\n[skew]\nseed = 9\n[[provider.overrides]]\ncharacter = 1\ns_eta = 1\n",
    )
    .unwrap();
    assert!(cfg.verify.skew && cfg.verify.idempotents);
    assert_eq!(cfg.skew.seed, 9);
    assert_eq!(cfg.provider.overrides, vec![Override { character: 1, s_eta: 1 }]);
    assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
}

#[test]
fn rejects_bad_configs() {
    let bad = [
        "p = 3\ngroup = { cyclic = 7 }\ncolour = 1\n",
        "p = 3\ngroup = { cyclic = 7 }\n[verify]\nidempotent = true\n",
        "p = 3\ngroup = { dihedral = 7 }\n",
        "p = 3\ngroup = { cyclic = 7 }\nfield = { conductor = 9, generators = [2] }\n",
        "p = 3\ngroup = { cyclic = 7 }\nfield = \"Q3\"\n",
        "group = { cyclic = 7 }\n",
        "p = 3\ngroup = { cyclic = 7 }\n[[provider.overrides]]\ncharacter = 1\ns_eta = 0\n",
    ];
    for text in bad {
        let err = RunConfig::from_toml(text).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{text}: {err:?}");
        assert_eq!(exit_code(&err), 2);
    }
    let err = RunConfig::from_toml("p = 2\ngroup = { cyclic = 3 }\n").unwrap_err();
    assert_eq!(err, Error::InvalidPrime(2));
    assert_eq!(exit_code(&err), 2);
}

#[test]
fn sophie_germain_three() {
    let (cfg, m) = sophie_germain_config(3).unwrap();
    assert_eq!(m, 2);
    assert_eq!(cfg, RunConfig::from_toml(SG3).unwrap());
    let r = sophie_germain(3, &RunOptions::default()).unwrap();
    assert!(r.passed, "{:#?}", r.failures());
    assert_eq!(r.components.len(), 2);
    let sg = r.sophie_germain.as_ref().unwrap();
    assert_eq!((sg.order_of_p, sg.claimed_order), (6, 6));
    assert!(!r.discrepancies[0].flagged);
    assert!(r.checks.iter().any(|c| c.suite == "idempotents"));
    assert!(r.checks.iter().any(|c| c.suite == "base-change"));
}

#[test]
fn sophie_germain_five_flags_the_degree() {
    let r = sophie_germain(5, &RunOptions::default()).unwrap();
    assert!(r.passed, "{:#?}", r.failures());
    assert_eq!(r.components.len(), 3);
    assert_eq!(r.sophie_germain.as_ref().unwrap().m, 3);
    assert!(r.discrepancies[0].flagged);
    assert_eq!(r.discrepancies[0].computed, 5);
}

#[test]
fn sophie_germain_rejections() {
    assert_eq!(sophie_germain_config(7).unwrap_err(), Error::NotSophieGermain(7));
    assert_eq!(sophie_germain_config(2).unwrap_err(), Error::InvalidPrime(2));
    assert_eq!(sophie_germain_config(9).unwrap_err(), Error::InvalidPrime(9));
}

#[test]
fn c2_over_q3() {
    let cfg = RunConfig::from_toml("p = 3\ngroup = { cyclic = 2 }\n").unwrap();
    let r = run_decompose(&cfg, &RunOptions::default()).unwrap();
    assert!(r.passed);
    assert_eq!(r.components.len(), 2);
    for c in &r.components {
        assert_eq!((c.w_chi, c.v_chi, c.n_chi, c.s_chi, c.relative.degree), (1, 1, 1, 1, 1));
        assert!(c.covered_by_prior_work);
    }
}

#[test]
fn frobenius_group_over_q3() {
    let cfg = RunConfig::from_toml("p = 5\ngroup = { metacyclic = [7, 3, 2] }\n").unwrap();
    let r = run_verify(&cfg, &RunOptions::default()).unwrap();
    assert!(r.passed, "{:#?}", r.failures());
    let cfg = RunConfig::from_toml("p = 3\ngroup = { metacyclic = [7, 3, 2] }\n").unwrap();
    let err = run_decompose(&cfg, &RunOptions::default()).unwrap_err();
    assert!(matches!(err, Error::ProviderMissing { .. }));
    assert_eq!(exit_code(&err), 3);
}

#[test]
fn corrupted_override_fails_verification() {
    let mut cfg = RunConfig::from_toml("p = 5\ngroup = { metacyclic = [7, 3, 2] }\n").unwrap();
    let r = run_decompose(&cfg, &RunOptions::default()).unwrap();
    let big = r.components.iter().find(|c| c.eta_degree == 3).unwrap().representative;
    cfg.provider.overrides.push(Override { character: big, s_eta: 2 });
    let r = run_verify(&cfg, &RunOptions::default()).unwrap();
    assert!(!r.passed);
    assert_eq!(r.exit_code(), 4);
    assert!(r.failures().iter().any(|c| c.name.contains("rule B")));
}

#[test]
fn skew_reports_are_reproducible() {
    let a = skew_check(3, 3, 4, 11).unwrap();
    let b = skew_check(3, 3, 4, 11).unwrap();
    assert!(a.passed);
    assert_eq!(a.to_doc(), b.to_doc());
    assert_eq!(render_human(&a), render_human(&b));
    assert!(skew_check(4, 3, 4, 11).is_err());
}

#[test]
fn timings_only_on_request() {
    let cfg = RunConfig::from_toml(SG3).unwrap();
    let plain = run_decompose(&cfg, &RunOptions::default()).unwrap();
    assert!(!plain.to_doc().contains("timings_ms"));
    let timed = run_decompose(&cfg, &RunOptions { cache: None, timings: true }).unwrap();
    assert!(timed.timings_ms.is_some());
}

#[test]
fn cache_is_used_transparently() {
    let dir = tempfile::tempdir().unwrap();
    let opts = RunOptions {
        cache: Some(TableCache::new(dir.path())),
        timings: false,
    };
    let cfg = RunConfig::from_toml("p = 5\ngroup = { metacyclic = [7, 3, 2] }\n").unwrap();
    let first = run_decompose(&cfg, &opts).unwrap().to_doc();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = run_decompose(&cfg, &opts).unwrap().to_doc();
    assert_eq!(first, second);
    assert_eq!(first, run_decompose(&cfg, &RunOptions::default()).unwrap().to_doc());
}
