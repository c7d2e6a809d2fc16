//! Run configurations, the pipeline driver and run reports.

mod config;
mod human;
mod report;
#[cfg(test)]
mod tests;

use std::time::Instant;

pub use config::{
    ActionConfig, FieldConfig, FieldName, FixedField, Format, GroupConfig, Override, ProviderConfig, RunConfig,
    SkewConfig, UnramifiedField, VerifyConfig,
};
pub use human::render_human;
pub use report::{Discrepancy, GroupSummary, RunReport, SophieGermainSummary};

use crate::arith;
use crate::chars::TableCache;
use crate::decompose::{self, Component, Setup};
use crate::error::{Error, Result};
use crate::idem;
use crate::skew;
use crate::verify::Check;

/// Settings that do not belong in a config document.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cache: Option<TableCache>,
    /// Record wall-clock timings; off by default so reports are reproducible byte for byte.
    pub timings: bool,
}

struct Clock {
    on: bool,
    start: Instant,
    laps: Vec<(String, u64)>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Self {
            on,
            start: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.on {
            let ms = self.start.elapsed().as_millis() as u64;
            self.laps.push((name.into(), ms));
            self.start = Instant::now();
        }
    }

    fn finish(self, report: &mut RunReport) {
        if self.on {
            report.timings_ms = Some(self.laps.into_iter().collect());
        }
    }
}

/// Exit status for an error: 2 for bad input, 3 for a missing Schur index,
/// 4 for any failed computation or verification.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidPrime(_)
        | Error::NotASubgroup(_)
        | Error::NotSubfield(_)
        | Error::InvalidPresentation(_)
        | Error::InvalidTable(_)
        | Error::NotAutomorphism(_)
        | Error::OrderNotPPower { .. }
        | Error::CapExceeded { .. }
        | Error::NotSophieGermain(_)
        | Error::InvalidRing(_)
        | Error::Config(_)
        | Error::Cache(_) => 2,
        Error::ProviderMissing { .. } => 3,
        _ => 4,
    }
}

struct Pipeline {
    setup: Setup,
    components: Vec<Component>,
}

fn pipeline(cfg: &RunConfig, opts: &RunOptions, report: &mut RunReport, clock: &mut Clock) -> Result<Pipeline> {
    cfg.validate()?;
    let group = cfg.build_group()?;
    let action = cfg.build_action(&group)?;
    let base = cfg.build_field()?;
    let provider = cfg.provider();
    let setup = Setup::new(group, action, &base, opts.cache.as_ref())?;
    clock.lap("characters");
    report.group = Some(GroupSummary::of(&setup));
    report.base_field = Some(setup.base().summary());
    report.characters = setup.table().chars().to_vec();
    let components = decompose::enumerate_components(&setup, &provider)?;
    for c in &components {
        report.checks.extend(decompose::component_checks(&setup, c));
        report.checks.push(decompose::f_chi_route_check(&setup, c)?);
    }
    report.checks.extend(decompose::global_checks(&setup, &components));
    report.components = components.iter().map(|c| c.report.clone()).collect();
    clock.lap("components");
    Ok(Pipeline { setup, components })
}

fn base_change_suite(pl: &Pipeline, report: &mut RunReport) -> Result<()> {
    for c in &pl.components {
        let fields = c.f_chi.cyclic_intermediates(&c.f_eta, c.tau)?;
        for (_, e) in &fields {
            let name = |d: usize| format!("[{}] base change to (E:F_chi) = {d}", c.eta);
            match decompose::base_change_check(&pl.setup, c, e) {
                Ok(rec) => {
                    report.checks.push(Check::compare(
                        "base-change",
                        name(rec.degree),
                        format!("v = {}, tau = [{}]", rec.expected_v, rec.expected_tau),
                        format!("v = {}, tau = [{}]", rec.v_e, rec.tau_e),
                    ));
                    report.base_change.push(rec);
                }
                Err(Error::LawViolation(msg)) => {
                    let d = c.f_chi.ext_invariants(e)?.degree;
                    report.checks.push(Check::holds("base-change", name(d), false, msg));
                }
                Err(err) => return Err(err),
            }
        }
    }
    Ok(())
}

fn idempotent_suite(pl: &Pipeline, budget: usize, report: &mut RunReport) -> Result<()> {
    let order = pl.setup.group().order();
    if order > budget {
        report.notes.push(format!("idempotent suite skipped: |H| = {order} exceeds the budget {budget}"));
        return Ok(());
    }
    let mut chis = Vec::new();
    for c in &pl.components {
        let (eps, checks) = idem::component_suite(&pl.setup, c)?;
        report.checks.extend(checks);
        chis.push((c.eta, eps.eps_chi));
    }
    let refs: Vec<(usize, &idem::GroupAlgebraElem)> = chis.iter().map(|(i, x)| (*i, x)).collect();
    report.checks.extend(idem::global_suite(&pl.setup, &refs));
    Ok(())
}

fn skew_suite(cfg: &SkewConfig, p: u64, report: &mut RunReport) -> Result<()> {
    let runs = skew::skew_suite(p, cfg.k, cfg.d, cfg.seed, cfg.samples, &cfg.residue_degrees)?;
    for run in &runs {
        report.checks.extend(run.checks.iter().map(|c| Check {
            name: format!("[f = {}] {}", run.residue_degree, c.name),
            ..c.clone()
        }));
    }
    report.skew = runs;
    Ok(())
}

/// Decomposition plus the structural invariant checks.
pub fn run_decompose(cfg: &RunConfig, opts: &RunOptions) -> Result<RunReport> {
    let mut report = RunReport::new("decompose", Some(cfg.clone()));
    let mut clock = Clock::new(opts.timings);
    pipeline(cfg, opts, &mut report, &mut clock)?;
    report.finish();
    clock.finish(&mut report);
    Ok(report)
}

/// Decomposition plus every suite enabled in `cfg.verify`.
pub fn run_verify(cfg: &RunConfig, opts: &RunOptions) -> Result<RunReport> {
    let mut report = RunReport::new("verify", Some(cfg.clone()));
    let mut clock = Clock::new(opts.timings);
    let pl = pipeline(cfg, opts, &mut report, &mut clock)?;
    if cfg.verify.base_change {
        base_change_suite(&pl, &mut report)?;
        clock.lap("base-change");
    }
    if cfg.verify.idempotents {
        idempotent_suite(&pl, cfg.verify.idempotent_budget, &mut report)?;
        clock.lap("idempotents");
    }
    if cfg.verify.skew {
        skew_suite(&cfg.skew, cfg.p, &mut report)?;
        clock.lap("skew");
    }
    report.finish();
    clock.finish(&mut report);
    Ok(report)
}

/// The generating config of the Sophie Germain family and the smallest `m`:
/// `H = C_(2p+1)`, `phi = (h -> h^m)` with `m != 1`, `m^p = 1 mod 2p+1`, `F = Q_p`.
pub fn sophie_germain_config(p: u64) -> Result<(RunConfig, u64)> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let q = 2 * p + 1;
    if !arith::is_prime(q) {
        return Err(Error::NotSophieGermain(p));
    }
    let m = (2..q)
        .find(|&m| arith::pow_mod(m, p, q) == 1)
        .ok_or_else(|| Error::InternalInconsistency(format!("no element of order {p} modulo {q}")))?;
    let mut cfg = RunConfig::new(p, GroupConfig::Cyclic(q));
    cfg.action = ActionConfig::Power(m);
    Ok((cfg, m))
}

/// Runs the Sophie Germain member for `p`, with base change and (within budget)
/// the idempotent suite, and the family's structural assertions.
pub fn sophie_germain(p: u64, opts: &RunOptions) -> Result<RunReport> {
    let (cfg, m) = sophie_germain_config(p)?;
    let mut report = run_verify(&cfg, opts)?;
    report.command = "sophie-germain".into();
    let q = 2 * p + 1;
    let order = arith::mult_order(p % q, q).expect("p is a unit modulo 2p+1");
    const S: &str = "sophie-germain";
    let trivial = report.characters.iter().position(|c| c.is_trivial());
    let expected_count = 1 + 2 * p / arith::lcm(p, order);
    let found = report.components.len();
    report.checks.push(Check::compare(S, "number of components", expected_count, found));
    let mut extra = Vec::new();
    for c in report.components.iter().filter(|c| Some(c.representative) != trivial) {
        let id = c.representative;
        let rel = &c.relative;
        extra.extend([
            Check::compare(S, format!("[{id}] w = p"), p, c.w_chi),
            Check::compare(S, format!("[{id}] v = 1"), 1, c.v_chi),
            Check::compare(S, format!("[{id}] (F(eta):F_chi) = p"), p, rel.degree),
            Check::compare(S, format!("[{id}] F(eta)/F_chi unramified"), 1, rel.e),
            Check::compare(S, format!("[{id}] n = 1"), 1, c.n_chi),
            Check::compare(S, format!("[{id}] s = p"), p, c.s_chi),
        ]);
    }
    report.checks.extend(extra);
    report.discrepancies.push(Discrepancy {
        name: "degree of Q_p(zeta_(2p+1)) over Q_p".into(),
        claimed: 2 * p,
        computed: order,
        flagged: order != 2 * p,
    });
    report.sophie_germain = Some(SophieGermainSummary {
        p,
        modulus: q,
        m,
        order_of_p: order,
        claimed_order: 2 * p,
    });
    report.finish();
    Ok(report)
}

/// The skew-series laws on their own.
pub fn skew_check(p: u64, k: u32, d: usize, seed: u64) -> Result<RunReport> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let mut report = RunReport::new("skew-check", None);
    let cfg = SkewConfig {
        k,
        d,
        seed,
        ..SkewConfig::default()
    };
    skew_suite(&cfg, p, &mut report)?;
    report.finish();
    Ok(report)
}
