use std::fmt::Write;

use super::report::RunReport;
use crate::fields::FieldSummary;

fn field(f: &FieldSummary) -> String {
    format!("deg {} (e {}, f {})", f.degree, f.e, f.f)
}

/// Plain-text tables for terminals.
pub fn render_human(r: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} {}", r.tool, r.version, r.command);
    if let Some(cfg) = &r.config {
        let _ = writeln!(s, "p = {}, group = {:?}, action = {:?}, field = {:?}", cfg.p, cfg.group, cfg.action, cfg.field);
    }
    if let Some(g) = &r.group {
        let _ = writeln!(
            s,
            "|H| = {}, exponent {}, {} classes, {}, phi of order {}, frame Q_p(zeta_{})",
            g.order,
            g.exponent,
            g.classes,
            if g.abelian { "abelian" } else { "nonabelian" },
            g.action_order,
            g.frame_modulus
        );
    }
    if let Some(f) = &r.base_field {
        let _ = writeln!(s, "F over Q_p: {}", field(f));
    }
    if let Some(sg) = &r.sophie_germain {
        let _ = writeln!(
            s,
            "Sophie Germain p = {}: H = C_{}, phi = h -> h^{}, ord(p mod {}) = {} (claimed {})",
            sg.p, sg.modulus, sg.m, sg.modulus, sg.order_of_p, sg.claimed_order
        );
    }
    if !r.components.is_empty() {
        let _ = writeln!(s, "\ncomponents: {}", r.components.len());
        let _ = writeln!(
            s,
            "{:>4} {:>5} {:>6} {:>4} {:>3} {:>5} {:>20} {:>20} {:>16} {:>3} {:>3}  prior",
            "rep", "orbit", "eta(1)", "w", "v", "tau", "F(eta)/Q_p", "F_chi/Q_p", "F(eta)/F_chi", "n", "s"
        );
        for c in &r.components {
            let rel = format!("deg {} (e {}, f {})", c.relative.degree, c.relative.e, c.relative.f);
            let _ = writeln!(
                s,
                "{:>4} {:>5} {:>6} {:>4} {:>3} {:>5} {:>20} {:>20} {:>16} {:>3} {:>3}  {}",
                c.representative,
                c.orbit.len(),
                c.eta_degree,
                c.w_chi,
                c.v_chi,
                c.tau_f,
                field(&c.f_eta),
                field(&c.f_chi),
                rel,
                c.n_chi,
                c.s_chi,
                if c.covered_by_prior_work { "yes" } else { "no" }
            );
        }
        for c in &r.components {
            let _ = writeln!(s, "  [{}] s_eta = {} ({})", c.representative, c.s_eta, c.s_eta_provenance.label());
            let _ = writeln!(s, "      centre:  {}", c.centre_desc);
            let _ = writeln!(s, "      skew:    {}", c.skewfield_desc);
            let _ = writeln!(s, "      orders:  {}", c.maxorder_desc);
        }
    }
    if !r.base_change.is_empty() {
        let _ = writeln!(s, "\nbase change: {} intermediate fields", r.base_change.len());
    }
    for run in &r.skew {
        let _ = writeln!(
            s,
            "\nskew series p = {}, k = {}, d = {}, f = {}, tau of order {}, {} coefficients, seed {}, {} samples, {} non-units skipped",
            run.p,
            run.k,
            run.d,
            run.residue_degree,
            run.tau_order,
            run.stored_coefficients,
            run.seed,
            run.samples,
            run.non_units_skipped
        );
    }
    for d in &r.discrepancies {
        let _ = writeln!(
            s,
            "\ndiscrepancy {}: {}: claimed {}, computed {}",
            if d.flagged { "FLAGGED" } else { "none" },
            d.name,
            d.claimed,
            d.computed
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "\nchecks: {} passed, {} failed", r.checks_passed, r.checks_failed);
    for c in r.failures() {
        let _ = writeln!(s, "  FAIL {} {}: expected {}, got {}", c.suite, c.name, c.expected, c.actual);
    }
    if let Some(t) = &r.timings_ms {
        for (k, v) in t {
            let _ = writeln!(s, "time {k}: {v} ms");
        }
    }
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}
