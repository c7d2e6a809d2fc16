//! Wedderburn components of `Q^F(H x| Z_p)` from joint orbits of the
//! `gamma`-action and `Gal(F(eta)/F)` on `Irr(H)`.
//!
//! Every field of a run lives in one frame `Q_p(zeta_M)` with
//! `M = lcm(exp H, modulus of F)`, so Galois automorphisms over `F` are the
//! residues in `U_F` and act on character values by reduction mod `exp H`.

mod provider;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith;
use crate::chars::{char_restrict_field, CharTable, Character, TableCache};
use crate::error::{Error, Result};
use crate::fields::{AbelianLocalField, CycFrame, ExtInvariants, FieldSummary, UnitSubgroup};
use crate::group::{FiniteGroup, GammaAction};
use crate::verify::Check;

pub use provider::{LocalIndexProvider, Provenance, SchurData};

/// Group, action, character table and base field, all in one frame.
#[derive(Clone, Debug)]
pub struct Setup {
    group: FiniteGroup,
    action: GammaAction,
    table: CharTable,
    frame: Arc<CycFrame>,
    base: AbelianLocalField,
    gamma_perm: Vec<usize>,
    galois_perms: HashMap<u64, Vec<usize>>,
}

impl Setup {
    pub fn new(group: FiniteGroup, action: GammaAction, base: &AbelianLocalField, cache: Option<&TableCache>) -> Result<Self> {
        let p = base.frame().p();
        if action.p() != p {
            return Err(Error::FrameMismatch(format!(
                "the action is for p = {} but the base field lives over Q_{p}",
                action.p()
            )));
        }
        let table = CharTable::compute_cached(&group, cache)?;
        let m = arith::lcm(group.exponent(), base.frame().modulus());
        let frame = CycFrame::build(p, m)?;
        let base = base.lift_to(&frame)?;
        let gamma_perm = table.gamma_permutation(&action)?;
        let e = table.modulus();
        let mut galois_perms = HashMap::new();
        for &a in base.fixing().elements() {
            if let std::collections::hash_map::Entry::Vacant(slot) = galois_perms.entry(a % e) {
                slot.insert(table.galois_permutation(a)?);
            }
        }
        Ok(Self {
            group,
            action,
            table,
            frame,
            base,
            gamma_perm,
            galois_perms,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &GammaAction {
        &self.action
    }

    pub fn table(&self) -> &CharTable {
        &self.table
    }

    pub fn frame(&self) -> &Arc<CycFrame> {
        &self.frame
    }

    pub fn base(&self) -> &AbelianLocalField {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.frame.p()
    }

    /// Index of `eta o phi^i`.
    pub fn gamma_power(&self, eta: usize, i: u64) -> usize {
        (0..i).fold(eta, |x, _| self.gamma_perm[x])
    }

    /// Index of `sigma_a o eta`, for `a` in `U_F`.
    pub fn galois_image(&self, a: u64, eta: usize) -> usize {
        self.galois_perms[&(a % self.table.modulus())][eta]
    }

    /// `F(eta)` over the base field.
    pub fn value_field(&self, eta: usize) -> Result<AbelianLocalField> {
        char_restrict_field(self.table.get(eta), &self.base)
    }
}

/// The `gamma`-orbit `eta, eta o phi, ...` and its size `w`.
pub fn gamma_orbit(setup: &Setup, eta: usize) -> (Vec<usize>, u64) {
    let mut orbit = vec![eta];
    let mut x = setup.gamma_perm[eta];
    while x != eta {
        orbit.push(x);
        x = setup.gamma_perm[x];
    }
    let w = orbit.len() as u64;
    (orbit, w)
}

/// Minimal `v > 0` with `eta o phi^v = sigma_a o eta` for some `a` in `within`,
/// together with the smallest such `a`.
///
/// `within` must fix the base field from below, i.e. be a subgroup of `U_F`.
pub fn v_tau_compute(setup: &Setup, eta: usize, within: &UnitSubgroup) -> Result<(u64, u64)> {
    let (_, w) = gamma_orbit(setup, eta);
    for i in 1..=w {
        let target = setup.gamma_power(eta, i);
        if let Some(&a) = within.elements().iter().find(|&&a| setup.galois_image(a, eta) == target) {
            return Ok((i, a));
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no Galois witness for character {eta} up to its orbit length {w}"
    )))
}

/// One Wedderburn component, with the fields kept for later verification.
#[derive(Clone, Debug)]
pub struct Component {
    pub report: ComponentReport,
    pub eta: usize,
    pub gamma_orbit: Vec<usize>,
    pub f_eta: AbelianLocalField,
    pub f_chi: AbelianLocalField,
    pub w_field: AbelianLocalField,
    pub tau: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    /// Table index of the canonical representative `eta`.
    pub representative: usize,
    /// Table indices of all `sigma`-twists of `gamma`-twists of `eta`.
    pub orbit: Vec<usize>,
    pub eta_degree: u64,
    pub w_chi: u64,
    pub v_chi: u64,
    /// Smallest residue in the class of `tau_F` modulo `U_{F(eta)}`.
    pub tau_f: u64,
    pub tau_order: u64,
    pub f_eta: FieldSummary,
    pub f_chi: FieldSummary,
    /// Maximal unramified extension of `F_chi` inside `F(eta)`.
    pub w_field: FieldSummary,
    /// `F(eta) / F_chi`.
    pub relative: ExtInvariants,
    pub deg_f_eta_over_f: usize,
    pub deg_f_chi_over_f: usize,
    pub n_eta: u64,
    pub s_eta: u64,
    pub s_eta_provenance: Provenance,
    pub n_chi: u64,
    pub s_chi: u64,
    pub centre_desc: String,
    pub skewfield_desc: String,
    pub maxorder_desc: String,
    /// `F(eta)/F_chi` totally ramified.
    pub covered_by_prior_work: bool,
}

/// Fixing groups of `F_chi` two ways: `U_{F(eta)} <tau>`, and the stabiliser in
/// `U_F` of the `gamma`-orbit sum of `eta`.
pub fn f_chi_routes(setup: &Setup, eta: usize, f_eta: &AbelianLocalField, tau: u64) -> Result<(UnitSubgroup, UnitSubgroup)> {
    let m = setup.frame.modulus();
    let by_tau = f_eta.fixing().join(&UnitSubgroup::generated(m, &[tau]));
    let (orbit, w) = gamma_orbit(setup, eta);
    let chars = setup.table.chars();
    let values = (0..setup.table.classes().len())
        .map(|c| {
            orbit
                .iter()
                .fold(crate::CycElem::zero(setup.table.modulus()), |acc, &i| &acc + chars[i].value(c))
        })
        .collect();
    let sum = Character::new(chars[eta].degree() * w, values);
    let by_sum = sum.stabilizer(setup.base.fixing())?;
    Ok((by_tau, by_sum))
}

/// `F_chi`, failing with [`Error::RouteMismatch`] unless both routes agree.
pub fn f_chi_compute(setup: &Setup, eta: usize, f_eta: &AbelianLocalField, tau: u64) -> Result<AbelianLocalField> {
    let (by_tau, by_sum) = f_chi_routes(setup, eta, f_eta, tau)?;
    if by_tau != by_sum {
        return Err(Error::RouteMismatch(format!(
            "F_chi for character {eta}: <tau> gives fixing group of order {}, orbit sums give order {}",
            by_tau.order(),
            by_sum.order()
        )));
    }
    AbelianLocalField::fixed_field(&setup.frame, by_tau)
}

/// Recomputes both `F_chi` routes for a finished component.
pub fn f_chi_route_check(setup: &Setup, c: &Component) -> Result<Check> {
    let (by_tau, by_sum) = f_chi_routes(setup, c.eta, &c.f_eta, c.tau)?;
    Ok(Check::holds(
        "invariants",
        format!("[{}] F_chi: fixed field of <tau_F> = field of orbit sums", c.eta),
        by_tau == by_sum,
        format!("fixing groups of order {} and {}", by_tau.order(), by_sum.order()),
    ))
}

/// Joint orbits of `phi` and `U_F` on `Irr(H)`, each sorted, ordered by minimum.
pub fn joint_orbits(setup: &Setup) -> Vec<Vec<usize>> {
    let r = setup.table.len();
    let gens = setup.base.fixing().generators().to_vec();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let images = std::iter::once(setup.gamma_perm[x]).chain(gens.iter().map(|&a| setup.galois_image(a, x)));
            for y in images {
                if !std::mem::replace(&mut seen[y], true) {
                    orbit.push(y);
                    stack.push(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// All components, in canonical order.
pub fn enumerate_components(setup: &Setup, provider: &LocalIndexProvider) -> Result<Vec<Component>> {
    joint_orbits(setup)
        .into_iter()
        .map(|orbit| component_invariants(setup, provider, orbit))
        .collect()
}

/// Builds the component whose joint orbit is `orbit` (representative = its minimum).
pub fn component_invariants(setup: &Setup, provider: &LocalIndexProvider, orbit: Vec<usize>) -> Result<Component> {
    let eta = orbit[0];
    let chi = setup.table.get(eta);
    let (gamma_orbit, w) = gamma_orbit(setup, eta);
    let f_eta = setup.value_field(eta)?;
    let (v, a) = v_tau_compute(setup, eta, setup.base.fixing())?;
    let tau = f_eta.fixing().coset_min(a);
    let f_chi = f_chi_compute(setup, eta, &f_eta, tau)?;
    let w_field = f_chi.max_unramified_sub(&f_eta)?;
    let relative = f_chi.ext_invariants(&f_eta)?;
    let schur = provider.provide(setup, eta, &orbit)?;
    let deg_rel = relative.degree as u64;
    let n_chi = schur.n_eta * v;
    let s_chi = schur.s_eta * deg_rel;
    let tau_order = f_eta.fixing().quotient_order(tau);

    let report = ComponentReport {
        representative: eta,
        orbit,
        eta_degree: chi.degree(),
        w_chi: w,
        v_chi: v,
        tau_f: tau,
        tau_order,
        f_eta: f_eta.summary(),
        f_chi: f_chi.summary(),
        w_field: w_field.summary(),
        relative,
        deg_f_eta_over_f: f_eta.degree() / setup.base.degree(),
        deg_f_chi_over_f: f_chi.degree() / setup.base.degree(),
        n_eta: schur.n_eta,
        s_eta: schur.s_eta,
        s_eta_provenance: schur.provenance,
        n_chi,
        s_chi,
        centre_desc: format!(
            "Q^(F_chi)((Gamma'')^{}) with F_chi of degree {} over F (e = {}, f = {})",
            w / v,
            f_chi.degree() / setup.base.degree(),
            f_chi.ramification_index(),
            f_chi.inertia_degree()
        ),
        skewfield_desc: format!(
            "Quot(O_D[[X; tau_F, tau_F - id]]), D of Schur index {} over F(eta) (e = {}, f = {} over F_chi), tau_F = [{}] of order {}",
            schur.s_eta, relative.e, relative.f, tau, tau_order
        ),
        maxorder_desc: format!(
            "maximal orders are conjugate to M_{n_chi}(Lambda_D), Lambda_D the unique maximal order of D_(F,chi) (index {s_chi})"
        ),
        covered_by_prior_work: relative.e == relative.degree,
    };
    Ok(Component {
        report,
        eta,
        gamma_orbit,
        f_eta,
        f_chi,
        w_field,
        tau,
    })
}

/// Integer identities that must hold for every component, plus provider consistency.
pub fn component_checks(setup: &Setup, c: &Component) -> Vec<Check> {
    const S: &str = "invariants";
    let r = &c.report;
    let id = r.representative;
    let n0_order = setup.action.order();
    let mut out = vec![
        Check::holds(S, format!("[{id}] v divides w"), r.w_chi.is_multiple_of(r.v_chi), format!("v = {}, w = {}", r.v_chi, r.w_chi)),
        Check::holds(
            S,
            format!("[{id}] w is a power of p dividing p^n0"),
            n0_order.is_multiple_of(r.w_chi) && arith::p_power_log(r.w_chi, setup.p()).is_some(),
            format!("w = {}, ord(phi) = {n0_order}", r.w_chi),
        ),
        Check::compare(S, format!("[{id}] (F(eta):F_chi) = w/v"), r.w_chi / r.v_chi, r.relative.degree),
        Check::compare(S, format!("[{id}] order of tau_F"), r.w_chi / r.v_chi, r.tau_order),
        Check::compare(S, format!("[{id}] n_eta * s_eta = eta(1)"), r.eta_degree, r.n_eta * r.s_eta),
        Check::compare(S, format!("[{id}] n_chi * s_chi = eta(1) * w"), r.eta_degree * r.w_chi, r.n_chi * r.s_chi),
        Check::compare(
            S,
            format!("[{id}] n^2 s^2 (F_chi:F) = eta(1)^2 w^2 (F_chi:F)"),
            (r.eta_degree * r.w_chi).pow(2) * r.deg_f_chi_over_f as u64,
            (r.n_chi * r.s_chi).pow(2) * r.deg_f_chi_over_f as u64,
        ),
        Check::compare(
            S,
            format!("[{id}] v (F(eta):F) = w (F_chi:F)"),
            r.w_chi * r.deg_f_chi_over_f as u64,
            r.v_chi * r.deg_f_eta_over_f as u64,
        ),
        Check::compare(
            S,
            format!("[{id}] orbit size = v (F(eta):F)"),
            r.v_chi * r.deg_f_eta_over_f as u64,
            r.orbit.len(),
        ),
    ];
    if let Some(rule) = LocalIndexProvider::rule_value(setup, c.eta) {
        out.push(Check::compare(S, format!("[{id}] s_eta agrees with {}", rule.1.label()), rule.0, r.s_eta));
    }
    out
}

/// Partition and dimension sum over all components, and commuting actions.
pub fn global_checks(setup: &Setup, comps: &[Component]) -> Vec<Check> {
    const S: &str = "invariants";
    let r = setup.table.len();
    let mut hits = vec![0usize; r];
    for c in comps {
        for &i in &c.report.orbit {
            hits[i] += 1;
        }
    }
    let dim: u64 = comps
        .iter()
        .map(|c| c.report.v_chi * c.report.eta_degree.pow(2) * c.report.deg_f_eta_over_f as u64)
        .sum();
    let commute = setup.base.fixing().generators().iter().all(|&a| {
        (0..r).all(|i| setup.galois_image(a, setup.gamma_perm[i]) == setup.gamma_perm[setup.galois_image(a, i)])
    });
    vec![
        Check::holds(S, "components partition Irr(H)", hits.iter().all(|&h| h == 1), format!("{hits:?}")),
        Check::compare(S, "sum of v eta(1)^2 (F(eta):F) = |H|", setup.group.order(), dim),
        Check::holds(S, "Galois and gamma twists commute", commute, "some twist pair fails to commute"),
    ]
}

/// One base-change comparison for an intermediate field `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChange {
    pub representative: usize,
    /// `(E : F_chi)`.
    pub degree: usize,
    pub v_e: u64,
    pub tau_e: u64,
    pub expected_v: u64,
    pub expected_tau: u64,
}

/// Recomputes `v` and `tau` over `E` and compares with `v_F (E:F_chi)` and `tau_F^(E:F_chi)`.
pub fn base_change_check(setup: &Setup, c: &Component, e_field: &AbelianLocalField) -> Result<BaseChange> {
    let d = c.f_chi.ext_invariants(e_field)?.degree;
    e_field.ext_invariants(&c.f_eta)?;
    let (v_e, a) = v_tau_compute(setup, c.eta, e_field.fixing())?;
    let u_eta = c.f_eta.fixing();
    let m = setup.frame.modulus();
    let rec = BaseChange {
        representative: c.eta,
        degree: d,
        v_e,
        tau_e: u_eta.coset_min(a),
        expected_v: c.report.v_chi * d as u64,
        expected_tau: u_eta.coset_min(arith::pow_mod(c.tau, d as u64, m)),
    };
    if rec.v_e != rec.expected_v || rec.tau_e != rec.expected_tau {
        return Err(Error::LawViolation(format!(
            "component {}, (E:F_chi) = {d}: v_E = {} (expected {}), tau_E = [{}] (expected [{}])",
            c.eta, rec.v_e, rec.expected_v, rec.tau_e, rec.expected_tau
        )));
    }
    Ok(rec)
}

/// Base change over every field between `F_chi` and `F(eta)`.
pub fn base_change_all(setup: &Setup, c: &Component) -> Result<Vec<BaseChange>> {
    c.f_chi
        .cyclic_intermediates(&c.f_eta, c.tau)?
        .iter()
        .map(|(_, e)| base_change_check(setup, c, e))
        .collect()
}
