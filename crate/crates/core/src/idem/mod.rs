//! Central idempotents in `Q(zeta_e)[H]`, `e = exp(H)`, and the identities
//! relating them to the decomposition.
//!
//! Coefficients of every idempotent built here lie in `Q(zeta_e)`, so the
//! group algebra is kept at that modulus; a frame automorphism `a` acts
//! through `a mod e`.

use std::ops::{Add, Sub};

use crate::cyclo::Accumulator;
use crate::decompose::{Component, Setup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GammaAction};
use crate::verify::Check;
use crate::{CycElem, CycMatrix, Rational};

/// Default largest `|H|` for which the idempotent suite runs.
pub const DEFAULT_IDEMPOTENT_BUDGET: usize = 32;

/// `sum_h c_h h`, one coefficient per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    modulus: u64,
    coeffs: Vec<CycElem>,
}

impl GroupAlgebraElem {
    pub fn zero(order: usize, modulus: u64) -> Self {
        Self {
            modulus,
            coeffs: vec![CycElem::zero(modulus); order],
        }
    }

    pub fn one(order: usize, modulus: u64) -> Self {
        Self::basis(order, modulus, 0)
    }

    pub fn basis(order: usize, modulus: u64, h: usize) -> Self {
        let mut x = Self::zero(order, modulus);
        x.coeffs[h] = CycElem::one(modulus);
        x
    }

    pub fn from_coeffs(modulus: u64, coeffs: Vec<CycElem>) -> Result<Self> {
        let coeffs = coeffs.into_iter().map(|c| c.embed(modulus)).collect::<Result<_>>()?;
        Ok(Self { modulus, coeffs })
    }

    pub fn coeffs(&self) -> &[CycElem] {
        &self.coeffs
    }

    pub fn coeff(&self, h: usize) -> &CycElem {
        &self.coeffs[h]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycElem::is_zero)
    }

    /// Product in the group algebra.
    pub fn mul(&self, other: &Self, group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut acc: Vec<Accumulator<Rational>> = (0..n).map(|_| Accumulator::new(self.modulus)).collect();
        for (g, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (h, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    acc[group.mul(g, h)].add_product(x, y);
                }
            }
        }
        Self {
            modulus: self.modulus,
            coeffs: acc.into_iter().map(Accumulator::finish).collect(),
        }
    }

    /// Applies `sigma_a` to every coefficient.
    pub fn galois(&self, a: u64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.galois(a % self.modulus)).collect::<Result<_>>()?;
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Applies `phi` to the group elements.
    pub fn twist(&self, action: &GammaAction) -> Self {
        let mut coeffs = vec![CycElem::zero(self.modulus); self.coeffs.len()];
        for (h, c) in self.coeffs.iter().enumerate() {
            coeffs[action.apply(h)] = c.clone();
        }
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// `h x = x h` for every `h`, i.e. `x_{h^-1 k} = x_{k h^-1}`.
    pub fn is_central(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|h| {
            let hi = group.inv(h);
            (0..group.order()).all(|k| self.coeffs[group.mul(hi, k)] == self.coeffs[group.mul(k, hi)])
        })
    }

    /// The matrix of `y -> y x`: row `g` holds the coefficients of `g x`.
    pub fn right_mult_matrix(&self, group: &FiniteGroup) -> CycMatrix {
        CycMatrix::from_fn(group.order(), group.order(), self.modulus, |g, h| {
            self.coeffs[group.mul(group.inv(g), h)].clone()
        })
        .expect("coefficients share one modulus")
    }
}

impl Add for &GroupAlgebraElem {
    type Output = GroupAlgebraElem;

    fn add(self, rhs: Self) -> GroupAlgebraElem {
        GroupAlgebraElem {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &GroupAlgebraElem {
    type Output = GroupAlgebraElem;

    fn sub(self, rhs: Self) -> GroupAlgebraElem {
        GroupAlgebraElem {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `e(eta) = eta(1)/|H| sum_h eta(h^-1) h` for table index `eta`.
pub fn build_e(setup: &Setup, eta: usize) -> GroupAlgebraElem {
    let group = setup.group();
    let table = setup.table();
    let n = table.modulus();
    let scale = Rational::new((table.get(eta).degree() as i64).into(), (group.order() as i64).into());
    let coeffs = (0..group.order())
        .map(|h| table.value_at(eta, group.inv(h)).scale(&scale))
        .collect();
    GroupAlgebraElem { modulus: n, coeffs }
}

/// Sum of `e(sigma_a eta)` over the distinct twists by `a` in `within`.
fn orbit_idempotent(setup: &Setup, eta: usize, within: &[u64]) -> GroupAlgebraElem {
    let mut twists: Vec<usize> = within.iter().map(|&a| setup.galois_image(a, eta)).collect();
    twists.sort_unstable();
    twists.dedup();
    let n = setup.group().order();
    twists
        .iter()
        .fold(GroupAlgebraElem::zero(n, setup.table().modulus()), |acc, &j| &acc + &build_e(setup, j))
}

/// `eps_F(eta) = sum_{sigma in Gal(F(eta)/F)} e(sigma eta)`.
pub fn build_eps_f(setup: &Setup, eta: usize) -> GroupAlgebraElem {
    orbit_idempotent(setup, eta, setup.base().fixing().elements())
}

/// Residues representing `Gal(W/F)`, one per coset of `U_W` in `U_F`.
pub fn coset_reps(setup: &Setup, c: &Component) -> Vec<u64> {
    let mut reps: Vec<u64> = setup
        .base()
        .fixing()
        .elements()
        .iter()
        .map(|&a| c.w_field.fixing().coset_min(a))
        .collect();
    reps.sort_unstable();
    reps.dedup();
    reps
}

/// The idempotents of one component.
#[derive(Clone, Debug)]
pub struct Epsilons {
    /// `eps_F(eta o phi^i)` for `i < v`.
    pub eps_f: Vec<GroupAlgebraElem>,
    /// `eps_W(eta o phi^i)` for `i < v`.
    pub eps_w: Vec<GroupAlgebraElem>,
    pub eps_chi: GroupAlgebraElem,
}

/// Builds `eps_{F,chi}` as `sum_i eps_F(eta_i)` and as `sum_i sum_psi psi(eps_W(eta_i))`.
pub fn build_epsilons(setup: &Setup, c: &Component) -> Result<Epsilons> {
    let v = c.report.v_chi as usize;
    let n = setup.group().order();
    let e = setup.table().modulus();
    let etas: Vec<usize> = c.gamma_orbit[..v].to_vec();
    let eps_f: Vec<GroupAlgebraElem> = etas.iter().map(|&i| build_eps_f(setup, i)).collect();
    let eps_w: Vec<GroupAlgebraElem> = etas
        .iter()
        .map(|&i| orbit_idempotent(setup, i, c.w_field.fixing().elements()))
        .collect();
    let route1 = eps_f.iter().fold(GroupAlgebraElem::zero(n, e), |acc, x| &acc + x);
    let mut route2 = GroupAlgebraElem::zero(n, e);
    for psi in coset_reps(setup, c) {
        for x in &eps_w {
            route2 = &route2 + &x.galois(psi)?;
        }
    }
    if route1 != route2 {
        return Err(Error::RouteMismatch(format!(
            "eps_(F,chi) for component {}: sum of eps_F differs from sum of Galois twists of eps_W",
            c.eta
        )));
    }
    Ok(Epsilons {
        eps_f,
        eps_w,
        eps_chi: route1,
    })
}

/// The orthogonality grid `psi(eps_W(eta_i)) psi'(eps_W(eta_i')) = delta delta psi(eps_W(eta_i))`.
pub fn verify_orthogonality(setup: &Setup, c: &Component, eps: &Epsilons) -> Result<Vec<Check>> {
    const S: &str = "idempotents";
    let group = setup.group();
    let mut twisted = Vec::new();
    for psi in coset_reps(setup, c) {
        for (i, x) in eps.eps_w.iter().enumerate() {
            twisted.push(((psi, i), x.galois(psi)?));
        }
    }
    let mut bad = Vec::new();
    for (ka, a) in &twisted {
        for (kb, b) in &twisted {
            let prod = a.mul(b, group);
            let ok = if ka == kb { prod == *a } else { prod.is_zero() };
            if !ok {
                bad.push(format!("(psi={}, i={}) x (psi={}, i={})", ka.0, ka.1, kb.0, kb.1));
            }
        }
    }
    Ok(vec![Check::holds(
        S,
        format!("[{}] orthogonality grid of {} twisted idempotents", c.eta, twisted.len()),
        bad.is_empty(),
        bad.join("; "),
    )])
}

/// `rank(y -> y eps)` against the expected dimension.
pub fn dimension_rank_check(setup: &Setup, eps: &GroupAlgebraElem, expected: usize, what: &str) -> Check {
    let rank = eps.right_mult_matrix(setup.group()).rank();
    Check::compare("idempotents", format!("rank of {what}"), expected, rank)
}

/// Every per-component identity: idempotency, centrality, rationality over
/// `F`, `phi`-invariance, both routes, the grid, and the rank checks.
pub fn component_suite(setup: &Setup, c: &Component) -> Result<(Epsilons, Vec<Check>)> {
    const S: &str = "idempotents";
    let group = setup.group();
    let id = c.eta;
    let mut out = Vec::new();
    let eps = match build_epsilons(setup, c) {
        Ok(eps) => {
            out.push(Check::holds(S, format!("[{id}] eps_(F,chi) routes agree"), true, ""));
            eps
        }
        Err(Error::RouteMismatch(msg)) => {
            out.push(Check::holds(S, format!("[{id}] eps_(F,chi) routes agree"), false, msg));
            return Ok((build_epsilons_unchecked(setup, c)?, out));
        }
        Err(e) => return Err(e),
    };
    let e_eta = build_e(setup, id);
    out.push(Check::holds(S, format!("[{id}] e(eta) idempotent"), e_eta.mul(&e_eta, group) == e_eta, "e^2 != e"));

    let gens = setup.base().fixing().generators();
    let d = c.report.deg_f_eta_over_f;
    let deg2 = (c.report.eta_degree * c.report.eta_degree) as usize;
    let mut rank_sum = 0;
    let mut named: Vec<(String, &GroupAlgebraElem)> =
        eps.eps_f.iter().enumerate().map(|(i, x)| (format!("eps_F(eta_{i})"), x)).collect();
    named.push(("eps_(F,chi)".into(), &eps.eps_chi));
    for (name, x) in &named {
        out.push(Check::holds(S, format!("[{id}] {name} idempotent"), x.mul(x, group) == **x, "x^2 != x"));
        out.push(Check::holds(S, format!("[{id}] {name} central"), x.is_central(group), "fails to commute"));
        let fixed = gens.iter().all(|&a| x.galois(a).as_ref() == Ok(*x));
        out.push(Check::holds(S, format!("[{id}] {name} has coefficients in F"), fixed, "moved by U_F"));
    }
    for (i, x) in eps.eps_f.iter().enumerate() {
        let check = dimension_rank_check(setup, x, d * deg2, &format!("[{id}] eps_F(eta_{i})"));
        rank_sum += check.actual.parse::<usize>().unwrap_or(0);
        out.push(check);
    }
    let chi_check = dimension_rank_check(setup, &eps.eps_chi, c.report.v_chi as usize * d * deg2, &format!("[{id}] eps_(F,chi)"));
    out.push(Check::compare(S, format!("[{id}] rank additivity"), &chi_check.actual, rank_sum));
    out.push(chi_check);
    out.push(Check::holds(
        S,
        format!("[{id}] eps_(F,chi) phi-invariant"),
        eps.eps_chi.twist(setup.action()) == eps.eps_chi,
        "moved by phi",
    ));
    out.extend(verify_orthogonality(setup, c, &eps)?);
    Ok((eps, out))
}

fn build_epsilons_unchecked(setup: &Setup, c: &Component) -> Result<Epsilons> {
    let v = c.report.v_chi as usize;
    let n = setup.group().order();
    let e = setup.table().modulus();
    let eps_f: Vec<GroupAlgebraElem> = c.gamma_orbit[..v].iter().map(|&i| build_eps_f(setup, i)).collect();
    let eps_chi = eps_f.iter().fold(GroupAlgebraElem::zero(n, e), |acc, x| &acc + x);
    Ok(Epsilons {
        eps_f,
        eps_w: Vec::new(),
        eps_chi,
    })
}

/// Completeness and mutual orthogonality of the `eps_(F,chi)`.
pub fn global_suite(setup: &Setup, chis: &[(usize, &GroupAlgebraElem)]) -> Vec<Check> {
    const S: &str = "idempotents";
    let group = setup.group();
    let n = group.order();
    let e = setup.table().modulus();
    let total = chis.iter().fold(GroupAlgebraElem::zero(n, e), |acc, (_, x)| &acc + x);
    let mut bad = Vec::new();
    for (i, (a, x)) in chis.iter().enumerate() {
        for (b, y) in &chis[i + 1..] {
            if !x.mul(y, group).is_zero() || !y.mul(x, group).is_zero() {
                bad.push(format!("{a} x {b}"));
            }
        }
    }
    vec![
        Check::holds(S, "sum of eps_(F,chi) = 1", total == GroupAlgebraElem::one(n, e), "sum differs from 1"),
        Check::holds(S, "eps_(F,chi) pairwise orthogonal", bad.is_empty(), bad.join("; ")),
    ]
}

#[cfg(test)]
mod tests;
