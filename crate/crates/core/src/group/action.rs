use serde::Serialize;

use super::FiniteGroup;
use crate::arith;
use crate::error::{Error, Result};

/// Conjugation by a topological generator `gamma` of `Gamma = Z_p`, as an
/// automorphism `phi` of `H` of `p`-power order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaAction {
    p: u64,
    phi: Vec<usize>,
    order: u64,
    n0: u32,
}

impl GammaAction {
    pub fn new(group: &FiniteGroup, p: u64, phi: Vec<usize>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let n = group.order();
        if phi.len() != n {
            return Err(Error::NotAutomorphism(format!("map has {} entries for a group of order {n}", phi.len())));
        }
        let mut hit = vec![false; n];
        for &x in &phi {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return Err(Error::NotAutomorphism("map is not a bijection".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if phi[group.mul(a, b)] != group.mul(phi[a], phi[b]) {
                    return Err(Error::NotAutomorphism(format!("phi({a}*{b}) != phi({a})*phi({b})")));
                }
            }
        }
        let mut order = 1u64;
        let mut cur = phi.clone();
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| phi[x]).collect();
            order += 1;
        }
        let n0 = arith::p_power_log(order, p).ok_or(Error::OrderNotPPower { order, p })?;
        Ok(Self { p, phi, order, n0 })
    }

    pub fn trivial(group: &FiniteGroup, p: u64) -> Result<Self> {
        Self::new(group, p, (0..group.order()).collect())
    }

    /// `h -> h^m`; an automorphism only when `H` is abelian and `gcd(m, exp H) = 1`.
    pub fn power_map(group: &FiniteGroup, p: u64, m: u64) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::NotAutomorphism("power maps are only used on abelian groups".into()));
        }
        let phi = (0..group.order()).map(|h| group.pow(h, m)).collect();
        Self::new(group, p, phi)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn apply(&self, h: usize) -> usize {
        self.phi[h]
    }

    pub fn map(&self) -> &[usize] {
        &self.phi
    }

    /// Order of `phi`, which is `p^n0`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Minimal `n0` with `phi^(p^n0) = id`, i.e. `Gamma^(p^n0)` is central.
    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}
