//! Abelian extensions of `Q_p` as fixed fields inside a cyclotomic frame.
//!
//! `Gal(Q_p(zeta_n)/Q_p)` is realised as the subgroup `D` of `(Z/n)^x`
//! consisting of residues congruent to a power of `p` modulo the prime-to-`p`
//! part `n'` of `n` (with arbitrary `p`-part). The inertia group `I` is the
//! kernel of reduction to `(Z/n')^x`. A subfield is recorded by the subgroup
//! `U <= D` fixing it, so degrees, ramification indices and inertia degrees
//! are all subgroup indices.

mod subgroup;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

pub use subgroup::UnitSubgroup;

#[derive(Debug, PartialEq, Eq)]
pub struct CycFrame {
    p: u64,
    n: u64,
    n_prime: u64,
    p_exp: u32,
    decomposition: UnitSubgroup,
    inertia: UnitSubgroup,
    frobenius: u64,
}

impl CycFrame {
    /// Frame `Q_p(zeta_n)` for an odd prime `p`.
    pub fn build(p: u64, n: u64) -> Result<Arc<Self>> {
        if p.is_multiple_of(2) || !arith::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if n == 0 {
            return Err(Error::FrameMismatch("frame modulus must be positive".into()));
        }
        let (n_prime, p_exp) = arith::split_prime_part(n, p);
        let p_part = n / n_prime;
        let p_mod = UnitSubgroup::generated(n_prime, &[p % n_prime]);
        let elements: Vec<u64> = arith::units(n)
            .into_iter()
            .filter(|&a| p_mod.contains(a % n_prime))
            .collect();
        let decomposition = UnitSubgroup::from_elements(n, elements.clone());
        let inertia = UnitSubgroup::from_elements(
            n,
            elements.into_iter().filter(|&a| a % n_prime == 1 % n_prime).collect(),
        );
        let frobenius = arith::crt(p % n_prime, n_prime, 1 % p_part, p_part);
        Ok(Arc::new(Self {
            p,
            n,
            n_prime,
            p_exp,
            decomposition,
            inertia,
            frobenius,
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Prime-to-`p` part of the modulus.
    pub fn tame_modulus(&self) -> u64 {
        self.n_prime
    }

    pub fn p_exponent(&self) -> u32 {
        self.p_exp
    }

    /// `Gal(Q_p(zeta_n)/Q_p)` as a subgroup of `(Z/n)^x`.
    pub fn decomposition(&self) -> &UnitSubgroup {
        &self.decomposition
    }

    pub fn inertia(&self) -> &UnitSubgroup {
        &self.inertia
    }

    /// Representative of the Frobenius class: `p` mod `n'`, `1` mod `p^k`.
    pub fn frobenius(&self) -> u64 {
        self.frobenius
    }

    pub fn subgroup(&self, gens: &[u64]) -> Result<UnitSubgroup> {
        for &g in gens {
            if !self.decomposition.contains(g) {
                return Err(Error::NotASubgroup(format!(
                    "{g} is not in the decomposition group of Q_{}(zeta_{})",
                    self.p, self.n
                )));
            }
        }
        Ok(UnitSubgroup::generated(self.n, gens))
    }
}

/// Degree, ramification index and inertia degree of an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtInvariants {
    pub degree: usize,
    pub e: usize,
    pub f: usize,
}

/// The fixed field of `U <= D` inside a frame.
#[derive(Clone, Debug)]
pub struct AbelianLocalField {
    frame: Arc<CycFrame>,
    fixing: UnitSubgroup,
}

impl AbelianLocalField {
    pub fn fixed_field(frame: &Arc<CycFrame>, fixing: UnitSubgroup) -> Result<Self> {
        if !fixing.is_subgroup_of(&frame.decomposition) {
            return Err(Error::NotASubgroup(format!(
                "subgroup {:?} is not contained in the decomposition group mod {}",
                fixing.generators(),
                frame.n
            )));
        }
        Ok(Self {
            frame: Arc::clone(frame),
            fixing,
        })
    }

    pub fn base(frame: &Arc<CycFrame>) -> Self {
        Self {
            frame: Arc::clone(frame),
            fixing: frame.decomposition.clone(),
        }
    }

    /// The unramified extension of `Q_p` of degree `f`, realised in `Q_p(zeta_{p^f - 1})`.
    pub fn unramified(p: u64, f: u32) -> Result<Self> {
        let n = p.pow(f) - 1;
        let frame = CycFrame::build(p, n)?;
        Self::fixed_field(&frame, UnitSubgroup::trivial(n))
    }

    pub fn frame(&self) -> &Arc<CycFrame> {
        &self.frame
    }

    pub fn fixing(&self) -> &UnitSubgroup {
        &self.fixing
    }

    pub fn degree(&self) -> usize {
        self.frame.decomposition.order() / self.fixing.order()
    }

    pub fn ramification_index(&self) -> usize {
        self.frame.inertia.order() / self.frame.inertia.intersect(&self.fixing).order()
    }

    pub fn inertia_degree(&self) -> usize {
        self.degree() / self.ramification_index()
    }

    pub fn invariants(&self) -> ExtInvariants {
        ExtInvariants {
            degree: self.degree(),
            e: self.ramification_index(),
            f: self.inertia_degree(),
        }
    }

    /// Same field, seen in a frame whose modulus is a multiple of this one.
    pub fn lift_to(&self, frame: &Arc<CycFrame>) -> Result<Self> {
        if frame.p != self.frame.p || !frame.n.is_multiple_of(self.frame.n) {
            return Err(Error::FrameMismatch(format!(
                "cannot move a field from Q_{}(zeta_{}) into Q_{}(zeta_{})",
                self.frame.p, self.frame.n, frame.p, frame.n
            )));
        }
        Self::fixed_field(frame, self.fixing.pull_back(&frame.decomposition))
    }

    fn same_frame(&self, other: &Self) -> Result<()> {
        if self.frame.p != other.frame.p || self.frame.n != other.frame.n {
            return Err(Error::FrameMismatch(format!(
                "Q_{}(zeta_{}) vs Q_{}(zeta_{})",
                self.frame.p, self.frame.n, other.frame.p, other.frame.n
            )));
        }
        Ok(())
    }

    pub fn is_subfield_of(&self, other: &Self) -> bool {
        self.same_frame(other).is_ok() && other.fixing.is_subgroup_of(&self.fixing)
    }

    /// Invariants of `L/K` for `K = self`, `L = top`.
    pub fn ext_invariants(&self, top: &Self) -> Result<ExtInvariants> {
        self.same_frame(top)?;
        let degree = top.fixing.index_in(&self.fixing).ok_or_else(|| {
            Error::NotSubfield(format!("{self} is not contained in {top}"))
        })?;
        let inertia = &self.frame.inertia;
        let e = inertia.intersect(&self.fixing).order() / inertia.intersect(&top.fixing).order();
        Ok(ExtInvariants {
            degree,
            e,
            f: degree / e,
        })
    }

    /// The maximal unramified extension of `self` inside `top`.
    pub fn max_unramified_sub(&self, top: &Self) -> Result<Self> {
        self.ext_invariants(top)?;
        let fixing = top.fixing.join(&self.frame.inertia.intersect(&self.fixing));
        Self::fixed_field(&self.frame, fixing)
    }

    /// Fields strictly between `self` and `top`, plus both ends, ordered by degree over `self`.
    ///
    /// Only cyclic `Gal(top/self)` is supported: the intermediate fixing groups
    /// are `top.U * <g^d>` for a generator `g` and `d` dividing the degree.
    pub fn cyclic_intermediates(&self, top: &Self, generator: u64) -> Result<Vec<(usize, Self)>> {
        let inv = self.ext_invariants(top)?;
        let mut out = Vec::new();
        for d in 1..=inv.degree {
            if inv.degree % d != 0 {
                continue;
            }
            let g = arith::pow_mod(generator, d as u64, self.frame.n);
            let fixing = top.fixing.join(&UnitSubgroup::generated(self.frame.n, &[g]));
            if fixing.index_in(&self.fixing) != Some(d) {
                return Err(Error::InternalInconsistency(format!(
                    "{generator} does not generate Gal(L/K) of order {}",
                    inv.degree
                )));
            }
            out.push((d, Self::fixed_field(&self.frame, fixing)?));
        }
        Ok(out)
    }

    pub fn summary(&self) -> FieldSummary {
        FieldSummary {
            frame_modulus: self.frame.n,
            fixing_generators: self.fixing.generators().to_vec(),
            fixing_order: self.fixing.order(),
            degree: self.degree(),
            e: self.ramification_index(),
            f: self.inertia_degree(),
        }
    }
}

impl PartialEq for AbelianLocalField {
    fn eq(&self, other: &Self) -> bool {
        self.frame.p == other.frame.p && self.frame.n == other.frame.n && self.fixing == other.fixing
    }
}

impl Eq for AbelianLocalField {}

impl fmt::Display for AbelianLocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q_{}(zeta_{})^<{:?}> [deg {}, e {}, f {}]",
            self.frame.p,
            self.frame.n,
            self.fixing.generators(),
            self.degree(),
            self.ramification_index(),
            self.inertia_degree()
        )
    }
}

/// Report form of a field: where it lives and its absolute invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSummary {
    pub frame_modulus: u64,
    pub fixing_generators: Vec<u64>,
    pub fixing_order: usize,
    pub degree: usize,
    pub e: usize,
    pub f: usize,
}
