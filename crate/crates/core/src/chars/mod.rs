//! Irreducible complex characters of a finite group, with exact values in
//! `Q(zeta_e)`, `e = exp(H)`.
//!
//! Abelian and metacyclic groups use closed forms; everything else goes
//! through Dixon-Burnside. Every table is checked against both orthogonality
//! relations before it is handed out.

mod cache;
mod dixon;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::Accumulator;
use crate::error::{Error, Result};
use crate::fields::{AbelianLocalField, UnitSubgroup};
use crate::group::{ConjClasses, FiniteGroup, GammaAction, GroupSpec};
use crate::{CycElem, Rational};

pub use cache::TableCache;
pub use dixon::dixon_prime;

/// An irreducible character as a class function.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    degree: u64,
    values: Vec<CycElem>,
}

impl Character {
    pub fn new(degree: u64, values: Vec<CycElem>) -> Self {
        Self { degree, values }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn values(&self) -> &[CycElem] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycElem {
        &self.values[class]
    }

    /// Modulus of the value field.
    pub fn modulus(&self) -> u64 {
        self.values.first().map_or(1, CycElem::modulus)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(CycElem::is_one)
    }

    /// `sigma_a o eta` for a unit `a` modulo (a multiple of) the value modulus.
    pub fn galois(&self, a: u64) -> Result<Self> {
        let n = self.modulus();
        let values = self
            .values
            .iter()
            .map(|v| v.galois(a % n))
            .collect::<Result<_>>()?;
        Ok(Self::new(self.degree, values))
    }

    /// `eta o phi`, where `perm[c]` is the class of `phi(rep c)`.
    pub fn compose(&self, perm: &[usize]) -> Self {
        Self::new(self.degree, perm.iter().map(|&c| self.values[c].clone()).collect())
    }

    /// Units of `(Z/M)^x` in `within` fixing every value, `M = within.modulus()`.
    pub fn stabilizer(&self, within: &UnitSubgroup) -> Result<UnitSubgroup> {
        let n = self.modulus();
        let m = within.modulus();
        if !m.is_multiple_of(n) {
            return Err(Error::FrameMismatch(format!(
                "character values live in Q(zeta_{n}), which is not inside the frame of modulus {m}"
            )));
        }
        let mut fixed = Vec::new();
        for &a in within.elements() {
            if self.values.iter().all(|v| v.galois(a % n).as_ref() == Ok(v)) {
                fixed.push(a);
            }
        }
        Ok(UnitSubgroup::from_elements(m, fixed))
    }
}

/// `F(eta)`: the fixed field of the stabiliser of `eta` in `U_F`.
pub fn char_restrict_field(eta: &Character, field: &AbelianLocalField) -> Result<AbelianLocalField> {
    let fixing = eta.stabilizer(field.fixing())?;
    AbelianLocalField::fixed_field(field.frame(), fixing)
}

/// Complete character table, sorted by `(degree, values)`.
#[derive(Clone, Debug)]
pub struct CharTable {
    modulus: u64,
    order: usize,
    classes: Arc<ConjClasses>,
    chars: Vec<Character>,
}

impl CharTable {
    /// The table of `group`, by closed form where one applies.
    pub fn compute(group: &FiniteGroup) -> Result<Self> {
        let classes = Arc::new(ConjClasses::compute(group));
        let chars = match closed_form(group, &classes) {
            Some(chars) => chars,
            None => dixon_chars(group, &classes)?,
        };
        Self::assemble(group, classes, chars)
    }

    /// The table of `group` by Dixon-Burnside, ignoring closed forms.
    pub fn dixon(group: &FiniteGroup) -> Result<Self> {
        let classes = Arc::new(ConjClasses::compute(group));
        let chars = dixon_chars(group, &classes)?;
        Self::assemble(group, classes, chars)
    }

    /// The closed-form table, when the group's description admits one.
    pub fn closed_form(group: &FiniteGroup) -> Option<Result<Self>> {
        let classes = Arc::new(ConjClasses::compute(group));
        let chars = closed_form(group, &classes)?;
        Some(Self::assemble(group, classes, chars))
    }

    /// Consults `cache` first, and stores freshly computed tables in it.
    pub fn compute_cached(group: &FiniteGroup, cache: Option<&TableCache>) -> Result<Self> {
        let Some(cache) = cache else {
            return Self::compute(group);
        };
        if let Some(chars) = cache.load(group) {
            let classes = Arc::new(ConjClasses::compute(group));
            if let Ok(t) = Self::assemble(group, classes, chars) {
                return Ok(t);
            }
        }
        let t = Self::compute(group)?;
        cache.store(group, &t.chars)?;
        Ok(t)
    }

    pub(crate) fn assemble(group: &FiniteGroup, classes: Arc<ConjClasses>, mut chars: Vec<Character>) -> Result<Self> {
        chars.sort();
        let t = Self {
            modulus: group.exponent(),
            order: group.order(),
            classes,
            chars,
        };
        t.verify(group)?;
        Ok(t)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn get(&self, i: usize) -> &Character {
        &self.chars[i]
    }

    /// Position of a character in the (sorted) table.
    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.chars.binary_search(chi).ok()
    }

    /// The permutation `i -> index of chi_i o phi`.
    pub fn gamma_permutation(&self, action: &GammaAction) -> Result<Vec<usize>> {
        let perm = self.classes.permutation_by(action);
        self.chars
            .iter()
            .map(|c| self.lookup(&c.compose(&perm)))
            .collect()
    }

    /// The permutation `i -> index of sigma_a o chi_i`.
    pub fn galois_permutation(&self, a: u64) -> Result<Vec<usize>> {
        self.chars.iter().map(|c| self.lookup(&c.galois(a)?)).collect()
    }

    fn lookup(&self, chi: &Character) -> Result<usize> {
        self.index_of(chi)
            .ok_or_else(|| Error::InternalInconsistency("twisted character is missing from the table".into()))
    }

    /// `chi(h)` for an element (not a class).
    pub fn value_at(&self, i: usize, h: usize) -> &CycElem {
        self.chars[i].value(self.classes.class_of(h))
    }

    /// Checks integrality, the degree sum and both orthogonality relations.
    pub fn verify(&self, group: &FiniteGroup) -> Result<()> {
        let r = self.classes.len();
        let n = self.modulus;
        let bad = |msg: String| Err(Error::CharacterTable(msg));
        if self.chars.len() != r {
            return bad(format!("{} characters for {r} classes", self.chars.len()));
        }
        for (i, c) in self.chars.iter().enumerate() {
            if c.values.len() != r || c.values.iter().any(|v| v.modulus() != n || !v.is_integral()) {
                return bad(format!("character {i} has malformed values"));
            }
            if c.values[0] != CycElem::from_int(n, c.degree as i64) {
                return bad(format!("character {i} does not take its degree at 1"));
            }
        }
        let square_sum: u64 = self.chars.iter().map(|c| c.degree * c.degree).sum();
        if square_sum != self.order as u64 {
            return bad(format!("degrees squared sum to {square_sum}, not {}", self.order));
        }
        let sizes = self.classes.sizes();
        let conj: Vec<Vec<CycElem>> = self.chars.iter().map(|c| c.values.iter().map(CycElem::conj).collect()).collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = Accumulator::<Rational>::new(n);
                for c in 0..r {
                    let w = self.chars[i].values[c].scale(&Rational::from_integer((sizes[c] as i64).into()));
                    acc.add_product(&w, &conj[j][c]);
                }
                let expected = if i == j { self.order as i64 } else { 0 };
                if acc.finish() != CycElem::from_int(n, expected) {
                    return bad(format!("row orthogonality fails for characters {i}, {j}"));
                }
            }
        }
        for c in 0..r {
            for d in c..r {
                let mut acc = Accumulator::<Rational>::new(n);
                for (chi, bar) in self.chars.iter().zip(&conj) {
                    acc.add_product(&chi.values[c], &bar[d]);
                }
                let expected = if c == d { (self.order / sizes[c]) as i64 } else { 0 };
                if acc.finish() != CycElem::from_int(n, expected) {
                    return bad(format!("column orthogonality fails for classes {c}, {d}"));
                }
            }
        }
        debug_assert_eq!(group.order(), self.order);
        Ok(())
    }
}

fn dixon_chars(group: &FiniteGroup, classes: &ConjClasses) -> Result<Vec<Character>> {
    Ok(dixon::dixon_burnside(group, classes)?
        .into_iter()
        .map(|(d, v)| Character::new(d, v))
        .collect())
}

fn closed_form(group: &FiniteGroup, classes: &ConjClasses) -> Option<Vec<Character>> {
    match group.spec() {
        GroupSpec::Cyclic(n) => Some(abelian_chars(group, classes, &[*n])),
        GroupSpec::Abelian(ns) => Some(abelian_chars(group, classes, ns)),
        GroupSpec::Metacyclic { n, k, m } => Some(metacyclic_chars(group, classes, *n, *k, *m)),
        GroupSpec::Table(_) => None,
    }
}

/// Dual group of `C_{n_1} x ... x C_{n_r}` in mixed radix (first factor fastest).
fn abelian_chars(group: &FiniteGroup, classes: &ConjClasses, ns: &[u64]) -> Vec<Character> {
    let e = group.exponent();
    let digits = |mut x: u64| -> Vec<u64> {
        ns.iter()
            .map(|&n| {
                let d = x % n;
                x /= n;
                d
            })
            .collect()
    };
    (0..group.order() as u64)
        .map(|j| {
            let dj = digits(j);
            let values = classes
                .reps()
                .iter()
                .map(|&h| {
                    let dh = digits(h as u64);
                    let k = dj
                        .iter()
                        .zip(&dh)
                        .zip(ns)
                        .fold(0, |acc, ((a, b), n)| (acc + a * b % n * (e / n)) % e);
                    CycElem::zeta_pow(e, k as i64)
                })
                .collect();
            Character::new(1, values)
        })
        .collect()
}

/// Characters of `C_n x| C_k` (`y x y^-1 = x^m`) induced from `<x, y^s>`.
///
/// For an orbit of `j` under multiplication by `m` of size `s`, and `t` in
/// `Z/(k/s)`: `chi(x^a y^b) = [s | b] zeta_{k/s}^(t b/s) sum_{i<s} zeta_n^(j a m^i)`.
fn metacyclic_chars(group: &FiniteGroup, classes: &ConjClasses, n: u64, k: u64, m: u64) -> Vec<Character> {
    let e = group.exponent();
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j as usize] {
            continue;
        }
        let mut orbit = vec![j];
        seen[j as usize] = true;
        let mut x = j * m % n;
        while x != j {
            seen[x as usize] = true;
            orbit.push(x);
            x = x * m % n;
        }
        let s = orbit.len() as u64;
        let q = k / s;
        for t in 0..q {
            let values = classes
                .reps()
                .iter()
                .map(|&h| {
                    let (a, b) = (h as u64 % n, h as u64 / n);
                    let mut acc = Accumulator::<Rational>::new(e);
                    if b % s == 0 {
                        let twist = t * (b / s) % q * (e / q);
                        for &jj in &orbit {
                            acc.add_monomial(&Rational::from_integer(1.into()), (jj * a % n) * (e / n) + twist);
                        }
                    }
                    acc.finish()
                })
                .collect();
            out.push(Character::new(s, values));
        }
    }
    out
}

#[cfg(test)]
mod tests;
