use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith;

/// Subgroup of `(Z/n)^x`, stored as its sorted element list.
///
/// Equality and ordering look at the elements only; the generator list is
/// kept for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
    generators: Vec<u64>,
}

impl UnitSubgroup {
    /// Subgroup generated by `gens`; panics if a generator is not a unit.
    pub fn generated(modulus: u64, gens: &[u64]) -> Self {
        let id = 1 % modulus;
        let gens: Vec<u64> = gens.iter().map(|g| g % modulus).filter(|&g| g != id).collect();
        for &g in &gens {
            assert!(arith::gcd(g, modulus) == 1 || modulus == 1, "{g} is not a unit mod {modulus}");
        }
        let mut seen = BTreeSet::from([id]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = arith::mul_mod(x, g, modulus);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self {
            modulus,
            elements: seen.into_iter().collect(),
            generators: gens,
        }
    }

    pub fn trivial(modulus: u64) -> Self {
        Self::generated(modulus, &[])
    }

    /// Builds from an explicit element set, which must be closed under products.
    pub(crate) fn from_elements(modulus: u64, mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let generators = greedy_generators(modulus, &elements);
        Self {
            modulus,
            elements,
            generators,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&(a % self.modulus)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let elements = self.elements.iter().copied().filter(|&a| other.contains(a)).collect();
        Self::from_elements(self.modulus, elements)
    }

    /// The product subgroup `self * other` (the join, since the group is abelian).
    pub fn join(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Self::generated(self.modulus, &gens)
    }

    /// `[other : self]`, or `None` when `self` is not contained in `other`.
    pub fn index_in(&self, other: &Self) -> Option<usize> {
        self.is_subgroup_of(other).then(|| other.order() / self.order())
    }

    /// Smallest residue in the coset `a * self`.
    pub fn coset_min(&self, a: u64) -> u64 {
        self.elements
            .iter()
            .map(|&u| arith::mul_mod(a, u, self.modulus))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Order of the class of `a` in the quotient `<a, self> / self`.
    pub fn quotient_order(&self, a: u64) -> u64 {
        let mut x = a % self.modulus;
        let mut k = 1;
        while !self.contains(x) {
            x = arith::mul_mod(x, a, self.modulus);
            k += 1;
        }
        k
    }

    /// Preimage of `self` under reduction `(Z/m)^x -> (Z/n)^x`, intersected with `within`.
    pub fn pull_back(&self, within: &Self) -> Self {
        let elements = within
            .elements
            .iter()
            .copied()
            .filter(|&a| self.contains(a % self.modulus))
            .collect();
        Self::from_elements(within.modulus, elements)
    }
}

fn greedy_generators(modulus: u64, elements: &[u64]) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut span = vec![1 % modulus];
    for &a in elements {
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = UnitSubgroup::generated(modulus, &gens).elements;
        }
    }
    gens
}

impl PartialEq for UnitSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.elements == other.elements
    }
}

impl Eq for UnitSubgroup {}

impl std::hash::Hash for UnitSubgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.elements.hash(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_subgroups_mod_seven() {
        let g = UnitSubgroup::generated(7, &[3]);
        assert_eq!(g.elements(), &[1, 2, 3, 4, 5, 6]);
        let h = UnitSubgroup::generated(7, &[2]);
        assert_eq!(h.elements(), &[1, 2, 4]);
        assert_eq!(h.index_in(&g), Some(2));
        assert_eq!(g.index_in(&h), None);
        assert_eq!(h.coset_min(3), 3);
        assert_eq!(h.coset_min(5), 3);
        assert_eq!(UnitSubgroup::trivial(7).quotient_order(2), 3);
    }

    #[test]
    fn joins_and_intersections() {
        let a = UnitSubgroup::generated(63, &[2]);
        let b = UnitSubgroup::generated(63, &[10]);
        let j = a.join(&b);
        assert!(a.is_subgroup_of(&j) && b.is_subgroup_of(&j));
        let i = a.intersect(&b);
        assert!(i.is_subgroup_of(&a) && i.is_subgroup_of(&b));
        assert_eq!(j.order() * i.order(), a.order() * b.order());
        let rebuilt = UnitSubgroup::from_elements(63, j.elements().to_vec());
        assert_eq!(UnitSubgroup::generated(63, rebuilt.generators()), j);
    }

    #[test]
    fn modulus_one_is_trivial() {
        let t = UnitSubgroup::generated(1, &[0, 5]);
        assert_eq!(t.elements(), &[0]);
        assert!(t.contains(1));
    }
}
