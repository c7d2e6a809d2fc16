use serde::Serialize;

use super::{FiniteGroup, GammaAction};

/// Conjugacy classes, ordered by their smallest element (so the identity
/// class comes first); the representative of a class is its smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClasses {
    class_of: Vec<usize>,
    reps: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ConjClasses {
    pub fn compute(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for h in 0..n {
            if class_of[h] != usize::MAX {
                continue;
            }
            let c = reps.len();
            let mut orbit: Vec<usize> = (0..n).map(|g| group.mul(group.mul(g, h), group.inv(g))).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                class_of[x] = c;
            }
            reps.push(h);
            members.push(orbit);
        }
        Self {
            class_of,
            reps,
            members,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, h: usize) -> usize {
        self.class_of[h]
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, group: &FiniteGroup, c: usize) -> usize {
        self.class_of[group.inv(self.reps[c])]
    }

    /// Class of `g^t` for `g` in class `c`.
    pub fn power_class(&self, group: &FiniteGroup, c: usize, t: u64) -> usize {
        self.class_of[group.pow(self.reps[c], t)]
    }

    /// Permutation of classes induced by an automorphism.
    pub fn permutation_by(&self, action: &GammaAction) -> Vec<usize> {
        self.reps.iter().map(|&r| self.class_of[action.apply(r)]).collect()
    }
}
