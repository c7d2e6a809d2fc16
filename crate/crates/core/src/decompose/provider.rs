use std::collections::BTreeMap;

use serde::Serialize;

use super::Setup;
use crate::error::{Error, Result};

/// Where a local Schur index came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Override,
    /// `eta(1) = 1`: the component of `F[H]` is a field.
    LinearCharacter,
    /// `p` does not divide `|H|`: Brauer groups of the relevant complete
    /// local rings vanish, so every component is a full matrix ring.
    CoprimeOrder,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Self::Override => "override",
            Self::LinearCharacter => "rule A (linear character)",
            Self::CoprimeOrder => "rule B (p prime to |H|)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchurData {
    pub n_eta: u64,
    pub s_eta: u64,
    pub provenance: Provenance,
}

/// Supplies `(n_eta, s_eta)`: explicit overrides first, then rules A and B.
#[derive(Clone, Debug, Default)]
pub struct LocalIndexProvider {
    overrides: BTreeMap<usize, u64>,
}

impl LocalIndexProvider {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `s_eta` for the component containing table index `character`.
    pub fn with_override(mut self, character: usize, s_eta: u64) -> Self {
        self.overrides.insert(character, s_eta);
        self
    }

    pub fn overrides(&self) -> &BTreeMap<usize, u64> {
        &self.overrides
    }

    /// The value forced by rule A or B, if either applies.
    pub fn rule_value(setup: &Setup, eta: usize) -> Option<(u64, Provenance)> {
        if setup.table().get(eta).degree() == 1 {
            Some((1, Provenance::LinearCharacter))
        } else if !(setup.group().order() as u64).is_multiple_of(setup.p()) {
            Some((1, Provenance::CoprimeOrder))
        } else {
            None
        }
    }

    /// Data for the component whose joint orbit is `orbit` (representative `eta`).
    pub fn provide(&self, setup: &Setup, eta: usize, orbit: &[usize]) -> Result<SchurData> {
        let degree = setup.table().get(eta).degree();
        let (s_eta, provenance) = orbit
            .iter()
            .find_map(|i| self.overrides.get(i).map(|&s| (s, Provenance::Override)))
            .or_else(|| Self::rule_value(setup, eta))
            .ok_or(Error::ProviderMissing { character: eta })?;
        // a non-dividing override is kept and fails the bookkeeping check
        Ok(SchurData {
            n_eta: degree / s_eta.max(1),
            s_eta,
            provenance,
        })
    }
}
