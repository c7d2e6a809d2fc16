use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::decompose::LocalIndexProvider;
use crate::error::{Error, Result};
use crate::fields::{AbelianLocalField, CycFrame};
use crate::group::{FiniteGroup, GammaAction, GroupSpec, DEFAULT_ORDER_CAP};
use crate::idem::DEFAULT_IDEMPOTENT_BUDGET;
use crate::skew::{DEFAULT_RESIDUE_DEGREES, DEFAULT_SAMPLES};

/// A run, as read from a TOML document. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub p: u64,
    pub group: GroupConfig,
    #[serde(default)]
    pub action: ActionConfig,
    #[serde(default)]
    pub field: FieldConfig,
    #[serde(default = "default_cap")]
    pub order_cap: usize,
    #[serde(default)]
    pub provider: ProviderConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
    #[serde(default)]
    pub skew: SkewConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

fn default_cap() -> usize {
    DEFAULT_ORDER_CAP
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Human,
    Doc,
}

/// `{ cyclic = n }`, `{ abelian = [..] }`, `{ metacyclic = [n, k, m] }` or `{ table = [[..]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupConfig {
    Cyclic(u64),
    Abelian(Vec<u64>),
    Metacyclic([u64; 3]),
    Table(Vec<Vec<usize>>),
}

impl GroupConfig {
    pub fn spec(&self) -> GroupSpec {
        match self {
            Self::Cyclic(n) => GroupSpec::Cyclic(*n),
            Self::Abelian(ns) => GroupSpec::Abelian(ns.clone()),
            Self::Metacyclic([n, k, m]) => GroupSpec::Metacyclic { n: *n, k: *k, m: *m },
            Self::Table(t) => GroupSpec::Table(t.clone()),
        }
    }
}

/// `"trivial"`, `{ power = m }` (abelian groups) or `{ perm = [..] }` (images of the elements).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionConfig {
    #[default]
    Trivial,
    Power(u64),
    Perm(Vec<usize>),
}

/// `"Qp"`, `{ unramified = f }` or `{ conductor = n, subgroup_generators = [..] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldConfig {
    Named(FieldName),
    Unramified(UnramifiedField),
    Fixed(FixedField),
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self::Named(FieldName::Qp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldName {
    Qp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnramifiedField {
    pub unramified: u32,
}

/// The fixed field in `Q_p(zeta_conductor)` of the subgroup generated by the
/// given residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedField {
    pub conductor: u64,
    pub subgroup_generators: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProviderConfig {
    #[serde(default)]
    pub overrides: Vec<Override>,
}

/// `s_eta` for the component containing the character with this table index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    pub character: usize,
    pub s_eta: u64,
}

/// Suites run by `verify`; `decompose` always runs the invariant checks only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    pub idempotents: bool,
    pub base_change: bool,
    pub skew: bool,
    /// Largest `|H|` for which the idempotent suite runs.
    pub idempotent_budget: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            idempotents: true,
            base_change: true,
            skew: false,
            idempotent_budget: DEFAULT_IDEMPOTENT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SkewConfig {
    pub k: u32,
    pub d: usize,
    pub residue_degrees: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SkewConfig {
    fn default() -> Self {
        Self {
            k: 4,
            d: 8,
            residue_degrees: DEFAULT_RESIDUE_DEGREES.to_vec(),
            seed: 0,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl RunConfig {
    /// A minimal configuration with every optional part at its default.
    pub fn new(p: u64, group: GroupConfig) -> Self {
        Self {
            p,
            group,
            action: ActionConfig::default(),
            field: FieldConfig::default(),
            order_cap: DEFAULT_ORDER_CAP,
            provider: ProviderConfig::default(),
            verify: VerifyConfig::default(),
            skew: SkewConfig::default(),
            format: None,
        }
    }

    /// Parses and validates; every failure is [`Error::Config`] or [`Error::InvalidPrime`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs always serialise")
    }

    /// Checks that do not need the group to be built.
    pub fn validate(&self) -> Result<()> {
        if self.p == 2 || !arith::is_prime(self.p) {
            return Err(Error::InvalidPrime(self.p));
        }
        if let FieldConfig::Unramified(u) = &self.field {
            if u.unramified == 0 {
                return Err(Error::Config("field.unramified must be at least 1".into()));
            }
        }
        if let FieldConfig::Fixed(f) = &self.field {
            if f.conductor == 0 {
                return Err(Error::Config("field.conductor must be positive".into()));
            }
        }
        if self.provider.overrides.iter().any(|o| o.s_eta == 0) {
            return Err(Error::Config("provider override s_eta must be positive".into()));
        }
        let s = &self.skew;
        if s.residue_degrees.contains(&0) {
            return Err(Error::Config("skew.residue_degrees entries must be positive".into()));
        }
        if s.k == 0 {
            return Err(Error::Config("skew.k must be positive".into()));
        }
        Ok(())
    }

    pub fn build_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::build(&self.group.spec(), self.order_cap)
    }

    pub fn build_action(&self, group: &FiniteGroup) -> Result<GammaAction> {
        match &self.action {
            ActionConfig::Trivial => GammaAction::trivial(group, self.p),
            ActionConfig::Power(m) => GammaAction::power_map(group, self.p, *m),
            ActionConfig::Perm(perm) => GammaAction::new(group, self.p, perm.clone()),
        }
    }

    pub fn build_field(&self) -> Result<AbelianLocalField> {
        match &self.field {
            FieldConfig::Named(FieldName::Qp) => Ok(AbelianLocalField::base(&CycFrame::build(self.p, 1)?)),
            FieldConfig::Unramified(u) => AbelianLocalField::unramified(self.p, u.unramified),
            FieldConfig::Fixed(f) => {
                let frame: Arc<CycFrame> = CycFrame::build(self.p, f.conductor)?;
                let u = frame.subgroup(&f.subgroup_generators)?;
                AbelianLocalField::fixed_field(&frame, u)
            }
        }
    }

    pub fn provider(&self) -> LocalIndexProvider {
        self.provider
            .overrides
            .iter()
            .fold(LocalIndexProvider::new(), |acc, o| acc.with_override(o.character, o.s_eta))
    }
}
