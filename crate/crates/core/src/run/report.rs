use std::collections::BTreeMap;

use serde::Serialize;

use super::config::RunConfig;
use crate::chars::Character;
use crate::decompose::{BaseChange, ComponentReport, Setup};
use crate::fields::FieldSummary;
use crate::skew::SkewRun;
use crate::verify::Check;

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub exponent: u64,
    pub abelian: bool,
    pub classes: usize,
    /// SHA-256 of the Cayley table; also the character-table cache key.
    pub hash: String,
    pub action_order: u64,
    pub frame_modulus: u64,
}

impl GroupSummary {
    pub fn of(setup: &Setup) -> Self {
        let g = setup.group();
        Self {
            order: g.order(),
            exponent: g.exponent(),
            abelian: g.is_abelian(),
            classes: setup.table().classes().len(),
            hash: g.canonical_hash(),
            action_order: setup.action().order(),
            frame_modulus: setup.frame().modulus(),
        }
    }
}

/// A published numerical claim set against the computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub name: String,
    pub claimed: u64,
    pub computed: u64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SophieGermainSummary {
    pub p: u64,
    /// `2p + 1`.
    pub modulus: u64,
    pub m: u64,
    /// Multiplicative order of `p` modulo `2p + 1`.
    pub order_of_p: u64,
    pub claimed_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_field: Option<FieldSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub characters: Vec<Character>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub base_change: Vec<BaseChange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sophie_germain: Option<SophieGermainSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skew: Vec<SkewRun>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    pub fn new(command: &str, config: Option<RunConfig>) -> Self {
        Self {
            tool: "qfg".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            group: None,
            base_field: None,
            characters: Vec::new(),
            components: Vec::new(),
            base_change: Vec::new(),
            sophie_germain: None,
            skew: Vec::new(),
            checks: Vec::new(),
            discrepancies: Vec::new(),
            notes: Vec::new(),
            checks_passed: 0,
            checks_failed: 0,
            passed: true,
            timings_ms: None,
        }
    }

    /// Recomputes the totals from the recorded checks.
    pub fn finish(&mut self) {
        self.checks_failed = self.checks.iter().filter(|c| !c.passed).count();
        self.checks_passed = self.checks.len() - self.checks_failed;
        self.passed = self.checks_failed == 0;
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// 0 if every check passed, 4 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            4
        }
    }

    /// The structured document: pretty-printed JSON with a trailing newline.
    pub fn to_doc(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialise");
        s.push('\n');
        s
    }
}
