//! The `--json` document shared by every subcommand.

use serde::Serialize;
use serde_json::{Map, Value};

use nanotop_core::verifier::Witness;
use nanotop_core::{enumerate_family, ContinuityProfile, FamilyKind, NanoSpace, SpaceSpec};

/// One open-set family of one of the report's spaces, as label arrays.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub space: usize,
    pub kind: FamilyKind,
    pub members: Vec<Vec<String>>,
}

impl FamilyReport {
    pub fn of(space_index: usize, space: &NanoSpace, kind: FamilyKind) -> Self {
        let members = enumerate_family(space, kind)
            .members()
            .map(|s| s.labels().into_iter().map(String::from).collect())
            .collect();
        FamilyReport {
            space: space_index,
            kind,
            members,
        }
    }
}

/// The five common keys are always present; commands add their own after them.
#[derive(Debug, Clone, Serialize)]
pub struct JsonReport {
    pub command: String,
    pub spaces: Vec<SpaceSpec>,
    pub families: Vec<FamilyReport>,
    pub profile: Option<ContinuityProfile>,
    pub witnesses: Vec<Witness>,
    pub discrepancies: Vec<Value>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl JsonReport {
    pub fn new(command: impl Into<String>) -> Self {
        JsonReport {
            command: command.into(),
            spaces: Vec::new(),
            families: Vec::new(),
            profile: None,
            witnesses: Vec::new(),
            discrepancies: Vec::new(),
            extra: Map::new(),
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        self.extra.insert(key.to_string(), to_value(value));
    }

    pub fn render(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report types serialize");
        out.push('\n');
        out
    }
}

pub fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}
