//! Scenario files: the bundled corpus of worked examples, each carrying the
//! equations verbatim, curated group references, invariant definitions, maps,
//! witnesses and expected outcomes.

use std::collections::BTreeMap;

use serde::Deserialize;

use fano_core::error::{Error, Result};

#[derive(Deserialize, Clone)]
pub struct InvariantSpec {
    pub poly: String,
    pub expected: String,
}

#[derive(Deserialize, Clone)]
pub struct RelationSpec {
    pub poly: String,
    pub expected: String,
    #[serde(default)]
    pub flagged: bool,
}

#[derive(Deserialize, Clone)]
pub struct WitnessSpec {
    pub num: String,
    pub den: String,
    pub expected: String,
}

#[derive(Deserialize, Clone)]
pub struct SigmaSpec {
    pub z_image: String,
    pub w_factor: String,
    pub expected_scale: String,
}

#[derive(Deserialize, Clone)]
pub struct Scenario {
    pub name: String,
    pub variable: String,
    #[serde(default)]
    pub conductor: Option<u32>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub operators: BTreeMap<String, String>,
    #[serde(default)]
    pub groups: BTreeMap<String, String>,
    #[serde(default)]
    pub maps: BTreeMap<String, String>,
    #[serde(default)]
    pub invariants: BTreeMap<String, InvariantSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default)]
    pub witness: Option<WitnessSpec>,
    #[serde(default)]
    pub exponents: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub symmetries: Vec<String>,
    #[serde(default)]
    pub original_symmetries: Vec<String>,
    #[serde(default)]
    pub modulus: Option<String>,
    #[serde(default)]
    pub direction: Option<String>,
    #[serde(default)]
    pub sigma: Option<SigmaSpec>,
    #[serde(default)]
    pub x_variable: Option<String>,
    #[serde(default)]
    pub basic_variable: Option<String>,
    #[serde(default)]
    pub gauge: Option<String>,
    #[serde(default)]
    pub cubic: Option<String>,
    #[serde(default)]
    pub semi_invariant: Option<String>,
    #[serde(default)]
    pub semi_invariant_square: Option<String>,
    #[serde(default)]
    pub frobenius_exponents: BTreeMap<String, String>,
    #[serde(default)]
    pub sequence_orders: Option<Vec<usize>>,
    #[serde(default)]
    pub system_diagonal: Vec<String>,
    #[serde(default)]
    pub relations_true: Vec<String>,
    #[serde(default)]
    pub relations_false: Vec<String>,
    #[serde(default)]
    pub lift: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub symmetry: Option<String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

pub mod bundled {
    pub const EX71: &str = include_str!("../data/scenarios/ex71.json");
    pub const EX72: &str = include_str!("../data/scenarios/ex72.json");
    pub const EX73: &str = include_str!("../data/scenarios/ex73.json");
    pub const EX74: &str = include_str!("../data/scenarios/ex74.json");
    pub const R23: &str = include_str!("../data/scenarios/r23.json");
    pub const R317: &str = include_str!("../data/scenarios/r317.json");

    pub fn by_name(name: &str) -> Option<&'static str> {
        match name {
            "7.1" | "ex71" => Some(EX71),
            "7.2" | "ex72" => Some(EX72),
            "7.3" | "ex73" => Some(EX73),
            "7.4" | "ex74" => Some(EX74),
            "r2.3" | "r23" => Some(R23),
            "r3.17" | "r317" => Some(R317),
            _ => None,
        }
    }
}

impl Scenario {
    pub fn from_str(json: &str) -> Result<Scenario> {
        serde_json::from_str(json).map_err(|e| Error::Unsupported(format!("scenario json: {}", e)))
    }

    pub fn bundled(name: &str) -> Result<Scenario> {
        let text = bundled::by_name(name)
            .ok_or_else(|| Error::Unsupported(format!("unknown bundled scenario {}", name)))?;
        Self::from_str(text)
    }

    pub fn operator_text(&self, name: &str) -> Result<&str> {
        self.operators
            .get(name)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::Unsupported(format!("scenario lacks operator {}", name)))
    }
}
