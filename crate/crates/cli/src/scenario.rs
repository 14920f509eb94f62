//! Scenario files and their kind-specific payloads.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nicerec_core::dynamics::{RecurrenceQuery, SystemSpec};
use nicerec_core::ipstruct::Coloring;
use nicerec_core::spectral::PhaseUnitary;
use nicerec_core::{BinPoly, Lattice, PolyTuple};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::InputError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Khintchine,
    REpsilon,
    IpStar,
    KeyLemma,
    StableRank,
    SpectralLimit,
    DeltaCheck,
    HindmanSearch,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Khintchine,
        Kind::REpsilon,
        Kind::IpStar,
        Kind::KeyLemma,
        Kind::StableRank,
        Kind::SpectralLimit,
        Kind::DeltaCheck,
        Kind::HindmanSearch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Khintchine => "khintchine",
            Kind::REpsilon => "r-epsilon",
            Kind::IpStar => "ip-star",
            Kind::KeyLemma => "key-lemma",
            Kind::StableRank => "stable-rank",
            Kind::SpectralLimit => "spectral-limit",
            Kind::DeltaCheck => "delta-check",
            Kind::HindmanSearch => "hindman-search",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Kind, String> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Kind::ALL.iter().map(|k| k.as_str()).collect();
                format!("unknown kind {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub id: String,
    pub kind: Kind,
    pub payload: Value,
}

#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub path: PathBuf,
    pub scenario: Scenario,
}

impl LoadedScenario {
    pub fn file_name(&self) -> String {
        self.path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    }

    /// Deserializes the payload, reporting the JSON path of any error.
    pub fn payload<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        serde_path_to_error::deserialize(self.scenario.payload.clone())
            .map_err(|e| self.error(format!("payload.{}: {}", e.path(), e.inner())))
    }

    pub fn error(&self, message: impl Into<String>) -> InputError {
        InputError {
            file: self.path.display().to_string(),
            message: message.into(),
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<LoadedScenario, InputError> {
    let err = |message: String| InputError {
        file: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let scenario: Scenario =
        serde_path_to_error::deserialize(&mut de).map_err(|e| err(format!("{}: {}", e.path(), e.inner())))?;
    if scenario.schema_version != SCHEMA_VERSION {
        return Err(err(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            scenario.schema_version
        )));
    }
    if scenario.id.is_empty() {
        return Err(err("id must be nonempty".into()));
    }
    Ok(LoadedScenario {
        path: path.to_path_buf(),
        scenario,
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KhintchinePayload {
    pub system: SystemSpec,
    pub query: RecurrenceQuery,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub k: usize,
    #[serde(rename = "W")]
    pub w: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct REpsilonPayload {
    pub system: SystemSpec,
    pub query: RecurrenceQuery,
    #[serde(default)]
    pub ip_star: Option<WindowSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IpStarPayload {
    pub set: BTreeSet<u64>,
    pub k: usize,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(default)]
    pub gap_range: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyLemmaPayload {
    pub v: PolyTuple,
    pub target: Lattice,
    pub hypothesis: Lattice,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableRankPayload {
    pub v: PolyTuple,
    pub window: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralPayload {
    pub unitary: PhaseUnitary,
    pub families: Vec<Vec<BinPoly>>,
    /// Each entry is a set of exponent vectors; the projection onto the
    /// common fixed space of the corresponding operators is realized too.
    #[serde(default)]
    pub orbits: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomPolys {
    pub count: usize,
    pub max_nvars: usize,
    pub max_degree: u32,
    pub coef: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaPayload {
    #[serde(default)]
    pub polys: Vec<BinPoly>,
    /// Largest `s` for the pointwise comparison with the explicit sum.
    #[serde(default = "default_max_s")]
    pub max_s: u32,
    /// Size of the `C(s, m)` table, if requested.
    #[serde(default)]
    pub c_table: Option<u32>,
    /// Extra random polynomials drawn with the run's seed.
    #[serde(default)]
    pub random: Option<RandomPolys>,
}

fn default_max_s() -> u32 {
    3
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllColorings {
    #[serde(rename = "W")]
    pub w: u64,
    pub colors: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HindmanPayload {
    #[serde(default)]
    pub coloring: Option<Coloring>,
    #[serde(default)]
    pub all_colorings: Option<AllColorings>,
    pub k: usize,
}
