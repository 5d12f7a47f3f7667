//! On-disk model and scenario documents (JSON, `lower_snake_case` keys).
//!
//! These mirror the file layout one to one; [`crate::validate`] turns a
//! [`ModelDocument`] into a checked [`pcf_core::model::RiskModel`].

use serde::{Deserialize, Serialize};

pub const SUPPORTED_VERSIONS: &[&str] = &["1"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub metadata: Metadata,
    #[serde(default)]
    pub areas: Vec<AreaRecord>,
    #[serde(default)]
    pub event_types: Vec<EventTypeRecord>,
    #[serde(default)]
    pub hazards: Vec<HazardRecord>,
    #[serde(default)]
    pub fragilities: Vec<FragilityRecord>,
    #[serde(default)]
    pub cost_models: Vec<CostRecord>,
    #[serde(default)]
    pub components: Vec<ComponentRecord>,
    #[serde(default)]
    pub nodes: Vec<String>,
    #[serde(default)]
    pub lines: Vec<LineRecord>,
    #[serde(default)]
    pub analysis: Analysis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub name: String,
    #[serde(default = "default_currency")]
    pub currency_label: String,
    pub version: String,
}

fn default_currency() -> String {
    "M€".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AreaRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventTypeRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HazardKind {
    /// `exceedance[k] = P(intensity >= grid[k])` per year.
    Exceedance,
    /// `occurrence[k]` is the annual probability mass at `grid[k]`.
    Occurrence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HazardRecord {
    pub event_type: String,
    pub area: String,
    pub unit: String,
    pub kind: HazardKind,
    pub grid: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceedance: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub occurrence: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FragilityFormTag {
    Lognormal,
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FragilityRecord {
    pub component: String,
    pub event_type: String,
    pub unit: String,
    pub form: FragilityFormTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub median: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// `[intensity, probability]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostRecord {
    pub id: String,
    pub direct: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indirect_lump: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovery: Option<RecoveryRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecoveryRecord {
    /// Days.
    pub downtime: f64,
    /// `[day, M€ per day]` pairs.
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub id: String,
    pub kind: String,
    pub area: String,
    pub cost_ref: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineRecord {
    pub id: String,
    pub from: String,
    pub to: String,
    pub components: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub back_period_years: Option<f64>,
    #[serde(default)]
    pub connection_queries: Vec<ConnectionQuery>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionQuery {
    pub from: String,
    pub to: String,
}

/// A scenario file: the model document layout with a `scenario` object.
/// `metadata` is optional here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    pub scenario: ScenarioRecord,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRecord {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub modifications: Vec<ModificationRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModificationRecord {
    RemoveEvent {
        event_type: String,
    },
    Retrofit {
        component: String,
        event_type: String,
        median_scale: f64,
    },
    SetCost {
        component: String,
        cost: CostRecord,
    },
    SetBackPeriod {
        years: f64,
    },
}

impl ModelDocument {
    /// Canonical pretty-printed form, newline terminated.
    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("model documents always serialize");
        out.push(b'\n');
        out
    }
}
