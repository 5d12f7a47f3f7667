//! Validation findings with stable codes and document paths.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

macro_rules! codes {
    ($($(#[$doc:meta])* $variant:ident = $text:literal,)*) => {
        /// Stable diagnostic identifier. The string form never changes once
        /// published.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $($(#[$doc])* $variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $text,)*
                }
            }

            pub fn parse(s: &str) -> Option<Code> {
                match s {
                    $($text => Some(Code::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

codes! {
    /// Not well-formed JSON, or not the document layout.
    Syntax = "syntax",
    UnsupportedVersion = "version.unsupported",
    DuplicateId = "id.duplicate",
    UnknownArea = "ref.unknown_area",
    UnknownEventType = "ref.unknown_event_type",
    UnknownComponent = "ref.unknown_component",
    UnknownCostModel = "ref.unknown_cost_model",
    UnknownNode = "ref.unknown_node",
    GridTooShort = "grid.too_short",
    GridValue = "grid.invalid_value",
    GridNotIncreasing = "grid.not_increasing",
    /// The probability array required by the hazard `kind` is missing, or
    /// the other one is present.
    HazardFields = "hazard.kind_fields",
    HazardLength = "hazard.length_mismatch",
    HazardProbabilityRange = "hazard.probability_range",
    ExceedanceNotMonotone = "hazard.exceedance_not_monotone",
    OccurrenceSum = "hazard.occurrence_sum",
    DuplicateHazard = "hazard.duplicate",
    FragilityFields = "fragility.form_fields",
    FragilityParameter = "fragility.lognormal_parameter",
    FragilityTableOrder = "fragility.table_order",
    FragilityTableProbability = "fragility.table_probability",
    DuplicateFragility = "fragility.duplicate",
    MissingHazard = "fragility.missing_hazard",
    UnitMismatch = "fragility.unit_mismatch",
    NegativeCost = "cost.negative",
    IndirectForm = "cost.indirect_form",
    RecoveryDowntime = "recovery.downtime",
    RecoveryPoints = "recovery.points",
    RecoveryRate = "recovery.rate",
    LineEndpoints = "line.endpoints",
    LineEmpty = "line.empty",
    LineDuplicateComponent = "line.duplicate_component",
    SharedComponent = "line.shared_component",
    BackPeriod = "analysis.back_period",
    QueryEndpoints = "analysis.query_endpoints",
    UnsupportedTopology = "analysis.unsupported_topology",
    /// Warning: a component has no fragility, so it never fails.
    UnexposedComponent = "component.unexposed",
    /// Warning: a component is on no line.
    OffNetworkComponent = "component.off_network",
    /// Warning: the back-period leaves a hazard with no intensity.
    EmptyAfterBackPeriod = "hazard.empty_after_back_period",
}

impl Code {
    pub fn severity(self) -> Severity {
        match self {
            Code::UnexposedComponent | Code::OffNetworkComponent | Code::EmptyAfterBackPeriod => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Code::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown diagnostic code `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    /// Location in the document, e.g. `hazards[1].exceedance[4]`.
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            severity: code.severity(),
            code,
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        if self.path.is_empty() {
            write!(f, "{level}[{}]: {}", self.code, self.message)
        } else {
            write!(f, "{level}[{}] {}: {}", self.code, self.path, self.message)
        }
    }
}
