use alloc::string::String;
use alloc::vec::Vec;

use crate::ids::{ComponentId, EventTypeId, LineId, NodeId};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("intensity grid needs at least 2 values, got {0}")]
    GridTooShort(usize),
    #[error("intensity grid value {value} at index {index} is negative or not finite")]
    GridValue { index: usize, value: f64 },
    #[error("intensity grid is not strictly increasing at index {0}")]
    GridNotIncreasing(usize),
    #[error("{what} has {found} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{what} at index {index} is {value}, outside [0, 1]")]
    ProbabilityOutOfRange {
        what: &'static str,
        index: usize,
        value: f64,
    },
    #[error("exceedance increases at index {0}")]
    ExceedanceNotMonotone(usize),
    #[error("occurrence probabilities sum to {0}, more than 1")]
    OccurrenceSumExceedsOne(f64),
    #[error("back-period must be positive and finite, got {0}")]
    InvalidBackPeriod(f64),
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("fragility table point {0} breaks ordering (intensity strictly increasing, probability non-decreasing)")]
    FragilityTableOrder(usize),
    #[error("intensity must be non-negative, got {0}")]
    NegativeIntensity(f64),
    #[error("fragility for event `{fragility}` applied to a `{hazard}` hazard")]
    EventTypeMismatch {
        fragility: EventTypeId,
        hazard: EventTypeId,
    },
    #[error("failure probabilities of several components mixed: `{0}` and `{1}`")]
    MixedComponents(ComponentId, ComponentId),
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("recovery function: {0}")]
    RecoveryFunction(&'static str),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("unknown component `{0}`")]
    UnknownComponent(ComponentId),
    #[error("unknown event type `{0}`")]
    UnknownEventType(EventTypeId),
    #[error("component `{component}` has no fragility for event `{event}`")]
    UnknownFragility {
        component: ComponentId,
        event: EventTypeId,
    },
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("no hazard for event `{event}` in area `{area}`")]
    MissingHazard { event: EventTypeId, area: String },
    #[error("line `{0}` is invalid: {1}")]
    InvalidLine(LineId, &'static str),
    #[error("component `{0}` is used by more than one line")]
    SharedComponent(ComponentId),
    #[error("no failure probability supplied for component `{0}`")]
    MissingProbability(ComponentId),
    #[error("connection endpoints must differ, got `{0}` twice")]
    SameEndpoints(NodeId),
    #[error("unsupported topology: not series-parallel reducible (nodes {nodes:?}, lines {lines:?})")]
    UnsupportedTopology { nodes: Vec<NodeId>, lines: Vec<LineId> },
    #[error("reports describe different topologies")]
    TopologyMismatch,
}
