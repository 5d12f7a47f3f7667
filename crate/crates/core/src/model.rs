//! A validated risk model and the what-if scenarios applied to it.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::economics::CostModel;
use crate::error::{Error, Result};
use crate::fragility::FragilityCurve;
use crate::hazard::{BackPeriod, HazardCurve};
use crate::ids::{AreaId, ComponentId, EventTypeId, NodeId};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub id: ComponentId,
    pub kind: String,
    pub area: AreaId,
    /// At most one curve per event type.
    pub fragilities: Vec<FragilityCurve>,
    pub cost: CostModel,
}

impl Component {
    pub fn fragility(&self, event: &EventTypeId) -> Option<&FragilityCurve> {
        self.fragilities.iter().find(|f| f.event_type() == event)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiskModel {
    hazards: Vec<HazardCurve>,
    components: Vec<Component>,
    network: Network,
    back_period: Option<BackPeriod>,
    connection_queries: Vec<(NodeId, NodeId)>,
}

impl RiskModel {
    pub fn new(
        hazards: Vec<HazardCurve>,
        components: Vec<Component>,
        network: Network,
        back_period: Option<BackPeriod>,
        connection_queries: Vec<(NodeId, NodeId)>,
    ) -> Result<Self> {
        let model = Self {
            hazards,
            components,
            network,
            back_period,
            connection_queries,
        };
        model.check()?;
        Ok(model)
    }

    fn check(&self) -> Result<()> {
        let mut keys = BTreeSet::new();
        for h in &self.hazards {
            if !keys.insert((h.event_type(), h.area())) {
                return Err(Error::DuplicateId(alloc::format!("{}/{}", h.event_type(), h.area())));
            }
        }
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(&c.id) {
                return Err(Error::DuplicateId(c.id.as_str().into()));
            }
            let mut events = BTreeSet::new();
            for f in &c.fragilities {
                if f.component() != &c.id {
                    return Err(Error::UnknownComponent(f.component().clone()));
                }
                if !events.insert(f.event_type()) {
                    return Err(Error::DuplicateId(alloc::format!("{}/{}", c.id, f.event_type())));
                }
                if self.hazard(f.event_type(), &c.area).is_none() {
                    return Err(Error::MissingHazard {
                        event: f.event_type().clone(),
                        area: c.area.as_str().into(),
                    });
                }
            }
        }
        for line in self.network.lines() {
            if let Some(missing) = line.components().iter().find(|c| !ids.contains(c)) {
                return Err(Error::UnknownComponent(missing.clone()));
            }
        }
        for (from, to) in &self.connection_queries {
            for n in [from, to] {
                if !self.network.nodes().contains(n) {
                    return Err(Error::UnknownNode(n.clone()));
                }
            }
            if from == to {
                return Err(Error::SameEndpoints(from.clone()));
            }
        }
        Ok(())
    }

    pub fn hazards(&self) -> &[HazardCurve] {
        &self.hazards
    }

    pub fn hazard(&self, event: &EventTypeId, area: &AreaId) -> Option<&HazardCurve> {
        self.hazards.iter().find(|h| h.event_type() == event && h.area() == area)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: &ComponentId) -> Option<&Component> {
        self.components.iter().find(|c| &c.id == id)
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn back_period(&self) -> Option<BackPeriod> {
        self.back_period
    }

    pub fn connection_queries(&self) -> &[(NodeId, NodeId)] {
        &self.connection_queries
    }

    /// Event types with a hazard curve or a fragility, sorted.
    pub fn event_types(&self) -> BTreeSet<&EventTypeId> {
        self.hazards
            .iter()
            .map(|h| h.event_type())
            .chain(self.components.iter().flat_map(|c| c.fragilities.iter().map(|f| f.event_type())))
            .collect()
    }

    pub fn with_back_period(&self, back_period: Option<BackPeriod>) -> Self {
        Self {
            back_period,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Modification {
    /// Drop every hazard curve of the event type, and the exposure to it.
    RemoveEvent { event_type: EventTypeId },
    /// Multiply the fragility median by `median_scale`.
    Retrofit {
        component: ComponentId,
        event_type: EventTypeId,
        median_scale: f64,
    },
    SetCost { component: ComponentId, cost: CostModel },
    SetBackPeriod { years: f64 },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scenario {
    pub name: String,
    pub modifications: Vec<Modification>,
}

/// Applies the scenario's modifications in order to a copy of `model`.
pub fn apply_scenario(model: &RiskModel, scenario: &Scenario) -> Result<RiskModel> {
    let mut out = model.clone();
    for m in &scenario.modifications {
        match m {
            Modification::RemoveEvent { event_type } => {
                if !out.event_types().contains(event_type) {
                    return Err(Error::UnknownEventType(event_type.clone()));
                }
                out.hazards.retain(|h| h.event_type() != event_type);
                for c in &mut out.components {
                    c.fragilities.retain(|f| f.event_type() != event_type);
                }
            }
            Modification::Retrofit {
                component,
                event_type,
                median_scale,
            } => {
                let c = out
                    .components
                    .iter_mut()
                    .find(|c| &c.id == component)
                    .ok_or_else(|| Error::UnknownComponent(component.clone()))?;
                let f = c
                    .fragilities
                    .iter_mut()
                    .find(|f| f.event_type() == event_type)
                    .ok_or_else(|| Error::UnknownFragility {
                        component: component.clone(),
                        event: event_type.clone(),
                    })?;
                *f = f.retrofitted(*median_scale)?;
            }
            Modification::SetCost { component, cost } => {
                let c = out
                    .components
                    .iter_mut()
                    .find(|c| &c.id == component)
                    .ok_or_else(|| Error::UnknownComponent(component.clone()))?;
                c.cost = cost.clone();
            }
            Modification::SetBackPeriod { years } => {
                out.back_period = Some(BackPeriod::new(*years)?);
            }
        }
    }
    out.check()?;
    Ok(out)
}
