//! Probable cost of failure, importance factors and what-if deltas.
//!
//! Every (component, event type) pair gets its own annual failure
//! probability and probable cost `C_i · Pf`. Totals are plain sums of these
//! cells, so the cost-weighted shares (importance factors) add up across
//! components, events and lines. Connection probabilities between nodes use
//! the combined per-component probability instead.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::economics::total_failure_cost;
use crate::error::{Error, Result};
use crate::fragility::{combine_event_failure_probabilities, component_annual_failure_probability, AnnualFailureProbability};
use crate::hazard::{HazardCurve, TruncateByBackPeriod};
use crate::ids::{AreaId, ComponentId, EventTypeId, LineId, NodeId};
use crate::model::RiskModel;
use crate::network::{connection_failure_probability, series_failure_probability};

/// Slack on `part <= total` in [`importance_factor`].
const SHARE_TOLERANCE: f64 = 1e-12;

/// A share or relative change that may be undefined because its
/// denominator is zero. Serialized as a number or the string `"undefined"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    Defined(f64),
    Undefined,
}

impl Ratio {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Defined(v) => Some(v),
            Self::Undefined => None,
        }
    }

    fn of(part: f64, whole: f64) -> Self {
        if whole == 0.0 {
            Self::Undefined
        } else {
            Self::Defined(part / whole)
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Self::Defined(v) => s.serialize_f64(*v),
            Self::Undefined => s.serialize_str("undefined"),
        }
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Ratio;
            fn expecting(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
                f.write_str("a number or \"undefined\"")
            }
            fn visit_f64<E>(self, v: f64) -> core::result::Result<Ratio, E> {
                Ok(Ratio::Defined(v))
            }
            fn visit_i64<E>(self, v: i64) -> core::result::Result<Ratio, E> {
                Ok(Ratio::Defined(v as f64))
            }
            fn visit_u64<E>(self, v: u64) -> core::result::Result<Ratio, E> {
                Ok(Ratio::Defined(v as f64))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> core::result::Result<Ratio, E> {
                if v == "undefined" {
                    Ok(Ratio::Undefined)
                } else {
                    Err(E::invalid_value(serde::de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(Visitor)
    }
}

/// `Cf · Pf`, the expected cost per year.
pub fn probable_cost(cost: f64, pf: f64) -> Result<f64> {
    if !(cost.is_finite() && cost >= 0.0) {
        return Err(Error::InvalidParameter { name: "cost", value: cost });
    }
    if !(0.0..=1.0).contains(&pf) {
        return Err(Error::ProbabilityOutOfRange {
            what: "failure probability",
            index: 0,
            value: pf,
        });
    }
    Ok(cost * pf)
}

/// Share of `total_pcf` due to `part_pcf`; undefined when the total is zero.
pub fn importance_factor(part_pcf: f64, total_pcf: f64) -> Result<Ratio> {
    if !(total_pcf.is_finite() && total_pcf >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "total probable cost",
            value: total_pcf,
        });
    }
    if !(part_pcf >= 0.0 && part_pcf <= total_pcf * (1.0 + SHARE_TOLERANCE) + SHARE_TOLERANCE * f64::MIN_POSITIVE) {
        return Err(Error::InvalidParameter {
            name: "partial probable cost",
            value: part_pcf,
        });
    }
    if total_pcf == 0.0 {
        return Ok(Ratio::Undefined);
    }
    Ok(Ratio::Defined((part_pcf / total_pcf).min(1.0)))
}

/// Probable cost split into its direct and indirect parts, M€/year.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProbableCost {
    pub direct: f64,
    pub indirect: f64,
    pub total: f64,
}

impl ProbableCost {
    fn add(&mut self, other: &ProbableCost) {
        self.direct += other.direct;
        self.indirect += other.indirect;
        self.total += other.total;
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RiskCell {
    pub component: ComponentId,
    pub event_type: EventTypeId,
    /// Annual failure probability under this event type alone.
    pub pf: f64,
    pub probable_cost: ProbableCost,
    pub importance: Ratio,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentTotal {
    pub component: ComponentId,
    /// Failure under any event type.
    pub pf: f64,
    pub probable_cost: ProbableCost,
    pub importance: Ratio,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EventTotal {
    pub event_type: EventTypeId,
    pub probable_cost: ProbableCost,
    pub importance: Ratio,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LineTotal {
    pub line: LineId,
    /// Failure of any of the line's components.
    pub pf: f64,
    pub probable_cost: ProbableCost,
    pub importance: Ratio,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConnectionResult {
    pub from: NodeId,
    pub to: NodeId,
    pub pf: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Warning {
    /// The back-period removed every intensity of this hazard.
    EmptyHazard { event_type: EventTypeId, area: AreaId },
    /// Total probable cost is zero, so no importance factor is defined.
    UndefinedImportance,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RiskReport {
    pub back_period_years: Option<f64>,
    pub cells: Vec<RiskCell>,
    pub components: Vec<ComponentTotal>,
    pub events: Vec<EventTotal>,
    pub lines: Vec<LineTotal>,
    pub total: ProbableCost,
    pub connections: Vec<ConnectionResult>,
    pub warnings: Vec<Warning>,
}

impl RiskReport {
    pub fn component(&self, id: &ComponentId) -> Option<&ComponentTotal> {
        self.components.iter().find(|c| &c.component == id)
    }

    pub fn event(&self, id: &EventTypeId) -> Option<&EventTotal> {
        self.events.iter().find(|e| &e.event_type == id)
    }

    pub fn line(&self, id: &LineId) -> Option<&LineTotal> {
        self.lines.iter().find(|l| &l.line == id)
    }

    pub fn cell(&self, component: &ComponentId, event: &EventTypeId) -> Option<&RiskCell> {
        self.cells.iter().find(|c| &c.component == component && &c.event_type == event)
    }
}

/// Hazard curves after back-period truncation, with empty-hazard warnings.
fn effective_hazards(model: &RiskModel) -> (Vec<HazardCurve>, Vec<Warning>) {
    let mut warnings = Vec::new();
    let hazards = model
        .hazards()
        .iter()
        .map(|h| match model.back_period() {
            Some(bp) => {
                let t = h.truncate_by_back_period(bp);
                if t.empty {
                    warnings.push(Warning::EmptyHazard {
                        event_type: h.event_type().clone(),
                        area: h.area().clone(),
                    });
                }
                t.curve
            }
            None => h.clone(),
        })
        .collect();
    (hazards, warnings)
}

/// Runs the whole pipeline: truncated hazards, fragility convolution,
/// probable costs, totals, importance factors and connection queries.
pub fn evaluate(model: &RiskModel) -> Result<RiskReport> {
    let (hazards, mut warnings) = effective_hazards(model);

    let mut cells = Vec::new();
    let mut components = Vec::with_capacity(model.components().len());
    let mut combined_pf = BTreeMap::new();
    for c in model.components() {
        let cost = total_failure_cost(&c.cost);
        let mut per_event: Vec<AnnualFailureProbability> = Vec::with_capacity(c.fragilities.len());
        let mut component_pcf = ProbableCost::default();
        for f in &c.fragilities {
            let hazard = hazards
                .iter()
                .find(|h| h.event_type() == f.event_type() && h.area() == &c.area)
                .ok_or_else(|| Error::MissingHazard {
                    event: f.event_type().clone(),
                    area: c.area.as_str().into(),
                })?;
            let pf = component_annual_failure_probability(f, hazard)?;
            let direct = probable_cost(cost.direct, pf.value)?;
            let indirect = probable_cost(cost.indirect, pf.value)?;
            let pcf = ProbableCost {
                direct,
                indirect,
                total: direct + indirect,
            };
            component_pcf.add(&pcf);
            cells.push(RiskCell {
                component: c.id.clone(),
                event_type: f.event_type().clone(),
                pf: pf.value,
                probable_cost: pcf,
                importance: Ratio::Undefined,
            });
            per_event.push(pf);
        }
        let pf = combine_event_failure_probabilities(&per_event)?;
        combined_pf.insert(c.id.clone(), pf);
        components.push(ComponentTotal {
            component: c.id.clone(),
            pf,
            probable_cost: component_pcf,
            importance: Ratio::Undefined,
        });
    }

    let mut total = ProbableCost::default();
    let mut by_event: BTreeMap<EventTypeId, ProbableCost> = model.event_types().into_iter().map(|e| (e.clone(), ProbableCost::default())).collect();
    for cell in &cells {
        total.add(&cell.probable_cost);
        by_event.entry(cell.event_type.clone()).or_default().add(&cell.probable_cost);
    }

    let share = |part: f64| importance_factor(part, total.total);
    for cell in &mut cells {
        cell.importance = share(cell.probable_cost.total)?;
    }
    for c in &mut components {
        c.importance = share(c.probable_cost.total)?;
    }
    let events = by_event
        .into_iter()
        .map(|(event_type, probable_cost)| {
            Ok(EventTotal {
                event_type,
                probable_cost,
                importance: share(probable_cost.total)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut lines = Vec::with_capacity(model.network().lines().len());
    for line in model.network().lines() {
        let mut pcf = ProbableCost::default();
        let mut pfs = Vec::with_capacity(line.components().len());
        for id in line.components() {
            let c = components
                .iter()
                .find(|c| &c.component == id)
                .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
            pcf.add(&c.probable_cost);
            pfs.push(c.pf);
        }
        lines.push(LineTotal {
            line: line.id().clone(),
            pf: series_failure_probability(&pfs)?,
            probable_cost: pcf,
            importance: share(pcf.total)?,
        });
    }

    let connections = model
        .connection_queries()
        .iter()
        .map(|(from, to)| {
            Ok(ConnectionResult {
                from: from.clone(),
                to: to.clone(),
                pf: connection_failure_probability(model.network(), from, to, &combined_pf)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    if total.total == 0.0 {
        warnings.push(Warning::UndefinedImportance);
    }

    Ok(RiskReport {
        back_period_years: model.back_period().map(|bp| bp.years()),
        cells,
        components,
        events,
        lines,
        total,
        connections,
        warnings,
    })
}

/// Change of one probable cost between two reports.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Delta {
    pub base: f64,
    pub variant: f64,
    pub absolute: f64,
    /// `absolute / base`, undefined when the base is zero.
    pub relative: Ratio,
}

impl Delta {
    fn between(base: f64, variant: f64) -> Self {
        let absolute = variant - base;
        Self {
            base,
            variant,
            absolute,
            relative: Ratio::of(absolute, base),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NamedDelta<Id> {
    pub id: Id,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub delta: Delta,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WhatIfDelta {
    pub network: Delta,
    pub components: Vec<NamedDelta<ComponentId>>,
    pub events: Vec<NamedDelta<EventTypeId>>,
    pub lines: Vec<NamedDelta<LineId>>,
}

/// Per-item change of total probable cost from `base` to `variant`.
///
/// Events missing from one side count as zero there; components and lines
/// must match.
pub fn what_if_delta(base: &RiskReport, variant: &RiskReport) -> Result<WhatIfDelta> {
    let same_components = base.components.len() == variant.components.len()
        && base.components.iter().zip(&variant.components).all(|(a, b)| a.component == b.component);
    let same_lines = base.lines.len() == variant.lines.len() && base.lines.iter().zip(&variant.lines).all(|(a, b)| a.line == b.line);
    if !(same_components && same_lines) {
        return Err(Error::TopologyMismatch);
    }

    let components = base
        .components
        .iter()
        .zip(&variant.components)
        .map(|(a, b)| NamedDelta {
            id: a.component.clone(),
            delta: Delta::between(a.probable_cost.total, b.probable_cost.total),
        })
        .collect();
    let lines = base
        .lines
        .iter()
        .zip(&variant.lines)
        .map(|(a, b)| NamedDelta {
            id: a.line.clone(),
            delta: Delta::between(a.probable_cost.total, b.probable_cost.total),
        })
        .collect();
    let mut events: BTreeMap<&EventTypeId, (f64, f64)> = BTreeMap::new();
    for e in &base.events {
        events.entry(&e.event_type).or_default().0 = e.probable_cost.total;
    }
    for e in &variant.events {
        events.entry(&e.event_type).or_default().1 = e.probable_cost.total;
    }
    let events = events
        .into_iter()
        .map(|(id, (a, b))| NamedDelta {
            id: id.clone(),
            delta: Delta::between(a, b),
        })
        .collect();

    Ok(WhatIfDelta {
        network: Delta::between(base.total.total, variant.total.total),
        components,
        events,
        lines,
    })
}
