//! Document validation. Every check runs; all findings are returned
//! together instead of stopping at the first one.

use std::collections::{BTreeMap, BTreeSet};

use pcf_core::economics::{CostModel, IndirectCost, RecoveryFunction};
use pcf_core::fragility::{FragilityCurve, FragilityForm};
use pcf_core::hazard::{exceedance_to_occurrence, BackPeriod, ExceedanceCurve, HazardCurve, IntensityGrid, TruncateByBackPeriod};
use pcf_core::model::{apply_scenario, Component, Modification, RiskModel, Scenario};
use pcf_core::network::{connection_failure_probability, Line, Network};
use pcf_core::{ComponentId, Error as CoreError, EventTypeId, NodeId};

use crate::diagnostics::{Code, Diagnostic};
use crate::document::*;

/// Sum of occurrences above which a hazard is rejected.
const OCCURRENCE_SUM_LIMIT: f64 = 1.0 + 1e-12;

/// A model that passed validation, with the warnings found on the way.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub document: ModelDocument,
    pub model: RiskModel,
    pub warnings: Vec<Diagnostic>,
}

fn syntax(err: serde_json::Error) -> Diagnostic {
    Diagnostic::new(
        Code::Syntax,
        format!("{}:{}", err.line(), err.column()),
        format!("line {}, column {}: {err}", err.line(), err.column()),
    )
}

pub fn parse_document(bytes: &[u8]) -> Result<ModelDocument, Diagnostic> {
    serde_json::from_slice(bytes).map_err(syntax)
}

pub fn parse_scenario(bytes: &[u8]) -> Result<ScenarioDocument, Diagnostic> {
    serde_json::from_slice(bytes).map_err(syntax)
}

/// Parses and validates a model document.
pub fn load_model(bytes: &[u8]) -> Result<LoadedModel, Vec<Diagnostic>> {
    let doc = parse_document(bytes).map_err(|d| vec![d])?;
    build_model(doc)
}

pub fn build_model(document: ModelDocument) -> Result<LoadedModel, Vec<Diagnostic>> {
    let mut findings = check_document(&document);
    if findings.iter().any(Diagnostic::is_error) {
        return Err(findings);
    }
    let model = to_model(&document).map_err(|e| vec![from_core(&e, "")])?;
    if let Some(bp) = model.back_period() {
        for (i, h) in model.hazards().iter().enumerate() {
            if !h.is_empty() && h.truncate_by_back_period(bp).empty {
                findings.push(Diagnostic::new(
                    Code::EmptyAfterBackPeriod,
                    format!("hazards[{i}]"),
                    format!(
                        "no intensity of `{}` in `{}` reaches 1/{} per year",
                        h.event_type(),
                        h.area(),
                        bp.years()
                    ),
                ));
            }
        }
    }
    Ok(LoadedModel {
        document,
        model,
        warnings: findings,
    })
}

/// Best-effort mapping of a core error onto a diagnostic code.
pub fn from_core(err: &CoreError, path: &str) -> Diagnostic {
    let code = match err {
        CoreError::GridTooShort(_) => Code::GridTooShort,
        CoreError::GridValue { .. } => Code::GridValue,
        CoreError::GridNotIncreasing(_) => Code::GridNotIncreasing,
        CoreError::LengthMismatch { .. } => Code::HazardLength,
        CoreError::ProbabilityOutOfRange { .. } => Code::HazardProbabilityRange,
        CoreError::ExceedanceNotMonotone(_) => Code::ExceedanceNotMonotone,
        CoreError::OccurrenceSumExceedsOne(_) => Code::OccurrenceSum,
        CoreError::InvalidBackPeriod(_) => Code::BackPeriod,
        CoreError::InvalidParameter { name, .. } if name.contains("cost") => Code::NegativeCost,
        CoreError::InvalidParameter { .. } => Code::FragilityParameter,
        CoreError::FragilityTableOrder(_) => Code::FragilityTableOrder,
        CoreError::NegativeIntensity(_) => Code::GridValue,
        CoreError::EventTypeMismatch { .. } => Code::MissingHazard,
        CoreError::MixedComponents(..) => Code::UnknownComponent,
        CoreError::Empty(_) => Code::FragilityFields,
        CoreError::RecoveryFunction(_) => Code::RecoveryPoints,
        CoreError::UnknownNode(_) => Code::UnknownNode,
        CoreError::UnknownComponent(_) | CoreError::MissingProbability(_) => Code::UnknownComponent,
        CoreError::UnknownEventType(_) | CoreError::UnknownFragility { .. } => Code::UnknownEventType,
        CoreError::DuplicateId(_) => Code::DuplicateId,
        CoreError::MissingHazard { .. } => Code::MissingHazard,
        CoreError::InvalidLine(..) => Code::LineEndpoints,
        CoreError::SharedComponent(_) => Code::SharedComponent,
        CoreError::SameEndpoints(_) => Code::QueryEndpoints,
        CoreError::UnsupportedTopology { .. } | CoreError::TopologyMismatch => Code::UnsupportedTopology,
    };
    Diagnostic::new(code, path, err.to_string())
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

#[derive(Default)]
struct Checker {
    found: Vec<Diagnostic>,
}

impl Checker {
    fn push(&mut self, code: Code, path: impl Into<String>, message: impl Into<String>) {
        self.found.push(Diagnostic::new(code, path, message));
    }

    /// Records duplicates among `ids`, returning the set of distinct ones.
    fn unique<'a>(&mut self, section: &str, ids: impl Iterator<Item = &'a str>) -> BTreeSet<&'a str> {
        let mut seen = BTreeSet::new();
        for (i, id) in ids.enumerate() {
            if !seen.insert(id) {
                self.push(Code::DuplicateId, format!("{section}[{i}]"), format!("`{id}` is declared more than once"));
            }
        }
        seen
    }

    fn probabilities(&mut self, path: &str, values: &[f64]) -> bool {
        match values.iter().position(|p| !(0.0..=1.0).contains(p)) {
            Some(k) => {
                self.push(
                    Code::HazardProbabilityRange,
                    format!("{path}[{k}]"),
                    format!("probability {} is outside [0, 1]", values[k]),
                );
                false
            }
            None => true,
        }
    }

    fn grid(&mut self, path: &str, grid: &[f64]) -> bool {
        if grid.len() < 2 {
            self.push(Code::GridTooShort, path, format!("needs at least 2 intensities, got {}", grid.len()));
            return false;
        }
        if let Some(k) = grid.iter().position(|v| !v.is_finite() || *v < 0.0) {
            self.push(Code::GridValue, format!("{path}[{k}]"), format!("intensity {} is negative", grid[k]));
            return false;
        }
        if let Some(k) = grid.windows(2).position(|w| w[1] <= w[0]) {
            self.push(
                Code::GridNotIncreasing,
                format!("{path}[{}]", k + 1),
                "intensities must be strictly increasing",
            );
            return false;
        }
        true
    }

    fn cost(&mut self, path: &str, c: &CostRecord) {
        if c.direct < 0.0 {
            self.push(Code::NegativeCost, format!("{path}.direct"), format!("direct cost {} is negative", c.direct));
        }
        match (&c.indirect_lump, &c.recovery) {
            (Some(v), None) => {
                if *v < 0.0 {
                    self.push(Code::NegativeCost, format!("{path}.indirect_lump"), format!("indirect cost {v} is negative"));
                }
            }
            (None, Some(r)) => {
                let rpath = format!("{path}.recovery");
                if !positive(r.downtime) {
                    self.push(Code::RecoveryDowntime, format!("{rpath}.downtime"), "downtime must be positive");
                }
                if r.points.is_empty() {
                    self.push(Code::RecoveryPoints, format!("{rpath}.points"), "needs at least one loss-rate point");
                }
                for (k, &(t, rate)) in r.points.iter().enumerate() {
                    if r.downtime > 0.0 && !(0.0..=r.downtime).contains(&t) {
                        self.push(Code::RecoveryPoints, format!("{rpath}.points[{k}]"), format!("day {t} is outside [0, {}]", r.downtime));
                    }
                    if rate < 0.0 {
                        self.push(Code::RecoveryRate, format!("{rpath}.points[{k}]"), format!("loss rate {rate} is negative"));
                    }
                }
                if let Some(k) = r.points.windows(2).position(|w| w[1].0 <= w[0].0) {
                    self.push(Code::RecoveryPoints, format!("{rpath}.points[{}]", k + 1), "days must be strictly increasing");
                }
            }
            _ => self.push(
                Code::IndirectForm,
                path,
                "exactly one of `indirect_lump` or `recovery` is required",
            ),
        }
    }
}

/// All findings for the document, errors and warnings.
pub fn check_document(doc: &ModelDocument) -> Vec<Diagnostic> {
    let mut ck = Checker::default();

    if !SUPPORTED_VERSIONS.contains(&doc.metadata.version.as_str()) {
        ck.push(
            Code::UnsupportedVersion,
            "metadata.version",
            format!("version `{}` is not supported (expected one of {:?})", doc.metadata.version, SUPPORTED_VERSIONS),
        );
    }

    let areas = ck.unique("areas", doc.areas.iter().map(|a| a.id.as_str()));
    let events = ck.unique("event_types", doc.event_types.iter().map(|e| e.id.as_str()));
    let costs = ck.unique("cost_models", doc.cost_models.iter().map(|c| c.id.as_str()));
    let components = ck.unique("components", doc.components.iter().map(|c| c.id.as_str()));
    let nodes = ck.unique("nodes", doc.nodes.iter().map(String::as_str));
    ck.unique("lines", doc.lines.iter().map(|l| l.id.as_str()));

    // (event, area) -> unit
    let mut hazard_units: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    for (i, h) in doc.hazards.iter().enumerate() {
        let path = format!("hazards[{i}]");
        if !events.contains(h.event_type.as_str()) {
            ck.push(Code::UnknownEventType, format!("{path}.event_type"), format!("unknown event type `{}`", h.event_type));
        }
        if !areas.contains(h.area.as_str()) {
            ck.push(Code::UnknownArea, format!("{path}.area"), format!("unknown area `{}`", h.area));
        }
        if hazard_units.insert((&h.event_type, &h.area), &h.unit).is_some() {
            ck.push(
                Code::DuplicateHazard,
                path.clone(),
                format!("second hazard for `{}` in `{}`", h.event_type, h.area),
            );
        }
        ck.grid(&format!("{path}.grid"), &h.grid);
        let (wanted, field, other) = match h.kind {
            HazardKind::Exceedance => (&h.exceedance, "exceedance", &h.occurrence),
            HazardKind::Occurrence => (&h.occurrence, "occurrence", &h.exceedance),
        };
        if other.is_some() {
            ck.push(Code::HazardFields, path.clone(), format!("a `{field}` hazard must not carry the other probability array"));
        }
        let Some(values) = wanted else {
            ck.push(Code::HazardFields, path.clone(), format!("`{field}` array is required for kind `{field}`"));
            continue;
        };
        let vpath = format!("{path}.{field}");
        if values.len() != h.grid.len() {
            ck.push(
                Code::HazardLength,
                vpath.clone(),
                format!("{} probabilities for {} grid values", values.len(), h.grid.len()),
            );
        }
        if !ck.probabilities(&vpath, values) {
            continue;
        }
        match h.kind {
            HazardKind::Exceedance => {
                if let Some(k) = values.windows(2).position(|w| w[1] > w[0]) {
                    ck.push(
                        Code::ExceedanceNotMonotone,
                        format!("{vpath}[{}]", k + 1),
                        format!("exceedance increases from {} to {} at index {}", values[k], values[k + 1], k + 1),
                    );
                }
            }
            HazardKind::Occurrence => {
                let sum: f64 = values.iter().sum();
                if sum > OCCURRENCE_SUM_LIMIT {
                    ck.push(Code::OccurrenceSum, vpath, format!("occurrences sum to {sum}, more than 1"));
                }
            }
        }
    }

    for (i, c) in doc.cost_models.iter().enumerate() {
        ck.cost(&format!("cost_models[{i}]"), c);
    }

    let mut component_area: BTreeMap<&str, &str> = BTreeMap::new();
    for (i, c) in doc.components.iter().enumerate() {
        let path = format!("components[{i}]");
        if !areas.contains(c.area.as_str()) {
            ck.push(Code::UnknownArea, format!("{path}.area"), format!("unknown area `{}`", c.area));
        }
        if !costs.contains(c.cost_ref.as_str()) {
            ck.push(Code::UnknownCostModel, format!("{path}.cost_ref"), format!("unknown cost model `{}`", c.cost_ref));
        }
        component_area.entry(&c.id).or_insert(&c.area);
    }

    let mut exposed = BTreeSet::new();
    for (i, f) in doc.fragilities.iter().enumerate() {
        let path = format!("fragilities[{i}]");
        let area = component_area.get(f.component.as_str()).copied();
        if area.is_none() {
            ck.push(Code::UnknownComponent, format!("{path}.component"), format!("unknown component `{}`", f.component));
        }
        if !events.contains(f.event_type.as_str()) {
            ck.push(Code::UnknownEventType, format!("{path}.event_type"), format!("unknown event type `{}`", f.event_type));
        }
        if !exposed.insert((f.component.as_str(), f.event_type.as_str())) {
            ck.push(
                Code::DuplicateFragility,
                path.clone(),
                format!("second fragility for `{}` under `{}`", f.component, f.event_type),
            );
        }
        match (f.form, f.median, f.beta, &f.points) {
            (FragilityFormTag::Lognormal, Some(median), Some(beta), None) => {
                if !positive(median) {
                    ck.push(Code::FragilityParameter, format!("{path}.median"), format!("median {median} must be positive"));
                }
                if !positive(beta) {
                    ck.push(Code::FragilityParameter, format!("{path}.beta"), format!("beta {beta} must be positive"));
                }
            }
            (FragilityFormTag::Tabulated, None, None, Some(points)) => {
                if points.is_empty() {
                    ck.push(Code::FragilityFields, format!("{path}.points"), "needs at least one point");
                }
                if let Some(k) = points.iter().position(|p| !(0.0..=1.0).contains(&p.1)) {
                    ck.push(
                        Code::FragilityTableProbability,
                        format!("{path}.points[{k}]"),
                        format!("probability {} is outside [0, 1]", points[k].1),
                    );
                }
                if let Some(k) = points.iter().position(|p| !p.0.is_finite() || p.0 < 0.0) {
                    ck.push(Code::FragilityTableOrder, format!("{path}.points[{k}]"), "intensity must be non-negative");
                }
                if let Some(k) = points.windows(2).position(|w| w[1].0 <= w[0].0 || w[1].1 < w[0].1) {
                    ck.push(
                        Code::FragilityTableOrder,
                        format!("{path}.points[{}]", k + 1),
                        "intensities must increase strictly and probabilities must not decrease",
                    );
                }
            }
            (FragilityFormTag::Lognormal, ..) => {
                ck.push(Code::FragilityFields, path.clone(), "`lognormal` takes `median` and `beta` only");
            }
            (FragilityFormTag::Tabulated, ..) => {
                ck.push(Code::FragilityFields, path.clone(), "`tabulated` takes `points` only");
            }
        }
        if let Some(area) = area {
            match hazard_units.get(&(f.event_type.as_str(), area)) {
                None => ck.push(
                    Code::MissingHazard,
                    path.clone(),
                    format!("no `{}` hazard for area `{area}` of component `{}`", f.event_type, f.component),
                ),
                Some(&unit) if unit != f.unit => ck.push(
                    Code::UnitMismatch,
                    format!("{path}.unit"),
                    format!("fragility in `{}` but the hazard is in `{unit}`", f.unit),
                ),
                Some(_) => {}
            }
        }
    }

    let mut line_of: BTreeMap<&str, &str> = BTreeMap::new();
    for (i, l) in doc.lines.iter().enumerate() {
        let path = format!("lines[{i}]");
        for (field, n) in [("from", &l.from), ("to", &l.to)] {
            if !nodes.contains(n.as_str()) {
                ck.push(Code::UnknownNode, format!("{path}.{field}"), format!("unknown node `{n}`"));
            }
        }
        if l.from == l.to {
            ck.push(Code::LineEndpoints, path.clone(), format!("line starts and ends at `{}`", l.from));
        }
        if l.components.is_empty() {
            ck.push(Code::LineEmpty, format!("{path}.components"), "a line needs at least one critical component");
        }
        let mut on_line = BTreeSet::new();
        for (k, c) in l.components.iter().enumerate() {
            let cpath = format!("{path}.components[{k}]");
            if !components.contains(c.as_str()) {
                ck.push(Code::UnknownComponent, cpath.clone(), format!("unknown component `{c}`"));
            }
            if !on_line.insert(c.as_str()) {
                ck.push(Code::LineDuplicateComponent, cpath, format!("`{c}` appears twice on the line"));
            } else if let Some(other) = line_of.insert(c, &l.id) {
                ck.push(
                    Code::SharedComponent,
                    cpath,
                    format!("`{c}` is already on line `{other}`; lines must fail independently"),
                );
            }
        }
    }

    if let Some(t) = doc.analysis.back_period_years {
        if !positive(t) {
            ck.push(Code::BackPeriod, "analysis.back_period_years", format!("back-period {t} must be positive"));
        }
    }
    let network_errors = ck.found.iter().any(|d| {
        matches!(
            d.code,
            Code::UnknownNode | Code::LineEndpoints | Code::LineEmpty | Code::LineDuplicateComponent | Code::SharedComponent | Code::DuplicateId
        )
    });
    let network = if network_errors { None } else { to_network(doc).ok() };
    let probe: BTreeMap<ComponentId, f64> = doc.components.iter().map(|c| (ComponentId::from(c.id.as_str()), 0.5)).collect();
    for (i, q) in doc.analysis.connection_queries.iter().enumerate() {
        let path = format!("analysis.connection_queries[{i}]");
        let mut known = true;
        for (field, n) in [("from", &q.from), ("to", &q.to)] {
            if !nodes.contains(n.as_str()) {
                ck.push(Code::UnknownNode, format!("{path}.{field}"), format!("unknown node `{n}`"));
                known = false;
            }
        }
        if q.from == q.to {
            ck.push(Code::QueryEndpoints, path.clone(), "query endpoints must differ");
            continue;
        }
        if let (true, Some(net)) = (known, &network) {
            if let Err(e @ CoreError::UnsupportedTopology { .. }) =
                connection_failure_probability(net, &q.from.as_str().into(), &q.to.as_str().into(), &probe)
            {
                ck.push(Code::UnsupportedTopology, path, e.to_string());
            }
        }
    }

    for (i, c) in doc.components.iter().enumerate() {
        if !exposed.iter().any(|(comp, _)| *comp == c.id) {
            ck.push(Code::UnexposedComponent, format!("components[{i}]"), format!("`{}` has no fragility curve", c.id));
        }
        if !doc.lines.is_empty() && !line_of.contains_key(c.id.as_str()) {
            ck.push(Code::OffNetworkComponent, format!("components[{i}]"), format!("`{}` is on no line", c.id));
        }
    }

    ck.found
}

fn to_cost(c: &CostRecord) -> Result<CostModel, CoreError> {
    let indirect = match (&c.indirect_lump, &c.recovery) {
        (Some(v), _) => IndirectCost::LumpSum(*v),
        (None, Some(r)) => IndirectCost::Recovery(RecoveryFunction::new(r.downtime, r.points.clone())?),
        (None, None) => IndirectCost::LumpSum(0.0),
    };
    CostModel::new(c.id.as_str().into(), c.direct, indirect)
}

fn to_hazard(h: &HazardRecord) -> Result<HazardCurve, CoreError> {
    let grid = IntensityGrid::new(h.event_type.as_str().into(), h.unit.clone(), h.grid.clone())?;
    let area = h.area.as_str().into();
    match h.kind {
        HazardKind::Exceedance => {
            let exc = ExceedanceCurve::new(area, grid, h.exceedance.clone().unwrap_or_default())?;
            Ok(exceedance_to_occurrence(&exc))
        }
        HazardKind::Occurrence => HazardCurve::from_point_masses(area, grid, h.occurrence.clone().unwrap_or_default()),
    }
}

fn to_fragility(f: &FragilityRecord) -> Result<FragilityCurve, CoreError> {
    let form = match f.form {
        FragilityFormTag::Lognormal => FragilityForm::Lognormal {
            median: f.median.unwrap_or(f64::NAN),
            beta: f.beta.unwrap_or(f64::NAN),
        },
        FragilityFormTag::Tabulated => FragilityForm::Tabulated {
            points: f.points.clone().unwrap_or_default(),
        },
    };
    FragilityCurve::new(f.component.as_str().into(), f.event_type.as_str().into(), form)
}

fn to_network(doc: &ModelDocument) -> Result<Network, CoreError> {
    let lines = doc
        .lines
        .iter()
        .map(|l| {
            Line::new(
                l.id.as_str().into(),
                l.from.as_str().into(),
                l.to.as_str().into(),
                l.components.iter().map(|c| c.as_str().into()).collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Network::new(doc.nodes.iter().map(|n| NodeId::from(n.as_str())).collect(), lines)
}

fn to_model(doc: &ModelDocument) -> Result<RiskModel, CoreError> {
    let hazards = doc.hazards.iter().map(to_hazard).collect::<Result<Vec<_>, _>>()?;
    let costs: BTreeMap<&str, CostModel> = doc
        .cost_models
        .iter()
        .map(|c| Ok((c.id.as_str(), to_cost(c)?)))
        .collect::<Result<_, CoreError>>()?;
    let mut components = Vec::with_capacity(doc.components.len());
    for c in &doc.components {
        let fragilities = doc
            .fragilities
            .iter()
            .filter(|f| f.component == c.id)
            .map(to_fragility)
            .collect::<Result<Vec<_>, _>>()?;
        components.push(Component {
            id: c.id.as_str().into(),
            kind: c.kind.clone(),
            area: c.area.as_str().into(),
            fragilities,
            cost: costs[c.cost_ref.as_str()].clone(),
        });
    }
    let back_period = doc.analysis.back_period_years.map(BackPeriod::new).transpose()?;
    let queries = doc
        .analysis
        .connection_queries
        .iter()
        .map(|q| (q.from.as_str().into(), q.to.as_str().into()))
        .collect();
    RiskModel::new(hazards, components, to_network(doc)?, back_period, queries)
}

/// Checks a scenario against `model` and converts it.
pub fn build_scenario(record: &ScenarioRecord, model: &RiskModel) -> Result<Scenario, Vec<Diagnostic>> {
    let mut ck = Checker::default();
    let events = model.event_types();
    let mut modifications = Vec::with_capacity(record.modifications.len());
    for (i, m) in record.modifications.iter().enumerate() {
        let path = format!("scenario.modifications[{i}]");
        match m {
            ModificationRecord::RemoveEvent { event_type } => {
                let id = EventTypeId::from(event_type.as_str());
                if !events.contains(&&id) {
                    ck.push(Code::UnknownEventType, format!("{path}.remove_event.event_type"), format!("unknown event type `{event_type}`"));
                }
                modifications.push(Modification::RemoveEvent { event_type: id });
            }
            ModificationRecord::Retrofit {
                component,
                event_type,
                median_scale,
            } => {
                let cid = ComponentId::from(component.as_str());
                let eid = EventTypeId::from(event_type.as_str());
                match model.component(&cid) {
                    None => ck.push(Code::UnknownComponent, format!("{path}.retrofit.component"), format!("unknown component `{component}`")),
                    Some(c) if c.fragility(&eid).is_none() => ck.push(
                        Code::UnknownEventType,
                        format!("{path}.retrofit.event_type"),
                        format!("`{component}` has no fragility for `{event_type}`"),
                    ),
                    Some(_) => {}
                }
                if !positive(*median_scale) {
                    ck.push(
                        Code::FragilityParameter,
                        format!("{path}.retrofit.median_scale"),
                        format!("median scale {median_scale} must be positive"),
                    );
                }
                modifications.push(Modification::Retrofit {
                    component: cid,
                    event_type: eid,
                    median_scale: *median_scale,
                });
            }
            ModificationRecord::SetCost { component, cost } => {
                let cid = ComponentId::from(component.as_str());
                if model.component(&cid).is_none() {
                    ck.push(Code::UnknownComponent, format!("{path}.set_cost.component"), format!("unknown component `{component}`"));
                }
                let before = ck.found.len();
                ck.cost(&format!("{path}.set_cost.cost"), cost);
                if ck.found.len() == before {
                    match to_cost(cost) {
                        Ok(cost) => modifications.push(Modification::SetCost { component: cid, cost }),
                        Err(e) => ck.found.push(from_core(&e, &format!("{path}.set_cost.cost"))),
                    }
                }
            }
            ModificationRecord::SetBackPeriod { years } => {
                if !positive(*years) {
                    ck.push(Code::BackPeriod, format!("{path}.set_back_period.years"), format!("back-period {years} must be positive"));
                }
                modifications.push(Modification::SetBackPeriod { years: *years });
            }
        }
    }
    if !ck.found.is_empty() {
        return Err(ck.found);
    }
    Ok(Scenario {
        name: record.name.clone(),
        modifications,
    })
}

/// Validates and applies a scenario, returning the variant model.
pub fn scenario_variant(record: &ScenarioRecord, model: &RiskModel) -> Result<RiskModel, Vec<Diagnostic>> {
    let scenario = build_scenario(record, model)?;
    apply_scenario(model, &scenario).map_err(|e| vec![from_core(&e, "scenario")])
}
