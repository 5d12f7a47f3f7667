//! Sampled curves for external plotting.
//!
//! Targets name a fragility or failure curve by `component/event` and a
//! hazard by `event/area`.

use pcf_core::fragility::{fragility_eval, FragilityCurve, FragilityForm};
use pcf_core::hazard::{HazardCurve, TruncateByBackPeriod};
use pcf_core::model::{Component, RiskModel};
use pcf_core::{AreaId, ComponentId, EventTypeId};
use serde::{Deserialize, Serialize};

/// Evenly spaced samples of a fragility curve, before knots are added.
pub const FRAGILITY_SAMPLES: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// Failure probability given intensity.
    Fragility,
    /// Annual exceedance probability at each bin's lower intensity.
    Hazard,
    /// Fragility at each bin's representative intensity times the bin's
    /// occurrence probability. Sums to the annual failure probability.
    Failure,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub kind: CurveKind,
    pub target: String,
    pub unit: String,
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// Not of the form `a/b`.
    MalformedTarget(String),
    UnknownTarget(String),
}

impl std::fmt::Display for CurveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::MalformedTarget(t) => write!(f, "target `{t}` is not of the form `a/b`"),
            Self::UnknownTarget(t) => write!(f, "no curve for target `{t}`"),
        }
    }
}

impl std::error::Error for CurveError {}

fn split(target: &str) -> Result<(&str, &str), CurveError> {
    match target.split_once('/') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a, b)),
        _ => Err(CurveError::MalformedTarget(target.into())),
    }
}

fn component_curve<'m>(model: &'m RiskModel, target: &str) -> Result<(&'m Component, &'m FragilityCurve), CurveError> {
    let (component, event) = split(target)?;
    let unknown = || CurveError::UnknownTarget(target.into());
    let c = model.component(&ComponentId::from(component)).ok_or_else(unknown)?;
    let f = c.fragility(&EventTypeId::from(event)).ok_or_else(unknown)?;
    Ok((c, f))
}

fn sample_fragility(curve: &FragilityCurve) -> Vec<CurvePoint> {
    let (top, knots): (f64, Vec<f64>) = match curve.form() {
        FragilityForm::Lognormal { median, beta } => (median * (4.0 * beta).exp(), vec![*median]),
        FragilityForm::Tabulated { points } => {
            let last = points.last().map_or(1.0, |p| p.0);
            (if last > 0.0 { last * 1.25 } else { 1.0 }, points.iter().map(|p| p.0).collect())
        }
    };
    let step = top / (FRAGILITY_SAMPLES - 1) as f64;
    let mut xs: Vec<f64> = (0..FRAGILITY_SAMPLES).map(|i| i as f64 * step).collect();
    xs.extend(knots);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.into_iter()
        .map(|x| CurvePoint {
            x,
            y: fragility_eval(curve, x).expect("grid intensities are non-negative"),
        })
        .collect()
}

fn hazard_points(h: &HazardCurve) -> Vec<CurvePoint> {
    h.bins().iter().map(|b| CurvePoint { x: b.lower, y: b.exceedance }).collect()
}

fn effective(model: &RiskModel, h: &HazardCurve) -> HazardCurve {
    match model.back_period() {
        Some(bp) => h.truncate_by_back_period(bp).curve,
        None => h.clone(),
    }
}

/// Samples one curve of `model`. Hazard and failure curves reflect the
/// model's back-period.
pub fn sample(model: &RiskModel, kind: CurveKind, target: &str) -> Result<CurveData, CurveError> {
    let (unit, points) = match kind {
        CurveKind::Fragility => {
            let (c, f) = component_curve(model, target)?;
            let unit = model.hazard(f.event_type(), &c.area).map(|h| h.unit().to_owned()).unwrap_or_default();
            (unit, sample_fragility(f))
        }
        CurveKind::Hazard => {
            let (event, area) = split(target)?;
            let h = model
                .hazard(&EventTypeId::from(event), &AreaId::from(area))
                .ok_or_else(|| CurveError::UnknownTarget(target.into()))?;
            (h.unit().to_owned(), hazard_points(&effective(model, h)))
        }
        CurveKind::Failure => {
            let (c, f) = component_curve(model, target)?;
            let h = model
                .hazard(f.event_type(), &c.area)
                .ok_or_else(|| CurveError::UnknownTarget(target.into()))?;
            let h = effective(model, h);
            let points = h
                .bins()
                .iter()
                .map(|b| CurvePoint {
                    x: b.representative,
                    y: fragility_eval(f, b.representative).expect("bin intensities are non-negative") * b.occurrence,
                })
                .collect();
            (h.unit().to_owned(), points)
        }
    };
    Ok(CurveData {
        kind,
        target: target.into(),
        unit,
        points,
    })
}

/// `x,y` CSV of the points.
pub fn to_csv(curve: &CurveData) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in &curve.points {
        w.serialize(p).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}
