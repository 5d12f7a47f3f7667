//! Fragility curves `P(failure | intensity)` and their convolution with
//! hazard occurrence into annual component failure probabilities.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hazard::HazardCurve;
use crate::ids::{ComponentId, EventTypeId};

/// Standard normal cumulative distribution.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FragilityForm {
    /// `Φ(ln(x / median) / beta)`.
    Lognormal { median: f64, beta: f64 },
    /// `(intensity, probability)` points, linearly interpolated.
    Tabulated { points: Vec<(f64, f64)> },
}

impl FragilityForm {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Lognormal { median, beta } => {
                if !(median.is_finite() && *median > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "median",
                        value: *median,
                    });
                }
                if !(beta.is_finite() && *beta > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "beta",
                        value: *beta,
                    });
                }
            }
            Self::Tabulated { points } => {
                if points.is_empty() {
                    return Err(Error::Empty("fragility table"));
                }
                for (index, &(x, p)) in points.iter().enumerate() {
                    if !x.is_finite() || x < 0.0 {
                        return Err(Error::GridValue { index, value: x });
                    }
                    if !(0.0..=1.0).contains(&p) {
                        return Err(Error::ProbabilityOutOfRange {
                            what: "fragility table probability",
                            index,
                            value: p,
                        });
                    }
                }
                if let Some(i) = points.windows(2).position(|w| w[1].0 <= w[0].0 || w[1].1 < w[0].1) {
                    return Err(Error::FragilityTableOrder(i + 1));
                }
            }
        }
        Ok(())
    }

    fn eval(&self, intensity: f64) -> f64 {
        if intensity == 0.0 {
            return 0.0;
        }
        match self {
            Self::Lognormal { median, beta } => standard_normal_cdf(libm::log(intensity / median) / beta),
            Self::Tabulated { points } => {
                let (x0, p0) = points[0];
                let (xn, pn) = points[points.len() - 1];
                if intensity <= x0 {
                    return p0;
                }
                if intensity >= xn {
                    return pn;
                }
                // First point strictly above the intensity; always in 1..len.
                let hi = points.partition_point(|&(x, _)| x <= intensity);
                let (xa, pa) = points[hi - 1];
                let (xb, pb) = points[hi];
                pa + (pb - pa) * (intensity - xa) / (xb - xa)
            }
        }
    }

    /// Shifts the curve toward higher intensities by `scale`.
    pub(crate) fn scaled(&self, scale: f64) -> Self {
        match self {
            Self::Lognormal { median, beta } => Self::Lognormal {
                median: median * scale,
                beta: *beta,
            },
            Self::Tabulated { points } => Self::Tabulated {
                points: points.iter().map(|&(x, p)| (x * scale, p)).collect(),
            },
        }
    }
}

/// Conditional failure probability of one component under one event type.
#[derive(Debug, Clone, PartialEq)]
pub struct FragilityCurve {
    component: ComponentId,
    event_type: EventTypeId,
    form: FragilityForm,
}

impl FragilityCurve {
    pub fn new(component: ComponentId, event_type: EventTypeId, form: FragilityForm) -> Result<Self> {
        form.validate()?;
        Ok(Self {
            component,
            event_type,
            form,
        })
    }

    pub fn lognormal(component: ComponentId, event_type: EventTypeId, median: f64, beta: f64) -> Result<Self> {
        Self::new(component, event_type, FragilityForm::Lognormal { median, beta })
    }

    pub fn component(&self) -> &ComponentId {
        &self.component
    }

    pub fn event_type(&self) -> &EventTypeId {
        &self.event_type
    }

    pub fn form(&self) -> &FragilityForm {
        &self.form
    }

    pub(crate) fn retrofitted(&self, median_scale: f64) -> Result<Self> {
        if !(median_scale.is_finite() && median_scale > 0.0) {
            return Err(Error::InvalidParameter {
                name: "median_scale",
                value: median_scale,
            });
        }
        Self::new(self.component.clone(), self.event_type.clone(), self.form.scaled(median_scale))
    }
}

/// `P(FI >= FL | EI = intensity)`. Zero at zero intensity.
pub fn fragility_eval(curve: &FragilityCurve, intensity: f64) -> Result<f64> {
    if intensity.is_nan() || intensity < 0.0 {
        return Err(Error::NegativeIntensity(intensity));
    }
    Ok(curve.form.eval(intensity).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnualFailureProbability {
    pub component: ComponentId,
    pub event_type: EventTypeId,
    pub value: f64,
}

/// `Σ_k fragility(bin_k) · occurrence_k` over the hazard's bins.
pub fn component_annual_failure_probability(curve: &FragilityCurve, hazard: &HazardCurve) -> Result<AnnualFailureProbability> {
    if curve.event_type != *hazard.event_type() {
        return Err(Error::EventTypeMismatch {
            fragility: curve.event_type.clone(),
            hazard: hazard.event_type().clone(),
        });
    }
    let mut value = 0.0;
    for bin in hazard.bins() {
        value += curve.form.eval(bin.representative).clamp(0.0, 1.0) * bin.occurrence;
    }
    Ok(AnnualFailureProbability {
        component: curve.component.clone(),
        event_type: curve.event_type.clone(),
        value: value.clamp(0.0, 1.0),
    })
}

/// `1 − Π_e (1 − p_e)`: failure under at least one event type, with event
/// types occurring independently. An empty list means no exposure.
pub fn combine_event_failure_probabilities(per_event: &[AnnualFailureProbability]) -> Result<f64> {
    for (index, p) in per_event.iter().enumerate() {
        if p.component != per_event[0].component {
            return Err(Error::MixedComponents(per_event[0].component.clone(), p.component.clone()));
        }
        if !(0.0..=1.0).contains(&p.value) {
            return Err(Error::ProbabilityOutOfRange {
                what: "failure probability",
                index,
                value: p.value,
            });
        }
    }
    Ok(crate::network::series(per_event.iter().map(|p| p.value)))
}
