//! Annual occurrence models for natural hazards and malicious events.
//!
//! A hazard is given either as an exceedance curve, `P(intensity >= v)` per
//! year at each grid value, or directly as point masses. Both end up as a
//! [`HazardCurve`]: a list of intensity bins carrying the annual probability
//! that this year's event falls in the bin. Whatever mass is left over is the
//! probability that nothing happens this year.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ids::{AreaId, EventTypeId};

/// Slack allowed on probability sums before they count as exceeding 1.
pub(crate) const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct IntensityGrid {
    event_type: EventTypeId,
    unit: String,
    values: Vec<f64>,
}

impl IntensityGrid {
    pub fn new(event_type: EventTypeId, unit: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::GridTooShort(values.len()));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::GridValue { index, value });
            }
        }
        if let Some(i) = values.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::GridNotIncreasing(i + 1));
        }
        Ok(Self {
            event_type,
            unit: unit.into(),
            values,
        })
    }

    pub fn event_type(&self) -> &EventTypeId {
        &self.event_type
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_probabilities(what: &'static str, values: &[f64]) -> Result<()> {
    for (index, &value) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::ProbabilityOutOfRange { what, index, value });
        }
    }
    Ok(())
}

/// Annual exceedance probabilities `P(intensity >= grid[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceedanceCurve {
    area: AreaId,
    grid: IntensityGrid,
    exceedance: Vec<f64>,
}

impl ExceedanceCurve {
    pub fn new(area: AreaId, grid: IntensityGrid, exceedance: Vec<f64>) -> Result<Self> {
        if exceedance.len() != grid.len() {
            return Err(Error::LengthMismatch {
                what: "exceedance",
                expected: grid.len(),
                found: exceedance.len(),
            });
        }
        check_probabilities("exceedance", &exceedance)?;
        if let Some(i) = exceedance.windows(2).position(|w| w[1] > w[0]) {
            return Err(Error::ExceedanceNotMonotone(i + 1));
        }
        Ok(Self {
            area,
            grid,
            exceedance,
        })
    }

    pub fn event_type(&self) -> &EventTypeId {
        self.grid.event_type()
    }

    pub fn area(&self) -> &AreaId {
        &self.area
    }

    pub fn grid(&self) -> &IntensityGrid {
        &self.grid
    }

    pub fn exceedance(&self) -> &[f64] {
        &self.exceedance
    }
}

/// One intensity bin of a [`HazardCurve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HazardBin {
    /// Lower grid value of the bin.
    pub lower: f64,
    /// Upper grid value, `None` for the open-ended top bin. Point masses
    /// have `upper == Some(lower)`.
    pub upper: Option<f64>,
    /// Intensity the bin is evaluated at.
    pub representative: f64,
    /// Annual probability that the year's event falls in this bin.
    pub occurrence: f64,
    /// Annual probability of reaching at least `lower`. Kept from the source
    /// curve so that truncation does not depend on which bins were dropped.
    pub exceedance: f64,
}

/// Discretized `P(EI)`: annual occurrence probability per intensity bin.
#[derive(Debug, Clone, PartialEq)]
pub struct HazardCurve {
    event_type: EventTypeId,
    area: AreaId,
    unit: String,
    bins: Vec<HazardBin>,
}

impl HazardCurve {
    /// Every grid value carries its own occurrence probability.
    pub fn from_point_masses(area: AreaId, grid: IntensityGrid, occurrence: Vec<f64>) -> Result<Self> {
        if occurrence.len() != grid.len() {
            return Err(Error::LengthMismatch {
                what: "occurrence",
                expected: grid.len(),
                found: occurrence.len(),
            });
        }
        check_probabilities("occurrence", &occurrence)?;
        let total: f64 = occurrence.iter().sum();
        if total > 1.0 + SUM_TOLERANCE {
            return Err(Error::OccurrenceSumExceedsOne(total));
        }
        let mut tail = 0.0;
        let mut exceedance = alloc::vec![0.0; occurrence.len()];
        for k in (0..occurrence.len()).rev() {
            tail += occurrence[k];
            exceedance[k] = tail.min(1.0);
        }
        let bins = grid
            .values()
            .iter()
            .zip(&occurrence)
            .zip(&exceedance)
            .map(|((&v, &occurrence), &exceedance)| HazardBin {
                lower: v,
                upper: Some(v),
                representative: v,
                occurrence,
                exceedance,
            })
            .collect();
        Ok(Self {
            event_type: grid.event_type().clone(),
            area,
            unit: grid.unit().into(),
            bins,
        })
    }

    /// A single intensity occurring with probability `occurrence`.
    pub fn single(event_type: EventTypeId, area: AreaId, unit: impl Into<String>, intensity: f64, occurrence: f64) -> Result<Self> {
        if !intensity.is_finite() || intensity < 0.0 {
            return Err(Error::GridValue {
                index: 0,
                value: intensity,
            });
        }
        check_probabilities("occurrence", &[occurrence])?;
        Ok(Self {
            event_type,
            area,
            unit: unit.into(),
            bins: alloc::vec![HazardBin {
                lower: intensity,
                upper: Some(intensity),
                representative: intensity,
                occurrence,
                exceedance: occurrence,
            }],
        })
    }

    pub fn event_type(&self) -> &EventTypeId {
        &self.event_type
    }

    pub fn area(&self) -> &AreaId {
        &self.area
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn bins(&self) -> &[HazardBin] {
        &self.bins
    }

    pub fn occurrence(&self) -> impl Iterator<Item = f64> + '_ {
        self.bins.iter().map(|b| b.occurrence)
    }

    /// Probability that some event of this type happens in a year.
    pub fn total_occurrence(&self) -> f64 {
        self.occurrence().sum()
    }

    /// True when no intensity has positive probability.
    pub fn is_empty(&self) -> bool {
        self.bins.iter().all(|b| b.occurrence == 0.0)
    }
}

/// Differences consecutive exceedances into bin occurrences.
///
/// Bin `k` spans `[grid[k], grid[k + 1])` and is evaluated at its midpoint;
/// the last bin collects everything at or above the top grid value and is
/// evaluated there.
pub fn exceedance_to_occurrence(curve: &ExceedanceCurve) -> HazardCurve {
    let values = curve.grid.values();
    let exc = &curve.exceedance;
    let n = values.len();
    let bins = (0..n)
        .map(|k| {
            if k + 1 < n {
                HazardBin {
                    lower: values[k],
                    upper: Some(values[k + 1]),
                    representative: 0.5 * (values[k] + values[k + 1]),
                    occurrence: exc[k] - exc[k + 1],
                    exceedance: exc[k],
                }
            } else {
                HazardBin {
                    lower: values[k],
                    upper: None,
                    representative: values[k],
                    occurrence: exc[k],
                    exceedance: exc[k],
                }
            }
        })
        .collect();
    HazardCurve {
        event_type: curve.event_type().clone(),
        area: curve.area.clone(),
        unit: curve.grid.unit().into(),
        bins,
    }
}

/// Design return period `T` in years.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BackPeriod(f64);

impl BackPeriod {
    pub fn new(years: f64) -> Result<Self> {
        if years.is_nan() || years <= 0.0 {
            return Err(Error::InvalidBackPeriod(years));
        }
        Ok(Self(years))
    }

    pub fn years(self) -> f64 {
        self.0
    }

    /// Annual exceedance below which an intensity is considered too rare.
    pub fn threshold(self) -> f64 {
        1.0 / self.0
    }
}

impl TryFrom<f64> for BackPeriod {
    type Error = Error;

    fn try_from(years: f64) -> Result<Self> {
        Self::new(years)
    }
}

impl From<BackPeriod> for f64 {
    fn from(bp: BackPeriod) -> f64 {
        bp.0
    }
}

/// Result of [`TruncateByBackPeriod::truncate_by_back_period`].
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<T> {
    pub curve: T,
    /// Set when nothing survived the threshold.
    pub empty: bool,
}

pub trait TruncateByBackPeriod: Sized {
    /// Drops intensities whose annual exceedance is below `1 / T`.
    fn truncate_by_back_period(&self, bp: BackPeriod) -> Truncated<Self>;
}

impl TruncateByBackPeriod for HazardCurve {
    fn truncate_by_back_period(&self, bp: BackPeriod) -> Truncated<Self> {
        let threshold = bp.threshold();
        let bins: Vec<HazardBin> = self.bins.iter().copied().filter(|b| b.exceedance >= threshold).collect();
        let curve = HazardCurve {
            event_type: self.event_type.clone(),
            area: self.area.clone(),
            unit: self.unit.clone(),
            bins,
        };
        let empty = curve.is_empty();
        Truncated { curve, empty }
    }
}

/// Grid levels rarer than `1 / T` get exceedance 0; the grid itself is kept
/// so the curve stays valid.
impl TruncateByBackPeriod for ExceedanceCurve {
    fn truncate_by_back_period(&self, bp: BackPeriod) -> Truncated<Self> {
        let threshold = bp.threshold();
        let exceedance: Vec<f64> = self
            .exceedance
            .iter()
            .map(|&e| if e >= threshold { e } else { 0.0 })
            .collect();
        let empty = exceedance.iter().all(|&e| e == 0.0);
        Truncated {
            curve: ExceedanceCurve {
                area: self.area.clone(),
                grid: self.grid.clone(),
                exceedance,
            },
            empty,
        }
    }
}
