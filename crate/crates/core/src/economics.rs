//! Direct and indirect failure costs, in M€.
//!
//! The indirect cost is either a lump sum or the integral of a
//! piecewise-linear loss rate (M€/day) over the downtime.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ids::{ComponentId, CostModelId};

/// Piecewise-linear loss rate over `[0, downtime]`, extended flat before
/// the first point and after the last one.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryFunction {
    downtime: f64,
    points: Vec<(f64, f64)>,
}

impl RecoveryFunction {
    pub fn new(downtime: f64, points: Vec<(f64, f64)>) -> Result<Self> {
        if !(downtime.is_finite() && downtime > 0.0) {
            return Err(Error::RecoveryFunction("downtime must be positive"));
        }
        if points.is_empty() {
            return Err(Error::RecoveryFunction("needs at least one loss-rate point"));
        }
        for &(t, rate) in &points {
            if !(0.0..=downtime).contains(&t) {
                return Err(Error::RecoveryFunction("point time outside [0, downtime]"));
            }
            if !(rate.is_finite() && rate >= 0.0) {
                return Err(Error::RecoveryFunction("loss rate must be non-negative"));
            }
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::RecoveryFunction("point times must be strictly increasing"));
        }
        Ok(Self { downtime, points })
    }

    pub fn downtime(&self) -> f64 {
        self.downtime
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Loss rate at time `t`.
    pub fn rate(&self, t: f64) -> f64 {
        let (t0, r0) = self.points[0];
        let (tn, rn) = self.points[self.points.len() - 1];
        if t <= t0 {
            return r0;
        }
        if t >= tn {
            return rn;
        }
        let hi = self.points.partition_point(|&(x, _)| x <= t);
        let (ta, ra) = self.points[hi - 1];
        let (tb, rb) = self.points[hi];
        ra + (rb - ra) * (t - ta) / (tb - ta)
    }

    /// Exact integral of the rate over `[a, b]`, clipped to `[0, downtime]`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        let a = a.max(0.0);
        let b = b.min(self.downtime);
        if b <= a {
            return 0.0;
        }
        // The rate is linear between consecutive knots, so trapezoids are exact.
        let mut knots = Vec::with_capacity(self.points.len() + 2);
        knots.push(a);
        knots.extend(self.points.iter().map(|p| p.0).filter(|&t| t > a && t < b));
        knots.push(b);
        knots
            .windows(2)
            .map(|w| 0.5 * (w[1] - w[0]) * (self.rate(w[0]) + self.rate(w[1])))
            .sum()
    }

    /// Same loss profile with a different downtime, rates extended flat.
    pub fn with_downtime(&self, downtime: f64) -> Result<Self> {
        let points = self.points.iter().copied().filter(|p| p.0 <= downtime).collect::<Vec<_>>();
        let points = if points.is_empty() {
            alloc::vec![(0.0, self.rate(downtime))]
        } else {
            points
        };
        Self::new(downtime, points)
    }
}

/// Integral of the loss rate from 0 to the downtime.
pub fn indirect_cost(rf: &RecoveryFunction) -> f64 {
    rf.integrate(0.0, rf.downtime)
}

#[derive(Debug, Clone, PartialEq)]
pub enum IndirectCost {
    LumpSum(f64),
    Recovery(RecoveryFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    id: CostModelId,
    direct: f64,
    indirect: IndirectCost,
}

impl CostModel {
    pub fn new(id: CostModelId, direct: f64, indirect: IndirectCost) -> Result<Self> {
        if !(direct.is_finite() && direct >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "direct cost",
                value: direct,
            });
        }
        if let IndirectCost::LumpSum(v) = indirect {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter {
                    name: "indirect cost",
                    value: v,
                });
            }
        }
        Ok(Self { id, direct, indirect })
    }

    pub fn lump_sum(id: CostModelId, direct: f64, indirect: f64) -> Result<Self> {
        Self::new(id, direct, IndirectCost::LumpSum(indirect))
    }

    pub fn id(&self) -> &CostModelId {
        &self.id
    }

    pub fn direct(&self) -> f64 {
        self.direct
    }

    pub fn indirect(&self) -> &IndirectCost {
        &self.indirect
    }

    /// Copy with every amount multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let indirect = match &self.indirect {
            IndirectCost::LumpSum(v) => IndirectCost::LumpSum(v * factor),
            IndirectCost::Recovery(rf) => {
                IndirectCost::Recovery(RecoveryFunction::new(rf.downtime, rf.points.iter().map(|&(t, r)| (t, r * factor)).collect())?)
            }
        };
        Self::new(self.id.clone(), self.direct * factor, indirect)
    }
}

/// Direct, indirect and total cost of one failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostSplit {
    pub direct: f64,
    pub indirect: f64,
    pub total: f64,
}

pub fn total_failure_cost(cm: &CostModel) -> CostSplit {
    let indirect = match &cm.indirect {
        IndirectCost::LumpSum(v) => *v,
        IndirectCost::Recovery(rf) => indirect_cost(rf),
    };
    CostSplit {
        direct: cm.direct,
        indirect,
        total: cm.direct + indirect,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureCost {
    pub component: ComponentId,
    pub cost: CostSplit,
}

impl FailureCost {
    pub fn of(component: ComponentId, cm: &CostModel) -> Self {
        Self {
            component,
            cost: total_failure_cost(cm),
        }
    }
}
