//! Independent reference computations: exhaustive state enumeration for
//! network connectivity and year-by-year simulation for annual failure
//! probabilities.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use pcf_core::fragility::{fragility_eval, FragilityCurve};
use pcf_core::hazard::HazardCurve;
use pcf_core::network::{Line, Network};
use pcf_core::ComponentId;
use rand::rngs::StdRng;
use rand::Rng;

/// Probability that `from` cannot reach `to`, summing over all 2^n
/// up/down states of the components.
pub fn enumerate_disconnection(net: &Network, from: &str, to: &str, pf: &BTreeMap<ComponentId, f64>) -> f64 {
    let comps: Vec<&ComponentId> = pf.keys().collect();
    assert!(comps.len() <= 24, "too many components to enumerate");
    let mut total = 0.0;
    for state in 0u64..(1 << comps.len()) {
        let mut prob = 1.0;
        let mut down = BTreeSet::new();
        for (i, c) in comps.iter().enumerate() {
            if state >> i & 1 == 1 {
                prob *= pf[*c];
                down.insert(*c);
            } else {
                prob *= 1.0 - pf[*c];
            }
        }
        if !reachable(net, from, to, &down) {
            total += prob;
        }
    }
    total
}

fn reachable(net: &Network, from: &str, to: &str, down: &BTreeSet<&ComponentId>) -> bool {
    let mut seen = BTreeSet::from([from.to_owned()]);
    let mut stack = vec![from.to_owned()];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for l in net.lines().iter().filter(|l| !l.components().iter().any(|c| down.contains(c))) {
            let next = if l.from().as_str() == u {
                l.to()
            } else if l.to().as_str() == u {
                l.from()
            } else {
                continue;
            };
            if seen.insert(next.as_str().to_owned()) {
                stack.push(next.as_str().to_owned());
            }
        }
    }
    false
}

pub struct SpFixture {
    pub network: Network,
    pub pf: BTreeMap<ComponentId, f64>,
}

/// A random series-parallel network between `S` and `T` with at most
/// `max_components` components and random failure probabilities. Some
/// fixtures also carry a pendant branch off the s-t path.
pub fn random_sp_fixture(rng: &mut StdRng, max_components: usize) -> SpFixture {
    let mut g = Gen::default();
    let budget = rng.random_range(1..=max_components);
    let pendant = budget < max_components && rng.random_bool(0.3);
    g.build(rng, "S".into(), "T".into(), budget);
    if pendant {
        let n = g.node();
        let attach = g.nodes[rng.random_range(0..g.nodes.len() - 1)].clone();
        g.line(attach, n, 1);
    }
    let components: Vec<ComponentId> = g.lines.iter().flat_map(|l| l.components().to_vec()).collect();
    let pf = components
        .into_iter()
        .map(|c| {
            let p = match rng.random_range(0..6) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.random::<f64>(),
            };
            (c, p)
        })
        .collect();
    let nodes = g.nodes.iter().map(|n| n.as_str().into()).collect();
    SpFixture {
        network: Network::new(nodes, g.lines).unwrap(),
        pf,
    }
}

struct Gen {
    nodes: Vec<String>,
    lines: Vec<Line>,
    components: usize,
}

impl Default for Gen {
    fn default() -> Self {
        Self {
            nodes: vec!["S".into(), "T".into()],
            lines: Vec::new(),
            components: 0,
        }
    }
}

impl Gen {
    fn node(&mut self) -> String {
        let n = format!("n{}", self.nodes.len());
        self.nodes.push(n.clone());
        n
    }

    fn line(&mut self, s: String, t: String, k: usize) {
        let comps = (0..k)
            .map(|_| {
                self.components += 1;
                ComponentId::from(format!("c{}", self.components))
            })
            .collect();
        let id = format!("l{}", self.lines.len());
        self.lines.push(Line::new(id.as_str().into(), s.as_str().into(), t.as_str().into(), comps).unwrap());
    }

    fn build(&mut self, rng: &mut StdRng, s: String, t: String, budget: usize) {
        match if budget <= 1 { 0 } else { rng.random_range(0..3) } {
            0 => {
                let k = rng.random_range(1..=budget.clamp(1, 3));
                self.line(s, t, k);
            }
            1 => {
                let m = self.node();
                let left = rng.random_range(1..budget);
                self.build(rng, s, m.clone(), left);
                self.build(rng, m, t, budget - left);
            }
            _ => {
                let left = rng.random_range(1..budget);
                self.build(rng, s.clone(), t.clone(), left);
                self.build(rng, s, t, budget - left);
            }
        }
    }
}

/// Simulated count of years in which the component fails.
#[derive(Debug, Clone, Copy)]
pub struct Simulated {
    pub years: u64,
    pub failures: u64,
}

impl Simulated {
    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.years as f64
    }

    /// Standard error of the rate for a true probability `p`.
    pub fn standard_error(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.years as f64).sqrt()
    }
}

/// Draws the year's intensity bin from the occurrence masses; `None` is the
/// remaining no-event mass.
pub fn draw_bin(rng: &mut StdRng, hazard: &HazardCurve) -> Option<usize> {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (k, occ) in hazard.occurrence().enumerate() {
        acc += occ;
        if u < acc {
            return Some(k);
        }
    }
    None
}

/// Simulates `years` years: draw the year's intensity, then fail with the
/// fragility probability at that intensity.
pub fn simulate_component(rng: &mut StdRng, curve: &FragilityCurve, hazard: &HazardCurve, years: u64) -> Simulated {
    let fail_at: Vec<f64> = hazard
        .bins()
        .iter()
        .map(|b| fragility_eval(curve, b.representative).unwrap())
        .collect();
    let mut failures = 0;
    for _ in 0..years {
        if let Some(k) = draw_bin(rng, hazard) {
            if rng.random::<f64>() < fail_at[k] {
                failures += 1;
            }
        }
    }
    Simulated { years, failures }
}
