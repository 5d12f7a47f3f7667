//! Lines of critical components in series, parallel line groups, and the
//! two-terminal failure probability between nodes.
//!
//! Only series-parallel reducible connections are evaluated. Anything else
//! (a bridge topology, say) is reported as unsupported rather than
//! approximated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ids::{ComponentId, LineId, NodeId};

fn check_probabilities(pfs: &[f64]) -> Result<()> {
    if pfs.is_empty() {
        return Err(Error::Empty("failure probability list"));
    }
    for (index, &value) in pfs.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::ProbabilityOutOfRange {
                what: "failure probability",
                index,
                value,
            });
        }
    }
    Ok(())
}

/// `1 − Π (1 − Pf_i)`: fails as soon as one element fails.
pub fn series_failure_probability(pfs: &[f64]) -> Result<f64> {
    check_probabilities(pfs)?;
    Ok(series(pfs.iter().copied()))
}

/// `Π Pf_i`: fails only when every element fails.
pub fn parallel_failure_probability(pfs: &[f64]) -> Result<f64> {
    check_probabilities(pfs)?;
    Ok(pfs.iter().product())
}

/// Accumulates `q + p (1 − q)`, which equals `1 − Π (1 − p)` but keeps a
/// single element, or an extra zero, exact.
pub(crate) fn series(pfs: impl Iterator<Item = f64>) -> f64 {
    pfs.fold(0.0, |q, p| q + p * (1.0 - q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    id: LineId,
    from: NodeId,
    to: NodeId,
    components: Vec<ComponentId>,
}

impl Line {
    pub fn new(id: LineId, from: NodeId, to: NodeId, components: Vec<ComponentId>) -> Result<Self> {
        if from == to {
            return Err(Error::InvalidLine(id, "endpoints must differ"));
        }
        if components.is_empty() {
            return Err(Error::InvalidLine(id, "needs at least one component"));
        }
        let mut seen = BTreeSet::new();
        if !components.iter().all(|c| seen.insert(c)) {
            return Err(Error::InvalidLine(id, "lists a component twice"));
        }
        Ok(Self { id, from, to, components })
    }

    pub fn id(&self) -> &LineId {
        &self.id
    }

    pub fn from(&self) -> &NodeId {
        &self.from
    }

    pub fn to(&self) -> &NodeId {
        &self.to
    }

    pub fn components(&self) -> &[ComponentId] {
        &self.components
    }

    fn endpoints(&self) -> (&NodeId, &NodeId) {
        if self.from <= self.to {
            (&self.from, &self.to)
        } else {
            (&self.to, &self.from)
        }
    }

    /// Series composition of the line's components.
    pub fn failure_probability(&self, per_component: &BTreeMap<ComponentId, f64>) -> Result<f64> {
        let mut pfs = Vec::with_capacity(self.components.len());
        for c in &self.components {
            pfs.push(*per_component.get(c).ok_or_else(|| Error::MissingProbability(c.clone()))?);
        }
        series_failure_probability(&pfs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    nodes: BTreeSet<NodeId>,
    lines: Vec<Line>,
}

impl Network {
    /// Components may sit on one line only; parallel lines sharing a
    /// component would not fail independently.
    pub fn new(nodes: BTreeSet<NodeId>, lines: Vec<Line>) -> Result<Self> {
        let mut line_ids = BTreeSet::new();
        let mut owner = BTreeSet::new();
        for line in &lines {
            if !line_ids.insert(&line.id) {
                return Err(Error::DuplicateId(line.id.as_str().into()));
            }
            for n in [&line.from, &line.to] {
                if !nodes.contains(n) {
                    return Err(Error::UnknownNode(n.clone()));
                }
            }
            for c in &line.components {
                if !owner.insert(c) {
                    return Err(Error::SharedComponent(c.clone()));
                }
            }
        }
        Ok(Self { nodes, lines })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, id: &LineId) -> Option<&Line> {
        self.lines.iter().find(|l| &l.id == id)
    }

    /// Lines grouped by unordered endpoint pair, in endpoint order.
    pub fn parallel_groups(&self) -> Vec<Vec<LineId>> {
        let mut groups: BTreeMap<(&NodeId, &NodeId), Vec<LineId>> = BTreeMap::new();
        for line in &self.lines {
            groups.entry(line.endpoints()).or_default().push(line.id.clone());
        }
        groups.into_values().collect()
    }
}

struct Edge {
    a: usize,
    b: usize,
    pf: f64,
    lines: Vec<usize>,
}

impl Edge {
    fn other(&self, n: usize) -> usize {
        if self.a == n {
            self.b
        } else {
            self.a
        }
    }
}

/// Edges of the biconnected block containing `virtual_edge`.
fn block_of(n_nodes: usize, ends: &[(usize, usize)], root: usize, virtual_edge: usize) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut adj = alloc::vec![Vec::new(); n_nodes];
    for (e, &(a, b)) in ends.iter().enumerate() {
        adj[a].push((e, b));
        adj[b].push((e, a));
    }

    struct Dfs<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        target: usize,
        found: Vec<usize>,
    }

    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent_edge: usize) {
            self.disc[u] = self.time;
            self.low[u] = self.time;
            self.time += 1;
            for &(e, w) in &self.adj[u] {
                if e == parent_edge {
                    continue;
                }
                if self.disc[w] == UNSEEN {
                    self.stack.push(e);
                    self.visit(w, e);
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some(top) = self.stack.pop() {
                            block.push(top);
                            if top == e {
                                break;
                            }
                        }
                        if block.contains(&self.target) {
                            self.found = block;
                        }
                    }
                } else if self.disc[w] < self.disc[u] {
                    self.stack.push(e);
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }

    let mut dfs = Dfs {
        adj: &adj,
        disc: alloc::vec![UNSEEN; n_nodes],
        low: alloc::vec![UNSEEN; n_nodes],
        time: 0,
        stack: Vec::new(),
        target: virtual_edge,
        found: Vec::new(),
    };
    dfs.visit(root, UNSEEN);
    dfs.found
}

/// Failure probability of the connection between `from` and `to`.
///
/// Each line fails per [`series_failure_probability`] over its components;
/// lines are then reduced with parallel and series rules. Parts of the
/// network that lie on no simple path between the two nodes do not affect
/// the result and are ignored. Returns 1 when the nodes are not connected.
pub fn connection_failure_probability(
    net: &Network,
    from: &NodeId,
    to: &NodeId,
    per_component: &BTreeMap<ComponentId, f64>,
) -> Result<f64> {
    let index: BTreeMap<&NodeId, usize> = net.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let s = *index.get(from).ok_or_else(|| Error::UnknownNode(from.clone()))?;
    let t = *index.get(to).ok_or_else(|| Error::UnknownNode(to.clone()))?;
    if s == t {
        return Err(Error::SameEndpoints(from.clone()));
    }

    let mut ends: Vec<(usize, usize)> = net.lines.iter().map(|l| (index[&l.from], index[&l.to])).collect();
    let virtual_edge = ends.len();
    ends.push((s, t));
    let relevant = block_of(index.len(), &ends, s, virtual_edge);

    let mut edges = Vec::new();
    for e in relevant.into_iter().filter(|&e| e != virtual_edge) {
        let line = &net.lines[e];
        edges.push(Edge {
            a: ends[e].0,
            b: ends[e].1,
            pf: line.failure_probability(per_component)?,
            lines: alloc::vec![e],
        });
    }
    if edges.is_empty() {
        return Ok(1.0);
    }

    loop {
        let mut changed = false;

        // Parallel: merge edges with the same endpoint pair.
        let mut by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut merged: Vec<Edge> = Vec::with_capacity(edges.len());
        for edge in edges {
            let key = (edge.a.min(edge.b), edge.a.max(edge.b));
            match by_pair.get(&key) {
                Some(&i) => {
                    merged[i].pf *= edge.pf;
                    merged[i].lines.extend(edge.lines);
                    changed = true;
                }
                None => {
                    by_pair.insert(key, merged.len());
                    merged.push(edge);
                }
            }
        }
        edges = merged;

        // Series: splice out one inner node of degree two.
        let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            incident.entry(e.a).or_default().push(i);
            incident.entry(e.b).or_default().push(i);
        }
        let splice = incident
            .iter()
            .find(|(&n, es)| n != s && n != t && es.len() <= 2)
            .map(|(&n, es)| (n, es.clone()));
        if let Some((n, es)) = splice {
            if let [i, j] = es[..] {
                let (first, second) = (i.min(j), i.max(j));
                let e2 = edges.remove(second);
                let e1 = &mut edges[first];
                let (a, b) = (e1.other(n), e2.other(n));
                e1.a = a;
                e1.b = b;
                e1.pf = series([e1.pf, e2.pf].into_iter());
                e1.lines.extend(e2.lines);
            } else {
                // Dangling inner node: its edge is on no path between the terminals.
                edges.remove(es[0]);
            }
            changed = true;
        }

        if !changed {
            break;
        }
    }

    match edges.as_slice() {
        [only] if (only.a == s && only.b == t) || (only.a == t && only.b == s) => Ok(only.pf.clamp(0.0, 1.0)),
        [] => Ok(1.0),
        _ => {
            let names: Vec<&NodeId> = net.nodes.iter().collect();
            let mut nodes = BTreeSet::new();
            let mut lines = BTreeSet::new();
            for e in &edges {
                nodes.insert(names[e.a].clone());
                nodes.insert(names[e.b].clone());
                lines.extend(e.lines.iter().map(|&l| net.lines[l].id.clone()));
            }
            Err(Error::UnsupportedTopology {
                nodes: nodes.into_iter().collect(),
                lines: lines.into_iter().collect(),
            })
        }
    }
}
