//! Pauli measurement rules on graphs, protocol application and cost
//! accounting.
//!
//! Only the +1 outcome branch is modelled; the output graph is the one the
//! rules give without outcome-dependent local corrections.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl PauliBasis {
    pub const ALL: [PauliBasis; 3] = [PauliBasis::X, PauliBasis::Y, PauliBasis::Z];
}

impl fmt::Display for PauliBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliBasis::X => "X",
            PauliBasis::Y => "Y",
            PauliBasis::Z => "Z",
        })
    }
}

impl FromStr for PauliBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(PauliBasis::X),
            "Y" | "y" => Ok(PauliBasis::Y),
            "Z" | "z" => Ok(PauliBasis::Z),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementStep {
    pub basis: PauliBasis,
    pub target: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<VertexId>,
}

impl MeasurementStep {
    pub fn z(target: impl Into<VertexId>) -> Self {
        MeasurementStep {
            basis: PauliBasis::Z,
            target: target.into(),
            k0: None,
        }
    }

    pub fn y(target: impl Into<VertexId>) -> Self {
        MeasurementStep {
            basis: PauliBasis::Y,
            target: target.into(),
            k0: None,
        }
    }

    pub fn x(target: impl Into<VertexId>, k0: impl Into<VertexId>) -> Self {
        MeasurementStep {
            basis: PauliBasis::X,
            target: target.into(),
            k0: Some(k0.into()),
        }
    }

    /// X measurement of a vertex expected to be isolated.
    pub fn x_isolated(target: impl Into<VertexId>) -> Self {
        MeasurementStep {
            basis: PauliBasis::X,
            target: target.into(),
            k0: None,
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        self.apply_mut(&mut out)?;
        Ok(out)
    }

    pub(crate) fn apply_mut(&self, g: &mut Graph) -> Result<()> {
        if self.basis != PauliBasis::X && self.k0.is_some() {
            return Err(Error::UnexpectedSpecialNeighbor(self.target));
        }
        match self.basis {
            PauliBasis::Z => g.delete_vertex_mut(self.target),
            PauliBasis::Y => {
                g.local_complement_mut(self.target)?;
                g.delete_vertex_mut(self.target)
            }
            PauliBasis::X => measure_x_mut(g, self.target, self.k0),
        }
    }
}

impl fmt::Display for MeasurementStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k0 {
            Some(k) => write!(f, "{}({}, {})", self.basis, self.target, k),
            None => write!(f, "{}({})", self.basis, self.target),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Protocol {
    pub steps: Vec<MeasurementStep>,
}

impl Protocol {
    pub fn new(steps: Vec<MeasurementStep>) -> Self {
        Protocol { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn then(mut self, other: &Protocol) -> Protocol {
        self.steps.extend_from_slice(&other.steps);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("protocol serialises")
    }

    pub fn from_json(s: &str) -> Result<Protocol> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub counts: BTreeMap<PauliBasis, usize>,
    pub total: usize,
    pub initial_vertices: usize,
    pub final_vertices: usize,
}

impl CostReport {
    pub fn count(&self, basis: PauliBasis) -> usize {
        self.counts.get(&basis).copied().unwrap_or(0)
    }

    /// `total` equals the sum of the counts and the number of removed vertices.
    pub fn is_consistent(&self) -> bool {
        self.counts.values().sum::<usize>() == self.total && self.initial_vertices == self.final_vertices + self.total
    }

    /// Sum of two reports for protocols applied one after the other.
    pub fn followed_by(&self, next: &CostReport) -> CostReport {
        let mut counts = self.counts.clone();
        for (b, c) in &next.counts {
            *counts.entry(*b).or_default() += c;
        }
        CostReport {
            counts,
            total: self.total + next.total,
            initial_vertices: self.initial_vertices,
            final_vertices: next.final_vertices,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub graph: Graph,
    pub cost: CostReport,
    /// Graph after each step; empty unless tracing was requested.
    pub trace: Vec<Graph>,
}

pub fn measure_z(g: &Graph, i: VertexId) -> Result<Graph> {
    g.delete_vertex(i)
}

pub fn measure_y(g: &Graph, i: VertexId) -> Result<Graph> {
    let mut out = g.local_complement(i)?;
    out.delete_vertex_mut(i)?;
    Ok(out)
}

/// `tau_k0(tau_i(tau_k0(G)) - i)`. `k0` must be a neighbor of `i`, or absent
/// when `i` is isolated, in which case the measurement just deletes `i`.
pub fn measure_x(g: &Graph, i: VertexId, k0: Option<VertexId>) -> Result<Graph> {
    let mut out = g.clone();
    measure_x_mut(&mut out, i, k0)?;
    Ok(out)
}

fn measure_x_mut(g: &mut Graph, i: VertexId, k0: Option<VertexId>) -> Result<()> {
    let isolated = g.neighborhood(i)?.is_empty();
    match (k0, isolated) {
        (None, true) => g.delete_vertex_mut(i),
        (None, false) => Err(Error::MissingSpecialNeighbor(i)),
        (Some(_), true) => Err(Error::UnexpectedSpecialNeighbor(i)),
        (Some(k), false) => {
            if !g.has_edge(i, k) {
                if !g.contains(k) {
                    return Err(Error::VertexNotFound(k));
                }
                return Err(Error::InvalidSpecialNeighbor { target: i, k0: k });
            }
            g.local_complement_mut(k)?;
            g.local_complement_mut(i)?;
            g.delete_vertex_mut(i)?;
            g.local_complement_mut(k)
        }
    }
}

pub fn apply_protocol(g: &Graph, p: &Protocol) -> Result<ProtocolRun> {
    run(g, p, false)
}

pub fn apply_protocol_traced(g: &Graph, p: &Protocol) -> Result<ProtocolRun> {
    run(g, p, true)
}

fn run(g: &Graph, p: &Protocol, keep_trace: bool) -> Result<ProtocolRun> {
    let mut cur = g.clone();
    let mut counts = BTreeMap::new();
    let mut trace = Vec::new();
    for (index, step) in p.steps.iter().enumerate() {
        step.apply_mut(&mut cur).map_err(|e| e.at_step(index))?;
        *counts.entry(step.basis).or_default() += 1;
        if keep_trace {
            trace.push(cur.clone());
        }
    }
    Ok(ProtocolRun {
        cost: CostReport {
            counts,
            total: p.len(),
            initial_vertices: g.order(),
            final_vertices: cur.order(),
        },
        graph: cur,
        trace,
    })
}
