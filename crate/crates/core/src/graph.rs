//! Undirected simple graphs with stable vertex identities.
//!
//! A [`Graph`] is the classical shadow of a graph state: vertices are qubits,
//! edges are the CZ gates that entangled them. Vertex ids survive every
//! transformation unchanged, so a protocol can address the same switch or
//! client across many measurement steps.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Role tag carried by a vertex of a network graph.
///
/// Rendered as `Sw{i}` for switch `i` and `K{j}_{i}` for the `j`-th client
/// (1-based) of switch `i`. Any other string is kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Switch(usize),
    Client { switch: usize, index: usize },
    Custom(String),
}

impl Role {
    pub fn switch_index(&self) -> Option<usize> {
        match self {
            Role::Switch(i) => Some(*i),
            _ => None,
        }
    }

    pub fn is_client(&self) -> bool {
        matches!(self, Role::Client { .. })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Switch(i) => write!(f, "Sw{i}"),
            Role::Client { switch, index } => write!(f, "K{index}_{switch}"),
            Role::Custom(s) => f.write_str(s),
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        if let Some(rest) = s.strip_prefix("Sw") {
            if let Ok(i) = rest.parse() {
                return Ok(Role::Switch(i));
            }
        }
        if let Some(rest) = s.strip_prefix('K') {
            if let Some((j, i)) = rest.split_once('_') {
                if let (Ok(index), Ok(switch)) = (j.parse(), i.parse()) {
                    return Ok(Role::Client { switch, index });
                }
            }
        }
        Ok(Role::Custom(s.to_string()))
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Role {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Undirected simple graph. Immutable from the outside: every transformation
/// returns a new value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    labels: BTreeMap<VertexId, Role>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on ids `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n as u32 {
            g.adj.insert(VertexId(v), BTreeSet::new());
        }
        g
    }

    /// Builds a graph on ids `0..n` from an edge list.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.adj.contains_key(&v) {
            return Err(Error::DuplicateVertex(v));
        }
        self.adj.insert(v, BTreeSet::new());
        Ok(())
    }

    pub fn add_labeled_vertex(&mut self, v: VertexId, role: Role) -> Result<()> {
        self.add_vertex(v)?;
        self.labels.insert(v, role);
        Ok(())
    }

    pub fn set_label(&mut self, v: VertexId, role: Role) -> Result<()> {
        self.require(v)?;
        self.labels.insert(v, role);
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.require(u)?;
        self.require(v)?;
        if !self.adj.get_mut(&u).unwrap().insert(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    fn require(&self, v: VertexId) -> Result<()> {
        if self.adj.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::VertexNotFound(v))
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().flat_map(|(&u, ns)| ns.range(u..).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.neighborhood(v)?.len())
    }

    pub fn neighborhood(&self, v: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adj.get(&v).ok_or(Error::VertexNotFound(v))
    }

    pub fn label(&self, v: VertexId) -> Option<&Role> {
        self.labels.get(&v)
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, Role> {
        &self.labels
    }

    /// Vertex currently labelled `Sw{index}`.
    pub fn switch(&self, index: usize) -> Option<VertexId> {
        self.labels
            .iter()
            .find(|(_, r)| r.switch_index() == Some(index))
            .map(|(&v, _)| v)
    }

    /// Edge set complemented over all distinct pairs; vertices and labels kept.
    pub fn complement(&self) -> Graph {
        let vs: Vec<VertexId> = self.vertices().collect();
        let mut adj = BTreeMap::new();
        for &u in &vs {
            let ns = &self.adj[&u];
            let comp: BTreeSet<VertexId> = vs.iter().copied().filter(|&w| w != u && !ns.contains(&w)).collect();
            adj.insert(u, comp);
        }
        Graph {
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Local complementation at `v`: the subgraph induced on the neighborhood
    /// of `v` is complemented, every other edge is left alone.
    pub fn local_complement(&self, v: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        g.local_complement_mut(v)?;
        Ok(g)
    }

    pub(crate) fn local_complement_mut(&mut self, v: VertexId) -> Result<()> {
        let ns: Vec<VertexId> = self.neighborhood(v)?.iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                self.toggle_edge(a, b);
            }
        }
        Ok(())
    }

    fn toggle_edge(&mut self, a: VertexId, b: VertexId) {
        let na = self.adj.get_mut(&a).unwrap();
        if !na.remove(&b) {
            na.insert(b);
            self.adj.get_mut(&b).unwrap().insert(a);
        } else {
            self.adj.get_mut(&b).unwrap().remove(&a);
        }
    }

    /// Removes `v` and its incident edges. Surviving ids are untouched.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        g.delete_vertex_mut(v)?;
        Ok(g)
    }

    pub(crate) fn delete_vertex_mut(&mut self, v: VertexId) -> Result<()> {
        let ns = self.adj.remove(&v).ok_or(Error::VertexNotFound(v))?;
        for u in ns {
            self.adj.get_mut(&u).unwrap().remove(&v);
        }
        self.labels.remove(&v);
        Ok(())
    }

    /// Induced subgraph on `keep` (ids not present are ignored).
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, ns)| (v, ns.intersection(keep).copied().collect()))
            .collect();
        let labels = self
            .labels
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, r)| (v, r.clone()))
            .collect();
        Graph { adj, labels }
    }

    /// Copy of the graph with every vertex id passed through `f`. `f` must be
    /// injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Graph {
        let adj = self
            .adj
            .iter()
            .map(|(&v, ns)| (f(v), ns.iter().map(|&u| f(u)).collect()))
            .collect();
        let labels = self.labels.iter().map(|(&v, r)| (f(v), r.clone())).collect();
        Graph { adj, labels }
    }

    /// Same graph with labels dropped.
    pub fn unlabeled(&self) -> Graph {
        Graph {
            adj: self.adj.clone(),
            labels: BTreeMap::new(),
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[&u] {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Proper 2-colouring by breadth-first layering. In every component the
    /// lowest id gets colour 0.
    pub fn bicoloring(&self) -> std::result::Result<BiColoring, NotBicolorable> {
        let mut color: BTreeMap<VertexId, u8> = BTreeMap::new();
        for start in self.vertices() {
            if color.contains_key(&start) {
                continue;
            }
            color.insert(start, 0);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[&u];
                for &w in &self.adj[&u] {
                    match color.get(&w) {
                        None => {
                            color.insert(w, 1 - cu);
                            queue.push_back(w);
                        }
                        Some(&cw) if cw == cu => {
                            return Err(NotBicolorable {
                                conflict: (u.min(w), u.max(w)),
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(BiColoring { partition: color })
    }

    pub fn is_bicolorable(&self) -> bool {
        self.bicoloring().is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc::from(self)).expect("graph documents always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&GraphDoc::from(self)).expect("graph documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let doc: GraphDoc = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Graph::try_from(doc)
    }

    /// Graphviz rendering; vertices are named by label, or by id when unlabelled.
    pub fn to_dot(&self) -> String {
        let name = |v: VertexId| match self.label(v) {
            Some(r) => format!("\"{r}\""),
            None => format!("\"{v}\""),
        };
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            out.push_str(&format!("    {};\n", name(v)));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("    {} -- {};\n", name(u), name(v)));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiColoring {
    pub partition: BTreeMap<VertexId, u8>,
}

impl BiColoring {
    pub fn color(&self, v: VertexId) -> Option<u8> {
        self.partition.get(&v).copied()
    }

    pub fn class(&self, c: u8) -> BTreeSet<VertexId> {
        self.partition
            .iter()
            .filter(|(_, &k)| k == c)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn is_proper_for(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| match (self.color(u), self.color(v)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
    }
}

/// Witness that a graph has an odd cycle: both endpoints of `conflict`
/// received the same colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotBicolorable {
    pub conflict: (VertexId, VertexId),
}

/// Interchange form: `{"vertices":[{"id":0,"label":"Sw0"}],"edges":[[0,1]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Role>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            vertices: g
                .vertices()
                .map(|id| VertexDoc {
                    id,
                    label: g.label(id).cloned(),
                })
                .collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Graph> {
        let mut g = Graph::new();
        for v in doc.vertices {
            g.add_vertex(v.id)?;
            if let Some(r) = v.label {
                g.labels.insert(v.id, r);
            }
        }
        for [u, v] in doc.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        Graph::try_from(doc).map_err(serde::de::Error::custom)
    }
}
