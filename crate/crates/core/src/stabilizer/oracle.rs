//! Checks of the graph rules against the tableau simulation, and the sweeps
//! that run them over exhaustive and random case sets.

use super::extract::graph_from_tableau;
use super::lc_test::labeled_lc_equivalent;
use super::tableau::{apply_lc_unitary, tableau_from_graph};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, VertexId};
use crate::lc::{are_lc_equivalent, DEFAULT_MAX_ORBIT, MAX_LC_VERTICES};
use crate::measurement::{MeasurementStep, PauliBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Measures `i` on the tableau of `g` (outcome +1), extracts a graph from the
/// result and compares it with the graph rule's output. Equivalence is
/// required both qubit-for-qubit (labelled LC test) and as LC orbits up to
/// isomorphism.
pub fn check_measurement_rule(g: &Graph, basis: PauliBasis, i: VertexId, k0: Option<VertexId>) -> Result<bool> {
    if g.order() > MAX_LC_VERTICES {
        return Err(Error::TooManyVertices {
            count: g.order(),
            limit: MAX_LC_VERTICES,
        });
    }
    let rule = MeasurementStep { basis, target: i, k0 }.apply(g)?;
    let ids: Vec<VertexId> = g.vertices().collect();
    let q = ids.binary_search(&i).map_err(|_| Error::VertexNotFound(i))?;
    let t = tableau_from_graph(g)?.measure_postselect(basis, q)?;
    let (extracted, _) = graph_from_tableau(&t)?;
    let survivors: Vec<VertexId> = ids.into_iter().filter(|&v| v != i).collect();
    let extracted = extracted.relabel(|v| survivors[v.index()]);
    let rule = rule.unlabeled();
    Ok(labeled_lc_equivalent(&extracted, &rule)? && are_lc_equivalent(&extracted, &rule, DEFAULT_MAX_ORBIT)?)
}

/// Exact check that the local unitary for vertex `a` turns the graph state of
/// `g` into the graph state of its local complement (same stabilizer group,
/// signs included).
pub fn check_lc_unitary(g: &Graph, a: VertexId) -> Result<bool> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let pos = |v: &VertexId| ids.binary_search(v).map_err(|_| Error::VertexNotFound(*v));
    let q = pos(&a)?;
    let nbrs = g.neighborhood(a)?.iter().map(pos).collect::<Result<Vec<_>>>()?;
    let got = apply_lc_unitary(&tableau_from_graph(g)?, q, &nbrs)?;
    got.validate()?;
    Ok(got.same_state(&tableau_from_graph(&g.local_complement(a)?)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCase {
    pub graph: Graph,
    pub basis: PauliBasis,
    pub vertex: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_vertices: usize,
    pub trials: usize,
    pub seed: u64,
    pub exhaustive_up_to: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_vertices: 10,
            trials: 500,
            seed: 0,
            exhaustive_up_to: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<VerifyCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub measurement_rules: SweepReport,
    pub lc_unitary: SweepReport,
}

/// Every labelled graph on `0..n`.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    assert!(pairs.len() < 64, "too many vertices to enumerate");
    (0u64..1 << pairs.len()).map(move |mask| {
        let e: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(n, &e).unwrap()
    })
}

/// Erdos-Renyi graph with edge probability 1/2 on `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.random_bool(0.5) {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
    }
    g
}

/// Generator for trial `index` of a seeded sweep. Each trial gets its own
/// stream so results do not depend on how trials are scheduled.
pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Random `(graph, vertex, basis, k0)` with `1..=max_vertices` vertices.
pub fn random_case(seed: u64, index: usize, max_vertices: usize) -> VerifyCase {
    let mut rng = trial_rng(seed, index);
    let n = rng.random_range(1..=max_vertices.max(1));
    let graph = random_graph(&mut rng, n);
    let vertex = VertexId(rng.random_range(0..n as u32));
    let basis = PauliBasis::ALL[rng.random_range(0..3)];
    let nbrs: Vec<VertexId> = graph.neighborhood(vertex).unwrap().iter().copied().collect();
    let k0 = (basis == PauliBasis::X && !nbrs.is_empty()).then(|| nbrs[rng.random_range(0..nbrs.len())]);
    VerifyCase {
        graph,
        basis,
        vertex,
        k0,
    }
}

/// Every `(vertex, basis, k0)` combination on `g`, with every valid `k0` for
/// X measurements.
pub fn cases_for(g: &Graph) -> Vec<VerifyCase> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let case = |basis, k0| VerifyCase {
            graph: g.clone(),
            basis,
            vertex: v,
            k0,
        };
        out.push(case(PauliBasis::Z, None));
        out.push(case(PauliBasis::Y, None));
        let nbrs = g.neighborhood(v).unwrap();
        if nbrs.is_empty() {
            out.push(case(PauliBasis::X, None));
        }
        for &k in nbrs {
            out.push(case(PauliBasis::X, Some(k)));
        }
    }
    out
}

fn sweep(cases: &[VerifyCase], exec: Exec, check: impl Fn(&VerifyCase) -> Result<bool> + Sync + Send) -> SweepReport {
    let results = exec.map(cases, |c| check(c));
    let mut report = SweepReport {
        cases: cases.len(),
        passed: 0,
        failed: 0,
        first_failure: None,
        first_error: None,
    };
    for (c, r) in cases.iter().zip(results) {
        if matches!(r, Ok(true)) {
            report.passed += 1;
            continue;
        }
        report.failed += 1;
        if report.first_failure.is_none() {
            report.first_failure = Some(c.clone());
            report.first_error = r.err().map(|e| e.to_string());
        }
    }
    report
}

/// Exhaustive cases on up to `exhaustive_up_to` vertices followed by `trials`
/// random cases.
pub fn verification_cases(cfg: &VerifyConfig) -> Vec<VerifyCase> {
    let mut cases: Vec<VerifyCase> = (1..=cfg.exhaustive_up_to)
        .flat_map(all_graphs)
        .flat_map(|g| cases_for(&g))
        .collect();
    cases.extend((0..cfg.trials).map(|t| random_case(cfg.seed, t, cfg.max_vertices)));
    cases
}

pub fn verify_measurement_rules(cfg: &VerifyConfig, exec: Exec) -> SweepReport {
    sweep(&verification_cases(cfg), exec, |c| {
        check_measurement_rule(&c.graph, c.basis, c.vertex, c.k0)
    })
}

/// Runs [`check_lc_unitary`] at every vertex of the exhaustive graphs and at
/// the sampled vertex of each random case.
pub fn verify_lc_unitary(cfg: &VerifyConfig, exec: Exec) -> SweepReport {
    let mut cases: Vec<VerifyCase> = (1..=cfg.exhaustive_up_to)
        .flat_map(all_graphs)
        .flat_map(|g| {
            g.vertices()
                .map(|v| VerifyCase {
                    graph: g.clone(),
                    basis: PauliBasis::X,
                    vertex: v,
                    k0: None,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    cases.extend((0..cfg.trials).map(|t| {
        let c = random_case(cfg.seed, t, cfg.max_vertices);
        VerifyCase { k0: None, ..c }
    }));
    sweep(&cases, exec, |c| check_lc_unitary(&c.graph, c.vertex))
}

pub fn verify(cfg: &VerifyConfig, exec: Exec) -> VerifyReport {
    VerifyReport {
        measurement_rules: verify_measurement_rules(cfg, exec),
        lc_unitary: verify_lc_unitary(cfg, exec),
    }
}
