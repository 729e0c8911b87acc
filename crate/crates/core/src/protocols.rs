//! Connectivity protocols on multi-star networks and their closed-form
//! predictions.
//!
//! Generators work on labelled multi-star graphs: switches carry
//! `Role::Switch(i)` and consecutive switches (by index) are adjacent, every
//! other vertex is a leaf of exactly one switch. That makes them composable,
//! e.g. the even-m reduction followed by the maximal-connectivity sweep on the
//! reduced graph.

use crate::builders::{build_complete, build_multi_star, MultiStarSpec};
use crate::classify::{classify_topology, complete_bipartite_parts, is_star_graph, pendant_count, TopologyClass};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, VertexId};
use crate::lc::{are_lc_equivalent, DEFAULT_MAX_ORBIT};
use crate::measurement::{
    apply_protocol, apply_protocol_traced, CostReport, MeasurementStep, PauliBasis, Protocol, ProtocolRun,
};
use serde::{Deserialize, Serialize};

/// Largest final star that is additionally checked against `K_alpha` with the
/// LC orbit search.
pub const LC_CHECK_LIMIT: usize = 10;

fn require_odd(m: usize) -> Result<()> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenSwitchCount(m));
    }
    Ok(())
}

pub fn predicted_alpha(m: usize, n: usize) -> Result<usize> {
    require_odd(m)?;
    Ok((n + 1) * (m + 1) / 2)
}

pub fn predicted_cost(m: usize, n: usize) -> Result<usize> {
    require_odd(m)?;
    Ok((n + 1) * (m - 1) / 2)
}

/// `(m+1)/2` surviving switches plus the leaves of the even-indexed ones.
pub fn predicted_alpha_hetero(leaf_counts: &[usize]) -> Result<usize> {
    let m = leaf_counts.len();
    require_odd(m)?;
    Ok(m.div_ceil(2) + leaf_counts.iter().step_by(2).sum::<usize>())
}

/// `(m-1)/2` switch measurements plus the leaves of the odd-indexed switches.
pub fn predicted_cost_hetero(leaf_counts: &[usize]) -> Result<usize> {
    let m = leaf_counts.len();
    require_odd(m)?;
    Ok((m - 1) / 2 + leaf_counts.iter().skip(1).step_by(2).sum::<usize>())
}

/// Switches and their leaves, read from the labels of a multi-star graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiStarLayout {
    /// Switch vertices in path order.
    pub switches: Vec<VertexId>,
    /// Switch index from each switch's label.
    pub indices: Vec<usize>,
    pub leaves: Vec<Vec<VertexId>>,
}

impl MultiStarLayout {
    pub fn m(&self) -> usize {
        self.switches.len()
    }

    pub fn leaf_counts(&self) -> Vec<usize> {
        self.leaves.iter().map(Vec::len).collect()
    }

    /// Path position of the switch labelled `index`.
    pub fn position(&self, index: usize) -> Option<usize> {
        self.indices.iter().position(|&i| i == index)
    }
}

fn not_multi_star(g: &Graph) -> Error {
    Error::TopologyMismatch {
        expected: "labelled multi-star".into(),
        found: classify_topology(g).kind_name().into(),
    }
}

pub fn multi_star_layout(g: &Graph) -> Result<MultiStarLayout> {
    let mut tagged: Vec<(usize, VertexId)> = g
        .labels()
        .iter()
        .filter_map(|(&v, r)| r.switch_index().map(|i| (i, v)))
        .collect();
    tagged.sort_unstable();
    if tagged.is_empty() {
        return Err(not_multi_star(g));
    }
    let switches: Vec<VertexId> = tagged.iter().map(|&(_, v)| v).collect();
    let indices: Vec<usize> = tagged.iter().map(|&(i, _)| i).collect();
    if switches.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(not_multi_star(g));
    }
    let mut leaves = Vec::with_capacity(switches.len());
    let mut leaf_total = 0;
    for &s in &switches {
        let ls: Vec<VertexId> = g
            .neighborhood(s)?
            .iter()
            .copied()
            .filter(|u| g.label(*u).and_then(|r| r.switch_index()).is_none())
            .collect();
        if ls.iter().any(|&l| g.degree(l).unwrap() != 1) {
            return Err(not_multi_star(g));
        }
        leaf_total += ls.len();
        leaves.push(ls);
    }
    if g.order() != switches.len() + leaf_total || g.size() != switches.len() - 1 + leaf_total {
        return Err(not_multi_star(g));
    }
    Ok(MultiStarLayout {
        switches,
        indices,
        leaves,
    })
}

/// Which neighbouring switch serves as `k0` in the X sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum K0Side {
    #[default]
    Right,
    Left,
}

/// Basis of the final switch measurement in the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Ending {
    #[default]
    X,
    Y,
}

/// The sweep on an odd multi-star: odd positions from `m-2` down to 1, each
/// gets Z on its leaves and then X with `k0` on the chosen side.
pub fn max_connect_protocol(layout: &MultiStarLayout, side: K0Side, ending: Ending) -> Result<Protocol> {
    let m = layout.m();
    require_odd(m)?;
    let mut steps = Vec::new();
    for i in (1..m.saturating_sub(1)).rev().step_by(2) {
        steps.extend(layout.leaves[i].iter().map(|&l| MeasurementStep::z(l)));
        let k0 = match side {
            K0Side::Right => layout.switches[i + 1],
            K0Side::Left => layout.switches[i - 1],
        };
        if i == 1 && ending == Ending::Y {
            steps.push(MeasurementStep::y(layout.switches[i]));
        } else {
            steps.push(MeasurementStep::x(layout.switches[i], k0));
        }
    }
    Ok(Protocol::new(steps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MaxConnectOptions {
    pub k0_side: K0Side,
    pub keep_trace: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxConnectOutcome {
    pub protocol: Protocol,
    pub final_graph: Graph,
    pub alpha: usize,
    pub cost: CostReport,
    pub predicted_alpha: usize,
    pub predicted_cost: usize,
    pub topology_class: TopologyClass,
    /// Whether the final star was also checked against `K_alpha` by orbit search.
    pub lc_checked: bool,
    #[serde(skip)]
    pub trace: Vec<Graph>,
}

fn execute(g: &Graph, p: &Protocol, keep_trace: bool) -> Result<ProtocolRun> {
    if keep_trace {
        apply_protocol_traced(g, p)
    } else {
        apply_protocol(g, p)
    }
}

pub fn generate_max_connect(spec: &MultiStarSpec) -> Result<MaxConnectOutcome> {
    require_odd(spec.m())?;
    generate_max_connect_with(&build_multi_star(spec), MaxConnectOptions::default())
}

/// Runs the sweep on a labelled multi-star and checks the result: a star on
/// the predicted number of vertices, reached with the predicted number of
/// measurements, and LC-equivalent to the complete graph when small enough.
pub fn generate_max_connect_with(g: &Graph, opts: MaxConnectOptions) -> Result<MaxConnectOutcome> {
    let layout = multi_star_layout(g)?;
    let counts = layout.leaf_counts();
    let predicted_alpha = predicted_alpha_hetero(&counts)?;
    let predicted_cost = predicted_cost_hetero(&counts)?;
    let protocol = max_connect_protocol(&layout, opts.k0_side, Ending::X)?;
    let run = execute(g, &protocol, opts.keep_trace)?;
    let alpha = run.graph.order();
    let violation = |what: String| Err(Error::ProtocolInvariantViolation(what));
    if alpha != predicted_alpha {
        return violation(format!("{alpha} survivors, predicted {predicted_alpha}"));
    }
    if run.cost.total != predicted_cost {
        return violation(format!("{} measurements, predicted {predicted_cost}", run.cost.total));
    }
    if !is_star_graph(&run.graph) {
        return violation(format!("final graph is {}, not a star", classify_topology(&run.graph)));
    }
    let lc_checked = alpha <= LC_CHECK_LIMIT;
    if lc_checked && !are_lc_equivalent(&run.graph, &build_complete(alpha), DEFAULT_MAX_ORBIT)? {
        return violation(format!("final star is not LC-equivalent to K_{alpha}"));
    }
    Ok(MaxConnectOutcome {
        protocol,
        topology_class: classify_topology(&run.graph),
        final_graph: run.graph,
        alpha,
        cost: run.cost,
        predicted_alpha,
        predicted_cost,
        lc_checked,
        trace: run.trace,
    })
}

/// How an even multi-star is cut down to an odd one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EvenReduction {
    /// Z on the leaves of the last switch, then Z on the switch.
    #[default]
    DropLast,
    /// Z on the leaves of the second-to-last switch, then Y on it, which joins
    /// its two neighbours.
    MeasureSecondToLast,
}

pub fn reduce_even_to_odd(spec: &MultiStarSpec) -> Result<(Protocol, MultiStarSpec)> {
    reduce_even_to_odd_with(spec, EvenReduction::DropLast)
}

pub fn reduce_even_to_odd_with(spec: &MultiStarSpec, how: EvenReduction) -> Result<(Protocol, MultiStarSpec)> {
    let m = spec.m();
    if m % 2 == 1 {
        return Err(Error::OddSwitchCount(m));
    }
    let s = match how {
        EvenReduction::DropLast => m - 1,
        EvenReduction::MeasureSecondToLast => m - 2,
    };
    let mut steps: Vec<MeasurementStep> = spec.leaves_of(s).into_iter().map(MeasurementStep::z).collect();
    steps.push(match how {
        EvenReduction::DropLast => MeasurementStep::z(s as u32),
        EvenReduction::MeasureSecondToLast => MeasurementStep::y(s as u32),
    });
    let mut counts = spec.leaf_counts.clone();
    counts.remove(s);
    Ok((Protocol::new(steps), MultiStarSpec::new(counts)?))
}

/// Even-m route: reduction, then the sweep on the reduced network. The
/// returned protocol and cost cover both stages; predictions are those of the
/// reduced network plus the reduction's own measurements.
pub fn generate_max_connect_even(
    spec: &MultiStarSpec,
    how: EvenReduction,
    opts: MaxConnectOptions,
) -> Result<MaxConnectOutcome> {
    let (reduction, _) = reduce_even_to_odd_with(spec, how)?;
    let first = execute(&build_multi_star(spec), &reduction, opts.keep_trace)?;
    let mut out = generate_max_connect_with(&first.graph, opts)?;
    out.predicted_cost += reduction.len();
    out.protocol = reduction.then(&out.protocol);
    out.cost = first.cost.followed_by(&out.cost);
    let mut trace = first.trace;
    trace.append(&mut out.trace);
    out.trace = trace;
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BiStarOutcome {
    pub protocol: Protocol,
    pub final_graph: Graph,
    pub topology_class: TopologyClass,
    pub cost: CostReport,
    /// Switch measurements, leaf Z measurements excluded.
    pub switch_measurements: usize,
    #[serde(skip)]
    pub trace: Vec<Graph>,
}

/// The sweep with Y instead of X on the last switch.
pub fn generate_bi_star_variant(spec: &MultiStarSpec) -> Result<BiStarOutcome> {
    require_odd(spec.m())?;
    if spec.m() < 3 {
        return Err(Error::TopologyMismatch {
            expected: "multi-star with at least 3 switches".into(),
            found: format!("{} switch", spec.m()),
        });
    }
    let g = build_multi_star(spec);
    let layout = multi_star_layout(&g)?;
    let protocol = max_connect_protocol(&layout, K0Side::Right, Ending::Y)?;
    let run = apply_protocol_traced(&g, &protocol)?;
    let switch_measurements = protocol
        .steps
        .iter()
        .filter(|s| layout.switches.contains(&s.target))
        .count();
    if switch_measurements != (spec.m() - 1) / 2 {
        return Err(Error::ProtocolInvariantViolation(format!(
            "{switch_measurements} switch measurements, expected {}",
            (spec.m() - 1) / 2
        )));
    }
    Ok(BiStarOutcome {
        protocol,
        topology_class: classify_topology(&run.graph),
        final_graph: run.graph,
        cost: run.cost,
        switch_measurements,
        trace: run.trace,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtranetOutcome {
    pub protocol: Protocol,
    pub final_graph: Graph,
    pub topology_class: TopologyClass,
    /// Leaf counts of the two centers, in the bi-star's center order.
    pub parts: [usize; 2],
}

/// X on the first center with `k0` the second, then Z on the second: every
/// leaf of one center ends up joined to every leaf of the other.
pub fn generate_extranet(g: &Graph) -> Result<ExtranetOutcome> {
    let class = classify_topology(g);
    let TopologyClass::BiStar {
        centers: [c0, c1],
        leaves,
    } = class
    else {
        return Err(Error::TopologyMismatch {
            expected: "BiStar".into(),
            found: class.kind_name().into(),
        });
    };
    let protocol = Protocol::new(vec![MeasurementStep::x(c0, c1), MeasurementStep::z(c1)]);
    let run = apply_protocol(g, &protocol)?;
    let side = |c: VertexId| -> Vec<VertexId> {
        g.neighborhood(c)
            .unwrap()
            .iter()
            .copied()
            .filter(|&u| u != c0 && u != c1)
            .collect()
    };
    let (a, b) = (side(c0), side(c1));
    let exact = run.graph.size() == a.len() * b.len() && a.iter().all(|&u| b.iter().all(|&w| run.graph.has_edge(u, w)));
    if !exact {
        return Err(Error::ProtocolInvariantViolation(
            "extranet result is not complete bipartite between the leaf sets".into(),
        ));
    }
    debug_assert_eq!(
        complete_bipartite_parts(&run.graph).map(|(x, y)| (x.min(y), x.max(y))),
        Some((leaves[0].min(leaves[1]), leaves[0].max(leaves[1])))
    );
    Ok(ExtranetOutcome {
        protocol,
        topology_class: classify_topology(&run.graph),
        final_graph: run.graph,
        parts: leaves,
    })
}

/// A switch measurement written in terms of switch indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchGate {
    pub basis: PauliBasis,
    pub switch: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<usize>,
}

impl SwitchGate {
    pub const fn x(switch: usize, k0: usize) -> Self {
        SwitchGate {
            basis: PauliBasis::X,
            switch,
            k0: Some(k0),
        }
    }

    pub const fn y(switch: usize) -> Self {
        SwitchGate {
            basis: PauliBasis::Y,
            switch,
            k0: None,
        }
    }

    pub fn mirrored(self, m: usize) -> Self {
        SwitchGate {
            switch: m - 1 - self.switch,
            k0: self.k0.map(|k| m - 1 - k),
            ..self
        }
    }

    /// Step on a builder-numbered multi-star, where switch `i` has id `i`.
    pub fn step(self) -> MeasurementStep {
        MeasurementStep {
            basis: self.basis,
            target: VertexId(self.switch as u32),
            k0: self.k0.map(|k| VertexId(k as u32)),
        }
    }
}

impl std::fmt::Display for SwitchGate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.k0 {
            Some(k) => write!(f, "{}({},{})", self.basis, self.switch, k),
            None => write!(f, "{}({})", self.basis, self.switch),
        }
    }
}

/// One row of the m = 7 table: removal set, switch gates in order, and the
/// tabulated result (kind, centers, centers marked as holding most clients).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RemovalTableRow {
    pub removal: [usize; 3],
    pub gates: &'static [SwitchGate],
    pub kind: &'static str,
    pub centers: &'static [usize],
    pub marked: &'static [usize],
}

/// The first row's gates are the sweep with `k0` on the left and a final Y.
pub const REMOVAL_TABLE: [RemovalTableRow; 6] = [
    RemovalTableRow {
        removal: [1, 3, 5],
        gates: &[SwitchGate::x(5, 4), SwitchGate::x(3, 2), SwitchGate::y(1)],
        kind: "BiStar",
        centers: &[0, 6],
        marked: &[6],
    },
    RemovalTableRow {
        removal: [1, 2, 3],
        gates: &[SwitchGate::x(1, 0), SwitchGate::x(3, 2)],
        kind: "TriStar",
        centers: &[4, 5, 6],
        marked: &[4],
    },
    RemovalTableRow {
        removal: [2, 3, 4],
        gates: &[SwitchGate::x(2, 1), SwitchGate::x(4, 3)],
        kind: "TriStar",
        centers: &[0, 5, 6],
        marked: &[5],
    },
    RemovalTableRow {
        removal: [1, 2, 4],
        gates: &[SwitchGate::y(1), SwitchGate::x(4, 5), SwitchGate::x(2, 3)],
        kind: "BiStar",
        centers: &[0, 6],
        marked: &[6],
    },
    RemovalTableRow {
        removal: [1, 2, 5],
        gates: &[SwitchGate::y(1), SwitchGate::x(5, 4), SwitchGate::x(2, 3)],
        kind: "BiStar",
        centers: &[0, 6],
        marked: &[0, 6],
    },
    RemovalTableRow {
        removal: [1, 3, 4],
        gates: &[SwitchGate::y(3), SwitchGate::x(4, 5), SwitchGate::x(1, 2)],
        kind: "BiStar",
        centers: &[0, 6],
        marked: &[6],
    },
];

/// Result of running a removal set with its switch gates.
#[derive(Debug, Clone, Serialize)]
pub struct RemovalOutcome {
    pub removal: Vec<usize>,
    pub gates: Vec<SwitchGate>,
    pub protocol: Protocol,
    pub final_graph: Graph,
    pub topology_class: TopologyClass,
    /// Switch index of each center of a star-family result, in class order.
    pub centers: Vec<usize>,
    /// Centers now holding more leaves than they started with.
    pub heavy: Vec<usize>,
    pub cost: CostReport,
    #[serde(skip)]
    pub trace: Vec<Graph>,
}

/// Z on the leaves of the removed switches (ascending), then `gates`, on the
/// builder-numbered multi-star of `spec`.
pub fn run_removal(spec: &MultiStarSpec, removal: &[usize], gates: &[SwitchGate]) -> Result<RemovalOutcome> {
    let g = build_multi_star(spec);
    let mut sorted = removal.to_vec();
    sorted.sort_unstable();
    let mut steps: Vec<MeasurementStep> = sorted
        .iter()
        .flat_map(|&i| spec.leaves_of(i))
        .map(MeasurementStep::z)
        .collect();
    steps.extend(gates.iter().map(|gate| gate.step()));
    let protocol = Protocol::new(steps);
    let run = apply_protocol_traced(&g, &protocol)?;
    let class = classify_topology(&run.graph);
    let switch_of = |v: VertexId| run.graph.label(v).and_then(|r| r.switch_index());
    let centers: Vec<usize> = class.centers().into_iter().filter_map(switch_of).collect();
    let heavy = class
        .centers()
        .into_iter()
        .filter_map(|c| switch_of(c).filter(|&i| pendant_count(&run.graph, c) > spec.leaf_counts[i]))
        .collect();
    Ok(RemovalOutcome {
        removal: sorted,
        gates: gates.to_vec(),
        protocol,
        topology_class: class,
        final_graph: run.graph,
        centers,
        heavy,
        cost: run.cost,
        trace: run.trace,
    })
}

fn mirror_set(set: &[usize], m: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&i| m - 1 - i).collect();
    out.sort_unstable();
    out
}

/// Table row for a removal set, mirrored when the set is the mirror image of
/// a tabulated one. The flag tells whether mirroring was needed.
pub fn removal_table_row(removal: &[usize]) -> Result<(RemovalTableRow, bool)> {
    let mut set = removal.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != 3 || set.len() != removal.len() {
        return Err(Error::InvalidRemovalSet(removal.to_vec()));
    }
    for row in REMOVAL_TABLE {
        if row.removal[..] == set[..] {
            return Ok((row, false));
        }
        if mirror_set(&row.removal, 7) == set {
            return Ok((row, true));
        }
    }
    Err(Error::InvalidRemovalSet(removal.to_vec()))
}

/// Runs a removal set of the m = 7 table on `spec`.
pub fn removal_table_protocol(removal: &[usize], spec: &MultiStarSpec) -> Result<RemovalOutcome> {
    if spec.m() != 7 {
        return Err(Error::TopologyMismatch {
            expected: "multi-star with 7 switches".into(),
            found: format!("{} switches", spec.m()),
        });
    }
    let (row, mirrored) = removal_table_row(removal)?;
    let gates: Vec<SwitchGate> = row
        .gates
        .iter()
        .map(|g| if mirrored { g.mirrored(7) } else { *g })
        .collect();
    run_removal(spec, removal, &gates)
}

/// Whether an outcome matches a table row: same kind, same center switches and
/// the same number of centers holding extra clients.
pub fn matches_table_row(out: &RemovalOutcome, row: &RemovalTableRow) -> bool {
    let mut centers = out.centers.clone();
    centers.sort_unstable();
    out.topology_class.kind_name() == row.kind && centers == row.centers && out.heavy.len() == row.marked.len()
}

/// How a cost row was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostRoute {
    Direct,
    EvenReduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostRow {
    pub m: usize,
    pub n: usize,
    pub predicted_cost: usize,
    pub actual_cost: usize,
    pub route: CostRoute,
}

/// Predicted measurement count for the even route: reduction plus the sweep on
/// `m - 1` switches, `(n+1) m / 2` in total.
pub fn predicted_cost_even(m: usize, n: usize) -> Result<usize> {
    if m % 2 == 1 {
        return Err(Error::OddSwitchCount(m));
    }
    Ok((n + 1) * m / 2)
}

/// Predicted against simulated cost for every `1 <= m <= m_max` (odd only
/// unless `include_even`) and `0 <= n <= n_max`.
pub fn cost_surface(m_max: usize, n_max: usize, include_even: bool, exec: Exec) -> Result<Vec<CostRow>> {
    let grid: Vec<(usize, usize)> = (1..=m_max)
        .filter(|m| include_even || m % 2 == 1)
        .flat_map(|m| (0..=n_max).map(move |n| (m, n)))
        .collect();
    exec.map(&grid, |&(m, n)| {
        let spec = MultiStarSpec::homogeneous(m, n)?;
        if m % 2 == 1 {
            let out = generate_max_connect(&spec)?;
            Ok(CostRow {
                m,
                n,
                predicted_cost: predicted_cost(m, n)?,
                actual_cost: out.cost.total,
                route: CostRoute::Direct,
            })
        } else {
            let out = generate_max_connect_even(&spec, EvenReduction::DropLast, MaxConnectOptions::default())?;
            Ok(CostRow {
                m,
                n,
                predicted_cost: predicted_cost_even(m, n)?,
                actual_cost: out.cost.total,
                route: CostRoute::EvenReduction,
            })
        }
    })
    .into_iter()
    .collect()
}

/// CSV with header `m,n,predicted_cost,actual_cost`, plus a `route` column
/// when asked for.
pub fn cost_csv(rows: &[CostRow], with_route: bool) -> String {
    let mut out = String::from("m,n,predicted_cost,actual_cost");
    if with_route {
        out.push_str(",route");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{}", r.m, r.n, r.predicted_cost, r.actual_cost));
        if with_route {
            out.push_str(match r.route {
                CostRoute::Direct => ",direct",
                CostRoute::EvenReduction => ",even_reduction",
            });
        }
        out.push('\n');
    }
    out
}
