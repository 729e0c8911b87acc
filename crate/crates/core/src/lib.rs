//! Graph-state transformations for multi-star quantum networks.
//!
//! Graphs stand in for graph states. Local complementation, vertex deletion
//! and the Pauli measurement rules act on them directly; the [`stabilizer`]
//! module re-derives every rule on an explicit stabilizer tableau so the graph
//! rules can be checked independently. On top of that sit the multi-star
//! builders, the connectivity protocols and the removal-set search.

pub mod builders;
pub mod canon;
pub mod classify;
pub mod dense;
pub mod error;
pub mod exec;
pub mod graph;
pub mod lc;
pub mod measurement;
pub mod protocols;
pub mod search;
pub mod stabilizer;

pub use builders::{
    build_bi_star, build_complete, build_complete_bipartite, build_multi_star, build_path, build_star, build_tri_star,
    MultiStarSpec,
};
pub use canon::{are_isomorphic, canonical_graph, CanonForm};
pub use classify::{classify_topology, complete_bipartite_parts, is_star_graph, Shape, TopologyClass};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{BiColoring, Graph, NotBicolorable, Role, VertexId};
pub use lc::{are_lc_equivalent, are_lc_equivalent_with, lc_orbit_classes, DEFAULT_MAX_ORBIT, MAX_LC_VERTICES};
pub use measurement::{
    apply_protocol, apply_protocol_traced, measure_x, measure_y, measure_z, CostReport, MeasurementStep, PauliBasis,
    Protocol, ProtocolRun,
};
pub use protocols::{
    cost_csv, cost_surface, generate_bi_star_variant, generate_extranet, generate_max_connect,
    generate_max_connect_even, generate_max_connect_with, multi_star_layout, predicted_alpha, predicted_alpha_hetero,
    predicted_cost, predicted_cost_even, predicted_cost_hetero, reduce_even_to_odd, reduce_even_to_odd_with,
    removal_table_protocol, CostRoute, CostRow, EvenReduction, K0Side, MaxConnectOptions, MaxConnectOutcome,
    MultiStarLayout, RemovalOutcome, RemovalTableRow, SwitchGate, REMOVAL_TABLE,
};
pub use search::{
    classify_all, classify_all_with, classify_config, distinct_results, enumerate_configs, synthesize_gates,
    ConfigOutcome, Enumeration, RemovalConfig, MAX_SEARCH_SWITCHES,
};
