//! Stabilizer-state simulation used as an independent check of the graph
//! rules.

mod extract;
mod oracle;
mod tableau;

pub use extract::{graph_from_tableau, LocalOps};
pub use lc_test::{labeled_lc_equivalent, MAX_NULLITY};
pub use oracle::{
    all_graphs, cases_for, check_lc_unitary, check_measurement_rule, random_case, random_graph, trial_rng,
    verification_cases, verify, verify_lc_unitary, verify_measurement_rules, SweepReport, VerifyCase, VerifyConfig,
    VerifyReport,
};
pub use tableau::{apply_lc_unitary, tableau_from_graph, Gate, PauliRow, StabilizerTableau, MAX_QUBITS};
