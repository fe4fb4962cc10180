//! Graph entropy, rate triples and the grid oracle.

mod channel;
mod graph_entropy;
pub(crate) mod objective;
mod oracle;
pub(crate) mod solver;
mod triple;

pub use channel::{Channel, ChannelDump};
pub use graph_entropy::{
    conditional_graph_entropy, joint_graph_entropy, joint_graph_entropy_with_cap, FamilyMode, RestartStats, SolveReport,
    MAX_CANDIDATES,
};
pub use oracle::{grid_oracle, OracleObjective, OracleResult, MAX_GRID_POINTS};
pub use solver::SolverConfig;
pub use triple::{coupling, rate_triple, triple_of, RateTriple};
