//! Problem ingestion, joint pmfs and information measures.

mod pmf;
mod predicates;
mod problem;

pub use pmf::{binary_entropy, conditional_mutual_information, mutual_information, Pmf, Role, RoleSet};
pub use predicates::{check_conditional_independence, check_partially_invertible};
pub use problem::{load_problem, load_problem_file, FnEntry, ProbEntry, ProblemDocument, ProblemSpec};
