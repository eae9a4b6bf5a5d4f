//! Reconstruction of patching matrices from asymptotic data (the inverse
//! problem): ansatz construction, exact elimination solvers, and the real-root
//! machinery they rely on.

mod ansatz;
mod mpoly;
mod solve;
mod sturm;

pub use ansatz::{build_ansatz, AnsatzSystem, TargetCharges, TargetClass};
pub use mpoly::MPoly;
pub use solve::{
    classify_solution, solve_system, FamilyTag, Residual, Solution, SolutionSet,
};
pub use sturm::{count_real_roots_in, isolate_real_roots, isolate_real_roots_exact, RootInterval};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InverseError {
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    /// The system is contradictory; the payload is the certificate.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// The charges leave a continuous family; more data (e.g. nodes) needed.
    #[error("underdetermined system: {0}")]
    Underdetermined(String),
}
