//! Siting parcel lockers and consolidating pickup stations under
//! multinomial-logit customer choice.
//!
//! The service level of a configuration is a sum of ratios over customer
//! zones. The crate offers an exact MILP route (with optional conditional
//! McCormick strengthening), a fast heuristic that alternates a quadratic
//! transform with sparse sub-MILPs, a binary particle swarm to polish its
//! answer, and a brute-force oracle for testing.

pub mod bounds;
pub mod error;
pub mod exec;
pub mod gen;
pub mod io;
pub mod milp;
pub mod model;
pub mod oracle;
pub mod pso;
pub mod qtla;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{Instance, InstanceParts, Matrix, Mode, Penalty, PenaltyKind, Solution};
