//! Iterated parallel belief revision over total preorders on worlds,
//! with TeamQueue aggregation and a finite-model postulate checker.

pub mod aggregation;
pub mod error;
pub mod logic;
pub mod parallel;
pub mod postulates;
pub mod scenario;
pub mod serial;
pub mod tpo;

pub use aggregation::{aggregate, make_strategy, stq, Strategy, TeamSelection};
pub use error::{Error, Result};
pub use logic::{Formula, FormulaSet, Language, World, WorldSet};
pub use parallel::{ParallelContractionOperator, ParallelRevisionOperator};
pub use serial::{SerialContraction, SerialRevision};
pub use tpo::{ConditionalSet, Profile, Tpo};
