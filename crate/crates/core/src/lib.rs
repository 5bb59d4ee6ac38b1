//! Synthesis of views that make a schema mapping capturing, for regular path queries,
//! two-way regular path queries and unions of conjunctive queries.

pub mod automata;
pub mod cli;
pub mod congruence;
pub mod cq;
pub mod error;
pub mod model;
pub mod oracle;
pub mod report;
pub mod rpq;
pub mod twoway;

pub use error::{Error, Result};
