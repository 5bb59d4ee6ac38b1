//! One-way finite automata: construction, boolean operations, containment and
//! substitution of view languages.

mod compile;
mod dot;
mod dwa;
mod nwa;
mod ops;
mod substitute;
mod to_regex;

pub use compile::{compile, compile_with_epsilon};
pub use dot::to_dot;
pub use dwa::{determinize, determinize_over, Dwa};
pub use nwa::{Nwa, StateId};
pub use ops::{
    complement, contains, containment_counterexample, equivalence_counterexample, equivalent,
    is_empty, product, shortest_word, DEFAULT_DETERMINIZATION_CAP,
};
pub use substitute::{substitute, ViewLanguage, ViewLanguages};
pub use to_regex::to_regex;
