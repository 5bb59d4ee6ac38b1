//! Alphabets, query syntax trees, mappings and problem instances.

pub mod alphabet;
pub mod cq;
pub mod instance;
mod lexer;
pub mod parse;
pub mod regex;

pub use alphabet::{Alphabet, Letter, Symbol, SymbolId, SymbolKind, Word};
pub use cq::{Atom, Cq, Ucq, Var};
pub use instance::{Mapping, Mode, ProblemInstance, Query, QueryKind, ViewDef, ViewSet};
pub use parse::{parse_instance, parse_regex, parse_regex_open, parse_ucq, parse_ucq_open, parse_views, Scope};
pub use regex::Regex;
