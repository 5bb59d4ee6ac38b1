use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::alphabet::{Alphabet, SymbolId};
use super::cq::Ucq;
use super::regex::Regex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QueryKind {
    #[serde(rename = "rpq")]
    Rpq,
    #[serde(rename = "2rpq")]
    TwoRpq,
    #[serde(rename = "cq")]
    Cq,
    #[serde(rename = "ucq")]
    Ucq,
}

impl QueryKind {
    pub fn is_path(self) -> bool {
        matches!(self, QueryKind::Rpq | QueryKind::TwoRpq)
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rpq" => Some(QueryKind::Rpq),
            "2rpq" => Some(QueryKind::TwoRpq),
            "cq" => Some(QueryKind::Cq),
            "ucq" => Some(QueryKind::Ucq),
            _ => None,
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueryKind::Rpq => "rpq",
            QueryKind::TwoRpq => "2rpq",
            QueryKind::Cq => "cq",
            QueryKind::Ucq => "ucq",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Sound,
    Exact,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sound" => Some(Mode::Sound),
            "exact" => Some(Mode::Exact),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sound => "sound",
            Mode::Exact => "exact",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Path(Regex),
    Relational(Ucq),
}

impl Query {
    pub fn as_path(&self) -> Option<&Regex> {
        match self {
            Query::Path(r) => Some(r),
            Query::Relational(_) => None,
        }
    }

    pub fn as_relational(&self) -> Option<&Ucq> {
        match self {
            Query::Relational(q) => Some(q),
            Query::Path(_) => None,
        }
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        match self {
            Query::Path(r) => r.symbols(),
            Query::Relational(q) => q.predicates().into_iter().collect(),
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        match self {
            Query::Path(r) => r.to_text(alphabet),
            Query::Relational(q) => q.to_text(alphabet),
        }
    }
}

/// A statement `source ~> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mapping {
    pub source: Query,
    pub target: Query,
}

/// A view definition as written in a views file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViewDef {
    Empty,
    Path(Regex),
    Relational(Ucq),
}

impl ViewDef {
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        match self {
            ViewDef::Empty => "empty".to_string(),
            ViewDef::Path(r) => r.to_text(alphabet),
            ViewDef::Relational(q) => q.to_text(alphabet),
        }
    }
}

pub type ViewSet = BTreeMap<SymbolId, ViewDef>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub kind: QueryKind,
    pub mode: Mode,
    pub alphabet: Alphabet,
    pub mappings: Vec<Mapping>,
    /// `view` lines embedded in the instance file, if any.
    pub views: ViewSet,
}

impl ProblemInstance {
    /// Source symbols occurring in some source query, sorted by name.
    pub fn occurring_sources(&self) -> Vec<SymbolId> {
        let mut out: Vec<SymbolId> = self
            .mappings
            .iter()
            .flat_map(|m| m.source.symbols())
            .filter(|&s| self.alphabet.is_source(s))
            .collect();
        out.sort_by(|&a, &b| self.alphabet.name(a).cmp(self.alphabet.name(b)));
        out.dedup();
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.mappings.is_empty() {
            return Err(Error::invalid("an instance needs at least one mapping"));
        }
        for m in &self.mappings {
            let family_ok = match (&m.source, &m.target) {
                (Query::Path(_), Query::Path(_)) => self.kind.is_path(),
                (Query::Relational(_), Query::Relational(_)) => !self.kind.is_path(),
                _ => false,
            };
            if !family_ok {
                return Err(Error::invalid("mapping does not match the instance kind"));
            }
            if m.target.symbols().iter().any(|&s| self.alphabet.is_source(s)) {
                return Err(Error::invalid("target query mentions a source symbol"));
            }
            if let (Query::Relational(s), Query::Relational(t)) = (&m.source, &m.target) {
                if s.arity() != t.arity() {
                    return Err(Error::invalid("source and target queries differ in arity"));
                }
            }
        }
        Ok(())
    }

    /// Renders the instance back into the line-oriented file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("kind {}\nmode {}\n", self.kind, self.mode);
        let decl = |id: SymbolId| {
            if self.kind.is_path() {
                self.alphabet.name(id).to_string()
            } else {
                format!("{}/{}", self.alphabet.name(id), self.alphabet.arity(id))
            }
        };
        let sources: Vec<String> = self.alphabet.sources().map(decl).collect();
        let targets: Vec<String> = self.alphabet.targets().map(decl).collect();
        if !sources.is_empty() {
            out += &format!("source {}\n", sources.join(" "));
        }
        if !targets.is_empty() {
            out += &format!("target {}\n", targets.join(" "));
        }
        for m in &self.mappings {
            out += &format!(
                "map {} ~> {}\n",
                m.source.to_text(&self.alphabet),
                m.target.to_text(&self.alphabet)
            );
        }
        for (s, v) in &self.views {
            out += &format!("view {} = {}\n", self.alphabet.name(*s), v.to_text(&self.alphabet));
        }
        out
    }
}
