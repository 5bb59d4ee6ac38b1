use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of a declared symbol inside an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Source,
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub arity: usize,
}

/// A letter of a path alphabet: a binary symbol, possibly traversed backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub symbol: SymbolId,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(symbol: SymbolId) -> Self {
        Letter {
            symbol,
            inverse: false,
        }
    }

    pub fn backward(symbol: SymbolId) -> Self {
        Letter {
            symbol,
            inverse: true,
        }
    }

    /// The involution `p ↦ p⁻`.
    pub fn inverted(self) -> Self {
        Letter {
            symbol: self.symbol,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

/// Source and target symbols of an instance. Names are unique across both kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    #[serde(skip)]
    by_name: HashMap<String, SymbolId>,
}

pub const RESERVED_WORDS: &[&str] = &["eps", "empty"];

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, kind: SymbolKind, arity: usize) -> Result<SymbolId> {
        if RESERVED_WORDS.contains(&name) {
            return Err(Error::invalid(format!("`{name}` is reserved")));
        }
        if arity == 0 {
            return Err(Error::invalid(format!("symbol `{name}` needs a positive arity")));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::invalid(format!("symbol `{name}` declared twice")));
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(Symbol {
            name: name.to_string(),
            kind,
            arity,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares a target symbol whose name does not clash with any existing one.
    pub fn fresh_target(&mut self, base: &str, arity: usize) -> SymbolId {
        let mut name = base.to_string();
        let mut n = 0;
        while self.by_name.contains_key(&name) {
            n += 1;
            name = format!("{base}{n}");
        }
        self.declare(&name, SymbolKind::Target, arity)
            .expect("fresh name cannot collide")
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.index()]
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id.index()].name
    }

    pub fn kind(&self, id: SymbolId) -> SymbolKind {
        self.symbols[id.index()].kind
    }

    pub fn is_source(&self, id: SymbolId) -> bool {
        self.kind(id) == SymbolKind::Source
    }

    pub fn arity(&self, id: SymbolId) -> usize {
        self.symbols[id.index()].arity
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.symbols.len() as u32).map(SymbolId)
    }

    pub fn sources(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.ids().filter(|&id| self.kind(id) == SymbolKind::Source)
    }

    pub fn targets(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.ids().filter(|&id| self.kind(id) == SymbolKind::Target)
    }

    /// Forward letters of all target symbols, in declaration order.
    pub fn target_letters(&self) -> Vec<Letter> {
        self.targets().map(Letter::forward).collect()
    }

    /// Target letters together with their inverses.
    pub fn target_letters_two_way(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self
            .targets()
            .flat_map(|s| [Letter::forward(s), Letter::backward(s)])
            .collect();
        out.sort();
        out
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        if letter.inverse {
            format!("{}^-", self.name(letter.symbol))
        } else {
            self.name(letter.symbol).to_string()
        }
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "eps".to_string();
        }
        word.iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a whitespace-separated word such as `b1 b2^-`; `eps` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut word = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "eps" {
                continue;
            }
            let (name, inverse) = match tok.strip_suffix("^-") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let id = self.lookup(name).ok_or_else(|| Error::UndeclaredSymbol {
                line: 1,
                column: 1,
                name: name.to_string(),
            })?;
            word.push(Letter {
                symbol: id,
                inverse,
            });
        }
        Ok(word)
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolKind::Source => f.write_str("source"),
            SymbolKind::Target => f.write_str("target"),
        }
    }
}
