use std::fmt;

use super::alphabet::{Alphabet, Letter, SymbolId};

/// Regular expression over path letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(Letter),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn symbol(id: SymbolId) -> Self {
        Regex::Letter(Letter::forward(id))
    }

    /// Concatenation with the obvious simplifications (`∅·r = ∅`, `ε·r = r`).
    pub fn concat(parts: impl IntoIterator<Item = Regex>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Regex::Empty => return Regex::Empty,
                Regex::Epsilon => {}
                Regex::Concat(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Regex::Epsilon,
            1 => out.pop().unwrap(),
            _ => Regex::Concat(out),
        }
    }

    /// Union with flattening and deduplication; `∅` is the unit.
    pub fn union(parts: impl IntoIterator<Item = Regex>) -> Self {
        let mut out: Vec<Regex> = Vec::new();
        for p in parts {
            match p {
                Regex::Empty => {}
                Regex::Union(inner) => {
                    for q in inner {
                        if !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
                other => {
                    if !out.contains(&other) {
                        out.push(other);
                    }
                }
            }
        }
        match out.len() {
            0 => Regex::Empty,
            1 => out.pop().unwrap(),
            _ => Regex::Union(out),
        }
    }

    pub fn star(inner: Regex) -> Self {
        match inner {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            s @ Regex::Star(_) => s,
            // (ε|r)* = r*
            Regex::Union(parts) if parts.contains(&Regex::Epsilon) => {
                let rest: Vec<_> = parts.into_iter().filter(|p| *p != Regex::Epsilon).collect();
                Regex::star(Regex::union(rest))
            }
            other => Regex::Star(Box::new(other)),
        }
    }

    /// The regex for the inverse path language: reversed, with every letter inverted.
    pub fn inverse(&self) -> Regex {
        match self {
            Regex::Empty => Regex::Empty,
            Regex::Epsilon => Regex::Epsilon,
            Regex::Letter(l) => Regex::Letter(l.inverted()),
            Regex::Concat(parts) => Regex::Concat(parts.iter().rev().map(Regex::inverse).collect()),
            Regex::Union(parts) => Regex::Union(parts.iter().map(Regex::inverse).collect()),
            Regex::Star(r) => Regex::Star(Box::new(r.inverse())),
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Letter(l) => out.push(*l),
            Regex::Concat(ps) | Regex::Union(ps) => ps.iter().for_each(|p| p.collect_letters(out)),
            Regex::Star(r) => r.collect_letters(out),
        }
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        let mut s: Vec<_> = self.letters().into_iter().map(|l| l.symbol).collect();
        s.dedup();
        s
    }

    pub fn has_inverse(&self) -> bool {
        self.letters().iter().any(|l| l.inverse)
    }

    /// Number of nodes, used to bound generated expressions.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => 1,
            Regex::Concat(ps) | Regex::Union(ps) => 1 + ps.iter().map(Regex::size).sum::<usize>(),
            Regex::Star(r) => 1 + r.size(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> RegexDisplay<'a> {
        RegexDisplay {
            regex: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

pub struct RegexDisplay<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

// precedence: union 0, concat 1, star 2
fn write_regex(r: &Regex, a: &Alphabet, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match r {
        Regex::Empty => f.write_str("empty"),
        Regex::Epsilon => f.write_str("eps"),
        Regex::Letter(l) => f.write_str(&a.letter_name(*l)),
        Regex::Union(ps) => {
            if prec > 0 {
                f.write_str("(")?;
            }
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    f.write_str("|")?;
                }
                write_regex(p, a, 0, f)?;
            }
            if prec > 0 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Regex::Concat(ps) => {
            if prec > 1 {
                f.write_str("(")?;
            }
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write_regex(p, a, 1, f)?;
            }
            if prec > 1 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Regex::Star(inner) => {
            write_regex(inner, a, 2, f)?;
            f.write_str("*")
        }
    }
}

impl fmt::Display for RegexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_regex(self.regex, self.alphabet, 0, f)
    }
}
