//! Parsers for the instance file, views files, path expressions and rule-syntax queries.
//!
//! Instance files are line oriented. `#` starts a comment. Recognized lines:
//!
//! ```text
//! kind rpq|2rpq|cq|ucq
//! mode sound|exact
//! source a1 a2 a3          # path kinds; relational kinds use name/arity
//! target r/2 s/2
//! map <source query> ~> <target query>
//! view <source symbol> = <regex | rule | empty>
//! ```

use std::collections::HashMap;

use super::alphabet::{Alphabet, Letter, SymbolId, SymbolKind};
use super::cq::{Atom, Cq, Ucq, Var};
use super::instance::{Mapping, Mode, ProblemInstance, Query, QueryKind, ViewDef, ViewSet};
use super::lexer::{lex, Cursor, Tok};
use super::regex::Regex;
use crate::error::{Error, Result};

/// Which symbols a query may mention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Source and target symbols (left-hand side of a mapping).
    Any,
    /// Target symbols only.
    TargetOnly,
}

fn resolve(
    alphabet: &Alphabet,
    name: &str,
    scope: Scope,
    line: usize,
    column: usize,
) -> Result<SymbolId> {
    let id = alphabet.lookup(name).ok_or_else(|| Error::UndeclaredSymbol {
        line,
        column,
        name: name.to_string(),
    })?;
    if scope == Scope::TargetOnly && alphabet.is_source(id) {
        return Err(Error::SourceInTarget {
            line,
            column,
            name: name.to_string(),
        });
    }
    Ok(id)
}

struct RegexParser<'a, 'c, F> {
    cur: Cursor<'c>,
    resolve: &'a mut F,
    two_way: bool,
}

impl<F> RegexParser<'_, '_, F>
where
    F: FnMut(&str, usize, usize) -> Result<SymbolId>,
{
    fn union(&mut self) -> Result<Regex> {
        let mut parts = vec![self.concat()?];
        while self.cur.eat(&Tok::Bar) || self.cur.eat(&Tok::Plus) {
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Regex::Union(parts)
        })
    }

    fn starts_atom(&self) -> bool {
        matches!(self.cur.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = vec![self.postfix()?];
        loop {
            if self.cur.eat(&Tok::Dot) || self.starts_atom() {
                parts.push(self.postfix()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Regex::Concat(parts)
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            let column = self.cur.column();
            if self.cur.eat(&Tok::Star) {
                r = Regex::Star(Box::new(r));
            } else if self.cur.eat(&Tok::Inverse) {
                if !self.two_way {
                    return Err(Error::InverseOutsideTwoWay {
                        line: self.cur.line,
                        column,
                        name: "(...)".to_string(),
                    });
                }
                r = match r {
                    Regex::Letter(l) => Regex::Letter(l.inverted()),
                    other => other.inverse(),
                };
            } else {
                break;
            }
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let column = self.cur.column();
        match self.cur.next() {
            Some(Tok::LParen) => {
                let r = self.union()?;
                self.cur.expect(&Tok::RParen, "`)`")?;
                Ok(r)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "eps" => Ok(Regex::Epsilon),
                "empty" => Ok(Regex::Empty),
                _ => {
                    let id = (self.resolve)(name, self.cur.line, column)?;
                    // a bare inverse on a symbol reports the symbol name
                    if !self.two_way && self.cur.peek() == Some(&Tok::Inverse) {
                        return Err(Error::InverseOutsideTwoWay {
                            line: self.cur.line,
                            column,
                            name: name.clone(),
                        });
                    }
                    Ok(Regex::symbol(id))
                }
            },
            _ => Err(self.cur.error("expected a symbol, `eps`, `empty` or `(`")),
        }
    }
}

fn parse_regex_tokens<F>(
    toks: &[super::lexer::Spanned],
    line: usize,
    end_column: usize,
    two_way: bool,
    resolve: &mut F,
) -> Result<Regex>
where
    F: FnMut(&str, usize, usize) -> Result<SymbolId>,
{
    let mut p = RegexParser {
        cur: Cursor::new(toks, line, end_column),
        resolve,
        two_way,
    };
    let r = p.union()?;
    p.cur.finish()?;
    Ok(r)
}

/// Parses a path expression over declared symbols.
///
/// `.` or juxtaposition is concatenation, `|` or `+` union, `*` star, `eps` the empty
/// word and `empty` the empty language. A suffix `^-` inverts a letter (2RPQ only).
pub fn parse_regex(text: &str, alphabet: &Alphabet, scope: Scope, two_way: bool) -> Result<Regex> {
    let toks = lex(text, 1, 1)?;
    let mut res = |name: &str, line, column| resolve(alphabet, name, scope, line, column);
    parse_regex_tokens(&toks, 1, text.chars().count() + 1, two_way, &mut res)
}

/// Parses a path expression, declaring every unknown identifier as a binary target symbol.
pub fn parse_regex_open(text: &str, alphabet: &mut Alphabet, two_way: bool) -> Result<Regex> {
    let toks = lex(text, 1, 1)?;
    let mut res = |name: &str, _line, _column| match alphabet.lookup(name) {
        Some(id) => Ok(id),
        None => alphabet.declare(name, SymbolKind::Target, 2),
    };
    parse_regex_tokens(&toks, 1, text.chars().count() + 1, two_way, &mut res)
}

fn parse_cq(cur: &mut Cursor<'_>, alphabet: &Alphabet, scope: Scope) -> Result<Cq> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, Var> = HashMap::new();
    let mut var = |name: String| -> Var {
        *index.entry(name.clone()).or_insert_with(|| {
            names.push(name);
            Var(names.len() as u32 - 1)
        })
    };

    let (head_name, _) = cur.ident("a query head")?;
    cur.expect(&Tok::LParen, "`(`")?;
    let mut head = Vec::new();
    let mut head_cols = Vec::new();
    if !cur.eat(&Tok::RParen) {
        loop {
            let (v, col) = cur.ident("a variable")?;
            head.push(var(v));
            head_cols.push(col);
            if cur.eat(&Tok::RParen) {
                break;
            }
            cur.expect(&Tok::Comma, "`,` or `)`")?;
        }
    }
    cur.expect(&Tok::Turnstile, "`:-`")?;

    let mut atoms = Vec::new();
    loop {
        let (pred, col) = cur.ident("an atom")?;
        let id = resolve(alphabet, &pred, scope, cur.line, col)?;
        cur.expect(&Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if !cur.eat(&Tok::RParen) {
            loop {
                let (v, _) = cur.ident("a variable")?;
                args.push(var(v));
                if cur.eat(&Tok::RParen) {
                    break;
                }
                cur.expect(&Tok::Comma, "`,` or `)`")?;
            }
        }
        let expected = alphabet.arity(id);
        if args.len() != expected {
            return Err(Error::ArityMismatch {
                line: cur.line,
                column: col,
                name: pred,
                expected,
                found: args.len(),
            });
        }
        atoms.push(Atom {
            predicate: id,
            args,
        });
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }

    let cq = Cq {
        name: head_name,
        head,
        atoms,
        var_names: names,
    };
    if let Some(pos) = cq
        .head
        .iter()
        .position(|v| !cq.atoms.iter().any(|a| a.args.contains(v)))
    {
        return Err(Error::Syntax {
            line: cur.line,
            column: head_cols[pos],
            message: format!("head variable `{}` does not occur in the body", cq.var_name(cq.head[pos])),
        });
    }
    Ok(cq)
}

fn parse_ucq_cursor(cur: &mut Cursor<'_>, alphabet: &Alphabet, scope: Scope) -> Result<Ucq> {
    let mut disjuncts = vec![parse_cq(cur, alphabet, scope)?];
    while cur.eat(&Tok::Semi) {
        let column = cur.column();
        let d = parse_cq(cur, alphabet, scope)?;
        if d.arity() != disjuncts[0].arity() {
            return Err(Error::Syntax {
                line: cur.line,
                column,
                message: "disjuncts of a union must share one head arity".to_string(),
            });
        }
        disjuncts.push(d);
    }
    Ok(Ucq { disjuncts })
}

/// Parses `q(x,y) :- r(x,z), s(z,y) ; q(x,y) :- t(x,y)`.
pub fn parse_ucq(text: &str, alphabet: &Alphabet, scope: Scope) -> Result<Ucq> {
    let toks = lex(text, 1, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1);
    let q = parse_ucq_cursor(&mut cur, alphabet, scope)?;
    cur.finish()?;
    Ok(q)
}

/// Parses a union of rules, declaring every unknown body predicate as a target symbol
/// with the arity of its first use.
pub fn parse_ucq_open(text: &str, alphabet: &mut Alphabet) -> Result<Ucq> {
    let toks = lex(text, 1, 1)?;
    let mut in_body = false;
    for (i, t) in toks.iter().enumerate() {
        match &t.tok {
            Tok::Turnstile => in_body = true,
            Tok::Semi => in_body = false,
            Tok::Ident(name) if in_body && toks.get(i + 1).map(|n| &n.tok) == Some(&Tok::LParen)
                && alphabet.lookup(name).is_none() => {
                    let mut arity = 0;
                    for n in &toks[i + 2..] {
                        match n.tok {
                            Tok::RParen => break,
                            Tok::Ident(_) => arity += 1,
                            _ => {}
                        }
                    }
                    alphabet.declare(name, SymbolKind::Target, arity)?;
                }
            _ => {}
        }
    }
    parse_ucq(text, alphabet, Scope::TargetOnly)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_keyword(line: &str) -> Option<(&str, &str, usize)> {
    let trimmed = line.trim_start();
    if trimmed.is_empty() {
        return None;
    }
    let lead = line.len() - trimmed.len();
    let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let kw = &trimmed[..end];
    let rest = &trimmed[end..];
    // column (1-based, in chars) of `rest`
    let col = line[..lead + end].chars().count() + 1;
    Some((kw, rest, col))
}

fn parse_declarations(
    rest: &str,
    line: usize,
    col: usize,
    kind: SymbolKind,
    qkind: QueryKind,
    alphabet: &mut Alphabet,
) -> Result<()> {
    let toks = lex(rest, line, col)?;
    let mut cur = Cursor::new(&toks, line, col + rest.chars().count());
    while !cur.at_end() {
        let (name, c) = cur.ident("a symbol name")?;
        let arity = if cur.eat(&Tok::Slash) {
            let (n, ac) = cur.ident("an arity")?;
            n.parse::<usize>().map_err(|_| Error::Syntax {
                line,
                column: ac,
                message: format!("invalid arity `{n}`"),
            })?
        } else {
            2
        };
        if qkind.is_path() && arity != 2 {
            return Err(Error::ArityMismatch {
                line,
                column: c,
                name,
                expected: 2,
                found: arity,
            });
        }
        alphabet.declare(&name, kind, arity).map_err(|e| Error::Syntax {
            line,
            column: c,
            message: e.to_string(),
        })?;
    }
    Ok(())
}

struct FileParser {
    kind: Option<QueryKind>,
    mode: Mode,
    alphabet: Alphabet,
    mappings: Vec<Mapping>,
    views: ViewSet,
}

fn parse_query(
    toks: &[super::lexer::Spanned],
    line: usize,
    end_column: usize,
    kind: QueryKind,
    alphabet: &Alphabet,
    scope: Scope,
) -> Result<Query> {
    if kind.is_path() {
        let mut res = |name: &str, l, c| resolve(alphabet, name, scope, l, c);
        let r = parse_regex_tokens(toks, line, end_column, kind == QueryKind::TwoRpq, &mut res)?;
        Ok(Query::Path(r))
    } else {
        let mut cur = Cursor::new(toks, line, end_column);
        let column = cur.column();
        let q = parse_ucq_cursor(&mut cur, alphabet, scope)?;
        cur.finish()?;
        if kind == QueryKind::Cq && q.disjuncts.len() > 1 {
            return Err(Error::Syntax {
                line,
                column,
                message: "unions are not allowed in a cq instance".to_string(),
            });
        }
        Ok(Query::Relational(q))
    }
}

fn parse_view_line(
    rest: &str,
    line: usize,
    col: usize,
    kind: QueryKind,
    alphabet: &Alphabet,
) -> Result<(SymbolId, ViewDef)> {
    let toks = lex(rest, line, col)?;
    let end = col + rest.chars().count();
    let mut cur = Cursor::new(&toks, line, end);
    let (name, c) = cur.ident("a source symbol")?;
    let id = alphabet.lookup(&name).ok_or(Error::UndeclaredSymbol {
        line,
        column: c,
        name: name.clone(),
    })?;
    if !alphabet.is_source(id) {
        return Err(Error::Syntax {
            line,
            column: c,
            message: format!("`{name}` is not a source symbol"),
        });
    }
    cur.expect(&Tok::Equals, "`=`")?;
    let body = cur.remaining();
    if let [only] = body {
        if only.tok == Tok::Ident("empty".to_string()) {
            return Ok((id, ViewDef::Empty));
        }
    }
    let q = parse_query(body, line, end, kind, alphabet, Scope::TargetOnly)?;
    let def = match q {
        Query::Path(r) => ViewDef::Path(r),
        Query::Relational(u) => {
            if u.arity() != alphabet.arity(id) {
                return Err(Error::ArityMismatch {
                    line,
                    column: c,
                    name,
                    expected: alphabet.arity(id),
                    found: u.arity(),
                });
            }
            ViewDef::Relational(u)
        }
    };
    Ok((id, def))
}

impl FileParser {
    fn kind(&self, line: usize) -> Result<QueryKind> {
        self.kind.ok_or(Error::Syntax {
            line,
            column: 1,
            message: "`kind` must be declared first".to_string(),
        })
    }

    fn line(&mut self, raw: &str, line: usize) -> Result<()> {
        let text = strip_comment(raw);
        let Some((kw, rest, col)) = split_keyword(text) else {
            return Ok(());
        };
        match kw {
            "kind" => {
                let k = rest.trim();
                let kind = QueryKind::parse(k).ok_or_else(|| Error::Syntax {
                    line,
                    column: col + 1,
                    message: format!("unknown kind `{k}` (expected rpq, 2rpq, cq or ucq)"),
                })?;
                if self.kind.is_some() {
                    return Err(Error::Syntax {
                        line,
                        column: 1,
                        message: "`kind` declared twice".to_string(),
                    });
                }
                self.kind = Some(kind);
            }
            "mode" => {
                let m = rest.trim();
                self.mode = Mode::parse(m).ok_or_else(|| Error::Syntax {
                    line,
                    column: col + 1,
                    message: format!("unknown mode `{m}` (expected sound or exact)"),
                })?;
            }
            "source" | "target" => {
                let qk = self.kind(line)?;
                let sk = if kw == "source" {
                    SymbolKind::Source
                } else {
                    SymbolKind::Target
                };
                parse_declarations(rest, line, col, sk, qk, &mut self.alphabet)?;
            }
            "map" => {
                let qk = self.kind(line)?;
                let toks = lex(rest, line, col)?;
                let end = col + rest.chars().count();
                let Some(split) = toks.iter().position(|t| t.tok == Tok::Arrow) else {
                    return Err(Error::Syntax {
                        line,
                        column: end,
                        message: "expected `~>` in mapping".to_string(),
                    });
                };
                let arrow_col = toks[split].column;
                let source =
                    parse_query(&toks[..split], line, arrow_col, qk, &self.alphabet, Scope::Any)?;
                let target = parse_query(
                    &toks[split + 1..],
                    line,
                    end,
                    qk,
                    &self.alphabet,
                    Scope::TargetOnly,
                )?;
                if let (Query::Relational(s), Query::Relational(t)) = (&source, &target) {
                    if s.arity() != t.arity() {
                        return Err(Error::Syntax {
                            line,
                            column: arrow_col,
                            message: format!(
                                "source query has arity {} but target query has arity {}",
                                s.arity(),
                                t.arity()
                            ),
                        });
                    }
                }
                self.mappings.push(Mapping { source, target });
            }
            "view" => {
                let qk = self.kind(line)?;
                let (id, def) = parse_view_line(rest, line, col, qk, &self.alphabet)?;
                self.views.insert(id, def);
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column: text.len() - text.trim_start().len() + 1,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
        Ok(())
    }
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let mut p = FileParser {
        kind: None,
        mode: Mode::Sound,
        alphabet: Alphabet::new(),
        mappings: Vec::new(),
        views: ViewSet::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        p.line(raw, i + 1)?;
    }
    let kind = p.kind.ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `kind` line".to_string(),
    })?;
    if p.mappings.is_empty() {
        return Err(Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "an instance needs at least one `map` line".to_string(),
        });
    }
    let inst = ProblemInstance {
        kind,
        mode: p.mode,
        alphabet: p.alphabet,
        mappings: p.mappings,
        views: p.views,
    };
    inst.validate()?;
    Ok(inst)
}

/// Parses a views file (`view <symbol> = <definition>` lines) against an instance.
pub fn parse_views(text: &str, instance: &ProblemInstance) -> Result<ViewSet> {
    let mut views = ViewSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stripped = strip_comment(raw);
        let Some((kw, rest, col)) = split_keyword(stripped) else {
            continue;
        };
        if kw != "view" {
            return Err(Error::Syntax {
                line,
                column: 1,
                message: format!("expected `view`, found `{kw}`"),
            });
        }
        let (id, def) = parse_view_line(rest, line, col, instance.kind, &instance.alphabet)?;
        views.insert(id, def);
    }
    Ok(views)
}

/// Parses a single letter or word; used by tooling that reads witnesses back.
pub fn parse_letter(text: &str, alphabet: &Alphabet) -> Result<Letter> {
    let w = alphabet.parse_word(text)?;
    match w.as_slice() {
        [l] => Ok(*l),
        _ => Err(Error::invalid(format!("`{text}` is not a single letter"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEC6: &str = "kind rpq\nsource a1 a2 a3\ntarget b1 b2\nmap (a1|a3).(a2|a3) ~> b1.b2\n";

    #[test]
    fn parses_path_instance() {
        let inst = parse_instance(SEC6).unwrap();
        assert_eq!(inst.mappings.len(), 1);
        assert_eq!(inst.alphabet.sources().count(), 3);
        assert_eq!(inst.alphabet.targets().count(), 2);
        assert_eq!(inst.kind, QueryKind::Rpq);
    }

    #[test]
    fn parses_cq_instance() {
        let inst = parse_instance(
            "kind cq\nsource a/2\ntarget r/2\nmap q(x,y) :- a(x,y) ~> q(x,y) :- r(x,y)\n",
        )
        .unwrap();
        assert_eq!(inst.mappings.len(), 1);
        let s = inst.mappings[0].source.as_relational().unwrap();
        assert_eq!(s.disjuncts[0].atoms.len(), 1);
    }

    #[test]
    fn undeclared_symbol_is_named() {
        let err = parse_instance("kind rpq\nsource a\ntarget b1\nmap a ~> b1.b3\n").unwrap_err();
        match err {
            Error::UndeclaredSymbol { name, line, column } => {
                assert_eq!(name, "b3");
                assert_eq!(line, 4);
                assert_eq!(column, 13);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn source_symbol_in_target_query() {
        let err = parse_instance("kind rpq\nsource a\ntarget b\nmap a ~> a.b\n").unwrap_err();
        assert!(matches!(err, Error::SourceInTarget { ref name, .. } if name == "a"));
    }

    #[test]
    fn arity_mismatch() {
        let err = parse_instance("kind cq\nsource a/2\ntarget r/2\nmap q(x) :- a(x,y) ~> q(x) :- r(x)\n")
            .unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { expected: 2, found: 1, .. }));
    }

    #[test]
    fn inverse_requires_two_way() {
        let err = parse_instance("kind rpq\nsource a\ntarget b\nmap a ~> b^-\n").unwrap_err();
        assert!(matches!(err, Error::InverseOutsideTwoWay { ref name, .. } if name == "b"));
        let inst = parse_instance("kind 2rpq\nsource a\ntarget b\nmap a ~> b^-\n").unwrap();
        let r = inst.mappings[0].target.as_path().unwrap();
        assert!(r.has_inverse());
    }

    #[test]
    fn regex_forms() {
        let mut a = Alphabet::new();
        let b1 = a.declare("b1", SymbolKind::Target, 2).unwrap();
        let b2 = a.declare("b2", SymbolKind::Target, 2).unwrap();
        let r = parse_regex("b1.b2", &a, Scope::TargetOnly, false).unwrap();
        assert_eq!(r, Regex::Concat(vec![Regex::symbol(b1), Regex::symbol(b2)]));
        let r = parse_regex("b1 b2", &a, Scope::TargetOnly, false).unwrap();
        assert_eq!(r, Regex::Concat(vec![Regex::symbol(b1), Regex::symbol(b2)]));
        assert_eq!(parse_regex("eps", &a, Scope::TargetOnly, false).unwrap(), Regex::Epsilon);
        let u1 = parse_regex("b1|b2", &a, Scope::TargetOnly, false).unwrap();
        let u2 = parse_regex("b1+b2", &a, Scope::TargetOnly, false).unwrap();
        assert_eq!(u1, u2);
    }

    #[test]
    fn two_way_whitespace_concat() {
        let mut a = Alphabet::new();
        let ia = a.declare("a", SymbolKind::Target, 2).unwrap();
        let ib = a.declare("b", SymbolKind::Target, 2).unwrap();
        let ic = a.declare("c", SymbolKind::Target, 2).unwrap();
        let r = parse_regex("a b^- b c", &a, Scope::TargetOnly, true).unwrap();
        assert_eq!(
            r,
            Regex::Concat(vec![
                Regex::symbol(ia),
                Regex::Letter(Letter::backward(ib)),
                Regex::symbol(ib),
                Regex::symbol(ic),
            ])
        );
    }

    #[test]
    fn cq_with_two_atoms() {
        let mut a = Alphabet::new();
        a.declare("r", SymbolKind::Target, 2).unwrap();
        a.declare("s", SymbolKind::Target, 2).unwrap();
        let q = parse_ucq("q(x,y) :- r(x,z), s(z,y)", &a, Scope::TargetOnly).unwrap();
        assert_eq!(q.disjuncts.len(), 1);
        assert_eq!(q.disjuncts[0].atoms.len(), 2);
        assert_eq!(q.arity(), 2);
        let u = parse_ucq("q(x,y) :- r(x,y) ; q(x,y) :- s(x,y)", &a, Scope::TargetOnly).unwrap();
        assert_eq!(u.disjuncts.len(), 2);
    }

    #[test]
    fn unsafe_head_rejected() {
        let mut a = Alphabet::new();
        a.declare("r", SymbolKind::Target, 2).unwrap();
        assert!(parse_ucq("q(x,w) :- r(x,y)", &a, Scope::TargetOnly).is_err());
    }

    #[test]
    fn views_file() {
        let inst = parse_instance(SEC6).unwrap();
        let v = parse_views("view a1 = b1\nview a2 = b2 # trailing\nview a3 = empty\n", &inst).unwrap();
        assert_eq!(v.len(), 3);
        let a3 = inst.alphabet.lookup("a3").unwrap();
        assert_eq!(v[&a3], ViewDef::Empty);
        assert!(parse_views("view b1 = b1\n", &inst).is_err());
        assert!(parse_views("view a1 = a2\n", &inst).is_err());
    }

    #[test]
    fn instance_text_round_trip() {
        let inst = parse_instance(SEC6).unwrap();
        let again = parse_instance(&inst.to_text()).unwrap();
        assert_eq!(inst.mappings, again.mappings);
    }
}
