use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Bar,
    Plus,
    Star,
    Inverse,
    Comma,
    Semi,
    Turnstile,
    Arrow,
    Equals,
    Slash,
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub column: usize,
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes one line. `col0` is the 1-based column of the first character of `text`.
pub(crate) fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        let single = |tok| Spanned { tok, column };
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            '.' => out.push(single(Tok::Dot)),
            '|' => out.push(single(Tok::Bar)),
            '+' => out.push(single(Tok::Plus)),
            '*' => out.push(single(Tok::Star)),
            ',' => out.push(single(Tok::Comma)),
            ';' => out.push(single(Tok::Semi)),
            '=' => out.push(single(Tok::Equals)),
            '/' => out.push(single(Tok::Slash)),
            '⁻' => out.push(single(Tok::Inverse)),
            '^' if chars.get(i + 1) == Some(&'-') => {
                out.push(single(Tok::Inverse));
                i += 2;
                continue;
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                out.push(single(Tok::Turnstile));
                i += 2;
                continue;
            }
            '~' if chars.get(i + 1) == Some(&'>') => {
                out.push(single(Tok::Arrow));
                i += 2;
                continue;
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    column,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Cursor over a token slice with error helpers.
pub(crate) struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    pub line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Spanned], line: usize, end_column: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_column,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.end_column, |s| s.column)
    }

    pub fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|s| &s.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn remaining(&self) -> &'a [Spanned] {
        &self.toks[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, usize)> {
        let column = self.column();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s.clone(), column))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    pub fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}
