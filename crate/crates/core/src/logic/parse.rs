//! Recursive-descent parser for goal formulas.
//!
//! Grammar, loosest-binding first (`->` associates to the right, `<->` to the
//! left, `~` binds tightest):
//!
//! ```text
//! formula := imp ( '<->' imp )*
//! imp     := or ( '->' imp )?
//! or      := and ( '|' and )*
//! and     := unary ( '&' unary )*
//! unary   := '~' unary | primary
//! primary := 'true' | 'false' | 'p' '(' id ',' id ')'
//!          | 'same' '(' ids [ ';' ids ] ')' | 'apart' '(' id ';' ids ')'
//!          | '(' formula ')'
//! ```
//!
//! `same(i1,…,im)` abbreviates the conjunction of `p(i1,ij)` for `j ≥ 2`;
//! `same(i1,…,im; j1,…,jk)` appends the conjuncts `~p(i1,jl)`; and
//! `apart(i; j1,…,jk)` is the conjunction of the `~p(i,jl)` alone.

use crate::error::{Error, Result};
use crate::logic::{Formula, PairVar};
use crate::partitions::Player;

/// Parses formula text over the ambient player set `{1..n}`.
pub fn parse_formula(text: &str, n: u32) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        n,
        end: text.len(),
    };
    let phi = parser.formula()?;
    match parser.peek() {
        None => Ok(phi),
        Some(tok) => Err(Error::parse(
            tok.pos,
            format!("unexpected `{}` after a complete formula", tok.kind),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Ident(String),
    Int(u32),
    LParen,
    RParen,
    Comma,
    Semicolon,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
}

impl std::fmt::Display for TokenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TokenKind::Ident(s) => f.write_str(s),
            TokenKind::Int(v) => write!(f, "{v}"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Semicolon => f.write_str(";"),
            TokenKind::Tilde => f.write_str("~"),
            TokenKind::Amp => f.write_str("&"),
            TokenKind::Pipe => f.write_str("|"),
            TokenKind::Arrow => f.write_str("->"),
            TokenKind::DoubleArrow => f.write_str("<->"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'(' => {
                tokens.push(Token { kind: TokenKind::LParen, pos });
                i += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::RParen, pos });
                i += 1;
            }
            b',' => {
                tokens.push(Token { kind: TokenKind::Comma, pos });
                i += 1;
            }
            b';' => {
                tokens.push(Token { kind: TokenKind::Semicolon, pos });
                i += 1;
            }
            b'~' => {
                tokens.push(Token { kind: TokenKind::Tilde, pos });
                i += 1;
            }
            b'&' => {
                tokens.push(Token { kind: TokenKind::Amp, pos });
                i += 1;
            }
            b'|' => {
                tokens.push(Token { kind: TokenKind::Pipe, pos });
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push(Token { kind: TokenKind::Arrow, pos });
                    i += 2;
                } else {
                    return Err(Error::parse(pos, "expected `->`"));
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    tokens.push(Token { kind: TokenKind::DoubleArrow, pos });
                    i += 3;
                } else {
                    return Err(Error::parse(pos, "expected `<->`"));
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value: u32 = digits
                    .parse()
                    .map_err(|_| Error::parse(start, format!("`{digits}` is too large")))?;
                tokens.push(Token { kind: TokenKind::Int(value), pos });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_string()),
                    pos,
                });
            }
            _ => {
                return Err(Error::parse(
                    pos,
                    format!("unexpected character `{}`", text[pos..].chars().next().unwrap()),
                ));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n: u32,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<()> {
        let here = self.here();
        match self.next() {
            Some(tok) if tok.kind == kind => Ok(()),
            Some(tok) => Err(Error::parse(
                tok.pos,
                format!("expected `{kind}`, found `{}`", tok.kind),
            )),
            None => Err(Error::parse(here, format!("expected `{kind}`, found end of input"))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.eat(&TokenKind::DoubleArrow) {
            let rhs = self.imp()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&TokenKind::Arrow) {
            let rhs = self.imp()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&TokenKind::Pipe) {
            let rhs = self.and()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&TokenKind::Amp) {
            let rhs = self.unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&TokenKind::Tilde) {
            Ok(self.unary()?.not())
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        let here = self.here();
        let tok = self
            .next()
            .ok_or_else(|| Error::parse(here, "expected a formula, found end of input"))?;
        match tok.kind {
            TokenKind::LParen => {
                let phi = self.formula()?;
                self.expect(TokenKind::RParen)?;
                Ok(phi)
            }
            TokenKind::Ident(name) => match name.as_str() {
                "true" => Ok(Formula::Top),
                "false" => Ok(Formula::Bot),
                "p" => self.pair_atom(tok.pos),
                "same" => self.same_macro(tok.pos),
                "apart" => self.apart_macro(tok.pos),
                other => Err(Error::parse(
                    tok.pos,
                    format!("unknown name `{other}`; expected p(...), same(...), apart(...), true or false"),
                )),
            },
            kind => Err(Error::parse(tok.pos, format!("expected a formula, found `{kind}`"))),
        }
    }

    fn player_id(&mut self) -> Result<(Player, usize)> {
        let here = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Int(v),
                pos,
            }) => {
                if v == 0 {
                    return Err(Error::parse(pos, "player ids start at 1"));
                }
                if v > self.n {
                    return Err(Error::parse(
                        pos,
                        format!("player {v} is out of range: this game has players 1..={}", self.n),
                    ));
                }
                Ok((Player(v), pos))
            }
            Some(tok) => Err(Error::parse(
                tok.pos,
                format!("expected a player id, found `{}`", tok.kind),
            )),
            None => Err(Error::parse(here, "expected a player id, found end of input")),
        }
    }

    fn pair(&mut self, a: Player, b: Player, pos: usize) -> Result<PairVar> {
        PairVar::new(a, b).map_err(|_| Error::parse(pos, format!("reflexive atom p({a},{b})")))
    }

    fn pair_atom(&mut self, start: usize) -> Result<Formula> {
        self.expect(TokenKind::LParen)?;
        let (a, _) = self.player_id()?;
        self.expect(TokenKind::Comma)?;
        let (b, _) = self.player_id()?;
        self.expect(TokenKind::RParen)?;
        Ok(Formula::Atom(self.pair(a, b, start)?))
    }

    fn id_list(&mut self) -> Result<Vec<(Player, usize)>> {
        let mut ids = vec![self.player_id()?];
        while self.eat(&TokenKind::Comma) {
            ids.push(self.player_id()?);
        }
        Ok(ids)
    }

    /// `same(i1,…,im)` or `same(i1,…,im; j1,…,jk)`: everyone in the first
    /// list sits with `i1`, everyone in the second list does not.
    fn same_macro(&mut self, start: usize) -> Result<Formula> {
        self.expect(TokenKind::LParen)?;
        let with = self.id_list()?;
        let without = if self.eat(&TokenKind::Semicolon) {
            self.id_list()?
        } else {
            Vec::new()
        };
        self.expect(TokenKind::RParen)?;
        let (anchor, _) = with[0];
        let mut conjuncts = Vec::new();
        for &(other, pos) in &with[1..] {
            conjuncts.push(Formula::Atom(self.pair(anchor, other, pos)?));
        }
        for &(other, pos) in &without {
            conjuncts.push(Formula::Atom(self.pair(anchor, other, pos)?).not());
        }
        if conjuncts.is_empty() {
            return Err(Error::parse(start, "same(...) needs at least two players"));
        }
        Ok(Formula::conj(conjuncts))
    }

    /// `apart(i; j1,…,jk)`: player `i` sits with none of the `jl`.
    fn apart_macro(&mut self, _start: usize) -> Result<Formula> {
        self.expect(TokenKind::LParen)?;
        let (anchor, _) = self.player_id()?;
        self.expect(TokenKind::Semicolon)?;
        let others = self.id_list()?;
        self.expect(TokenKind::RParen)?;
        let mut conjuncts = Vec::new();
        for &(other, pos) in &others {
            conjuncts.push(Formula::Atom(self.pair(anchor, other, pos)?).not());
        }
        Ok(Formula::conj(conjuncts))
    }
}
