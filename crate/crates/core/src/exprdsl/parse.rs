use std::collections::BTreeSet;

use thiserror::Error;

use super::expr::{BinaryOp, Expr, Node, UnaryOp};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent only when followed by a digit, so `2e` stays `2` then `e`
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s = &text[start..i];
            let v: f64 = s.parse().map_err(|_| ParseError { pos: start, msg: format!("malformed number `{s}`") })?;
            out.push((start, Tok::Num(v)));
            continue;
        }
        if c.is_ascii_lowercase() {
            while i < bytes.len() && bytes[i].is_ascii_lowercase() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(ParseError { pos: i, msg: format!("unexpected character `{c}`") }),
        };
        out.push((i, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    names: &'a mut Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinaryOp::Add } else { BinaryOp::Sub };
            self.at += 1;
            let rhs = self.product()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinaryOp::Mul } else { BinaryOp::Div };
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(Node::Unary(UnaryOp::Neg, Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            // right associative; the exponent may carry its own sign
            let exp = self.unary()?;
            return Ok(Node::Binary(BinaryOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(v) => {
                self.at += 1;
                Ok(Node::Const(v))
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.sum()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.at += 1;
                if let Some(op) = UnaryOp::from_name(&name) {
                    if self.peek() != Some(&Tok::LParen) {
                        return self.err(format!("function `{name}` requires parenthesized argument"));
                    }
                    self.at += 1;
                    let arg = self.sum()?;
                    self.expect_rparen()?;
                    return Ok(Node::Unary(op, Box::new(arg)));
                }
                match name.as_str() {
                    "pi" => Ok(Node::Pi),
                    "e" => Ok(Node::E),
                    _ => {
                        if self.peek() == Some(&Tok::LParen) {
                            return self.err(format!("unknown function `{name}`"));
                        }
                        let slot = match self.names.iter().position(|n| *n == name) {
                            Some(i) => i,
                            None => {
                                self.names.push(name);
                                self.names.len() - 1
                            }
                        };
                        Ok(Node::Var(slot))
                    }
                }
            }
            Tok::Op(c) => self.err(format!("unexpected operator `{c}`")),
            Tok::RParen => self.err("unexpected `)`"),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::RParen) {
            self.at += 1;
            Ok(())
        } else {
            self.err("expected `)`")
        }
    }
}

fn remap(node: Node, map: &[usize]) -> Node {
    match node {
        Node::Var(i) => Node::Var(map[i]),
        Node::Unary(op, a) => Node::Unary(op, Box::new(remap(*a, map))),
        Node::Binary(op, a, b) => Node::Binary(op, Box::new(remap(*a, map)), Box::new(remap(*b, map))),
        other => other,
    }
}

/// Parses expression text into an [`Expr`].
///
/// Precedence, tightest first: `^` (right associative), unary minus, `* /`, `+ -`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError { pos: 0, msg: "empty expression".into() });
    }
    let toks = lex(text)?;
    let mut names = Vec::new();
    let mut p = Parser { toks, at: 0, end: text.len(), names: &mut names };
    let root = p.sum()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    // canonical slot order: sorted variable names
    let sorted: Vec<String> = names.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let map: Vec<usize> = names.iter().map(|n| sorted.iter().position(|s| s == n).expect("name present")).collect();
    Ok(Expr { root: remap(root, &map), vars: sorted })
}
