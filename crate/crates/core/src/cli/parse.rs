//! Expression language over arithmetical functions.
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := factor ('*' factor)*
//! factor  := scalar '.' factor | primary
//! scalar  := '-'? NUMBER            (integer, decimal or p/q)
//! primary := NAME | 'sigma' '(' scalar ')' | UNARY '(' expr ')'
//!          | 'pow' '(' expr ',' INTEGER ')' | 'file' '(' STRING ')'
//!          | '(' expr ')'
//! ```
//!
//! `*` is the Dirichlet product and binds tighter than the pointwise `+`.

use std::fmt;
use std::ops::Range;

use crate::catalogue::Named;
use crate::numerics::ExactRational;

pub type Span = Range<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Inv,
    Log,
    Exp,
    Psi,
    PsiInv,
    Deriv,
}

impl UnaryOp {
    const ALL: [(&'static str, UnaryOp); 6] = [
        ("inv", UnaryOp::Inv),
        ("log", UnaryOp::Log),
        ("exp", UnaryOp::Exp),
        ("psi", UnaryOp::Psi),
        ("psiinv", UnaryOp::PsiInv),
        ("deriv", UnaryOp::Deriv),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, op)| *op == self).map(|(n, _)| *n).unwrap()
    }

    fn from_name(name: &str) -> Option<UnaryOp> {
        Self::ALL.iter().find(|(n, _)| *n == name).map(|(_, op)| *op)
    }
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Spans are ignored: two trees are equal when their shapes and leaves are.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Named(Named),
    File(String),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scalar(ExactRational, Box<Expr>),
    Unary(UnaryOp, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr { kind, span: 0..0 }
    }

    /// Visits every node, parents before children.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match &self.kind {
            ExprKind::Named(_) | ExprKind::File(_) => {}
            ExprKind::Add(a, b) | ExprKind::Mul(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            ExprKind::Scalar(_, a) | ExprKind::Unary(_, a) | ExprKind::Pow(a, _) => a.walk(f),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool| {
            if wrap {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        let is_add = |e: &Expr| matches!(e.kind, ExprKind::Add(..));
        let is_mul = |e: &Expr| matches!(e.kind, ExprKind::Mul(..));
        match &self.kind {
            ExprKind::Named(n) => write!(f, "{n}"),
            ExprKind::File(path) => {
                let escaped = path.replace('\\', "\\\\").replace('"', "\\\"");
                write!(f, "file(\"{escaped}\")")
            }
            ExprKind::Add(a, b) => {
                paren(f, a, false)?;
                f.write_str(" + ")?;
                paren(f, b, is_add(b))
            }
            ExprKind::Mul(a, b) => {
                paren(f, a, is_add(a))?;
                f.write_str(" * ")?;
                paren(f, b, is_add(b) || is_mul(b))
            }
            ExprKind::Scalar(r, a) => {
                write!(f, "{r} . ")?;
                paren(f, a, is_add(a) || is_mul(a))
            }
            ExprKind::Unary(op, a) => write!(f, "{}({a})", op.name()),
            ExprKind::Pow(a, k) => write!(f, "pow({a}, {k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl ParseError {
    /// Message plus a caret line pointing into `source`.
    pub fn render(&self, source: &str) -> String {
        let mut out = format!("{self}\n  {source}\n  {}^", " ".repeat(self.offset));
        if !self.expected.is_empty() {
            out.push_str(&format!("\nexpected one of: {}", self.expected.join(", ")));
        }
        out
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    Dot,
    Minus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Minus => "`-`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            b'.' => Some(Tok::Dot),
            b'-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, start..start + 1));
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let digits = |i: &mut usize| {
                while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                    *i += 1;
                }
            };
            digits(&mut i);
            // a '.' only continues the number when a digit follows: "3 . u", "3.u"
            let follows_digit = |j: usize| j + 1 < bytes.len() && bytes[j + 1].is_ascii_digit();
            if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'/') && follows_digit(i) {
                i += 1;
                digits(&mut i);
            }
            out.push((Tok::Number(src[start..i].to_string()), start..i));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start..i));
        } else if c == b'"' {
            i += 1;
            let mut text = String::new();
            loop {
                match bytes.get(i) {
                    None => {
                        return Err(ParseError {
                            offset: start,
                            message: "unterminated string".into(),
                            expected: vec!["`\"`"],
                        })
                    }
                    Some(b'"') => {
                        i += 1;
                        break;
                    }
                    Some(b'\\') if matches!(bytes.get(i + 1), Some(b'"' | b'\\')) => {
                        text.push(bytes[i + 1] as char);
                        i += 2;
                    }
                    Some(_) => {
                        let ch = src[i..].chars().next().unwrap();
                        text.push(ch);
                        i += ch.len_utf8();
                    }
                }
            }
            out.push((Tok::Str(text), start..i));
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(ParseError {
                offset: start,
                message: format!("unexpected character `{ch}`"),
                expected: vec![],
            });
        }
    }
    out.push((Tok::End, src.len()..src.len()));
    Ok(out)
}

const OPERAND: [&str; 4] = ["function name", "number", "`(`", "`-`"];

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1.clone()
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.span().start,
            message,
            expected: expected.to_vec(),
        }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        self.error(format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.start..rhs.span.end;
            lhs = Expr {
                kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            let span = lhs.span.start..rhs.span.end;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Tok::Number(_) | Tok::Minus) {
            let start = self.span().start;
            let r = self.scalar()?;
            self.expect(Tok::Dot, "`.`")?;
            let operand = self.factor()?;
            let span = start..operand.span.end;
            return Ok(Expr {
                kind: ExprKind::Scalar(r, Box::new(operand)),
                span,
            });
        }
        self.primary()
    }

    fn scalar(&mut self) -> Result<ExactRational, ParseError> {
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Number(text) => {
                let r: ExactRational = text
                    .parse()
                    .map_err(|_| self.error(format!("invalid number `{text}`"), &[]))?;
                self.bump();
                Ok(if negative { -r } else { r })
            }
            _ => Err(self.unexpected(&["number"])),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        if !matches!(self.peek(), Tok::LParen | Tok::Ident(_)) {
            return Err(self.unexpected(&OPERAND));
        }
        let (tok, span) = self.bump();
        match tok {
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr {
                    kind: inner.kind,
                    span: span.start..close.end,
                })
            }
            Tok::Ident(name) => self.call(name, span),
            _ => unreachable!(),
        }
    }

    fn call(&mut self, name: String, span: Span) -> Result<Expr, ParseError> {
        let start = span.start;
        if let Some(f) = Named::from_name(&name) {
            if *self.peek() == Tok::LParen {
                return Err(self.error(format!("`{name}` takes no arguments"), &["`*`", "`+`", "`)`"]));
            }
            return Ok(Expr {
                kind: ExprKind::Named(f),
                span,
            });
        }
        let known = name == "sigma"
            || name == "pow"
            || name == "file"
            || UnaryOp::from_name(&name).is_some();
        if !known {
            return Err(ParseError {
                offset: start,
                message: format!("unknown identifier `{name}`"),
                expected: vec!["function name"],
            });
        }
        if *self.peek() != Tok::LParen {
            return Err(self.error(format!("`{name}` expects an argument list"), &["`(`"]));
        }
        self.bump();
        let kind = match name.as_str() {
            "sigma" => ExprKind::Named(Named::Sigma(self.scalar()?)),
            "file" => match self.peek().clone() {
                Tok::Str(path) => {
                    self.bump();
                    ExprKind::File(path)
                }
                _ => return Err(self.unexpected(&["string"])),
            },
            "pow" => {
                let base = self.expr()?;
                if *self.peek() != Tok::Comma {
                    return Err(self.error("`pow` takes two arguments".into(), &["`,`"]));
                }
                self.bump();
                let k = match self.peek().clone() {
                    Tok::Number(text) => text
                        .parse::<u32>()
                        .map_err(|_| self.error(format!("invalid exponent `{text}`"), &["integer"]))?,
                    _ => return Err(self.unexpected(&["integer"])),
                };
                self.bump();
                ExprKind::Pow(Box::new(base), k)
            }
            _ => {
                let op = UnaryOp::from_name(&name).unwrap();
                let arg = self.expr()?;
                if *self.peek() == Tok::Comma {
                    return Err(self.error(format!("`{name}` takes one argument"), &["`)`"]));
                }
                ExprKind::Unary(op, Box::new(arg))
            }
        };
        let close = self.expect(Tok::RParen, "`)`")?;
        Ok(Expr {
            kind,
            span: start..close.end,
        })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["`+`", "`*`", "end of input"]));
    }
    Ok(e)
}
