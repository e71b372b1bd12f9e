//! Lexer and recursive descent parser for the expression language.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" INT)?
//! atom  := INT | "q" | generator | "(" expr ")" | "[" expr "," expr "]"
//!        | "qnum(" ["-"] INT ")" | "qfact(" ["-"] INT ")"
//!        | "be(" expr "," INT ")" | "qexp(" expr "," INT ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ast::{BinOp, Expr, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", punct(other)),
        }
    }
}

fn punct(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrack => "[",
        Tok::RBrack => "]",
        Tok::Comma => ",",
        _ => "",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input, starting at 0.
    pub offset: usize,
    /// Character column, starting at 1.
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {} (column {}): expected {}, found {}",
            self.offset,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Lexed {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let n: BigInt = text[i..end].parse().expect("digits form an integer");
            out.push(Lexed {
                tok: Tok::Int(n),
                offset: i,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push(Lexed {
                tok: Tok::Ident(text[i..end].to_string()),
                offset: i,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            // the typographic minus sign is accepted too
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError {
                    offset: i,
                    column: text[..i].chars().count() + 1,
                    expected: vec!["a token".to_string()],
                    found: format!("character `{other}`"),
                })
            }
        };
        chars.next();
        out.push(Lexed { tok, offset: i });
    }
    out.push(Lexed {
        tok: Tok::Eof,
        offset: text.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Lexed>,
    pos: usize,
    /// Tokens tried and rejected at the current position.
    tried: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

const ATOM_START: [&str; 6] = ["integer", "`q`", "generator", "function call", "`(`", "`[`"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        self.tried.clear();
        t
    }

    /// Consumes `t` if it is next, remembering the attempt otherwise.
    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            let name = format!("`{}`", punct(t));
            if !self.tried.contains(&name) {
                self.tried.push(name);
            }
            false
        }
    }

    fn error(&self, extra: &[&str]) -> ParseError {
        let offset = self.toks[self.pos].offset;
        let mut expected = self.tried.clone();
        for e in extra {
            if !expected.iter().any(|x| x == e) {
                expected.push(e.to_string());
            }
        }
        ParseError {
            offset,
            column: self.text[..offset].chars().count() + 1,
            expected,
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(&[]))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(&Tok::Plus) {
                BinOp::Add
            } else if self.eat(&Tok::Minus) {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(&Tok::Star) {
                BinOp::Mul
            } else if self.eat(&Tok::Slash) {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.small_int("nonnegative integer exponent")?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn small_int(&mut self, what: &str) -> PResult<u32> {
        if let Tok::Int(n) = self.peek() {
            if let Some(v) = n.to_u32() {
                self.advance();
                return Ok(v);
            }
        }
        Err(self.error(&[what]))
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let negative = self.eat(&Tok::Minus);
        if let Tok::Int(n) = self.peek() {
            if let Some(v) = n.to_i64() {
                self.advance();
                return Ok(if negative { -v } else { v });
            }
        }
        Err(self.error(&["integer"]))
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrack => {
                self.advance();
                let a = self.expr()?;
                self.expect(&Tok::Comma)?;
                let b = self.expr()?;
                self.expect(&Tok::RBrack)?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => self.ident(&name),
            _ => Err(self.error(&ATOM_START)),
        }
    }

    fn ident(&mut self, name: &str) -> PResult<Expr> {
        if name == "q" {
            self.advance();
            return Ok(Expr::Q);
        }
        if let Some(s) = Symbol::from_name(name) {
            self.advance();
            return Ok(Expr::Sym(s));
        }
        let func = match name {
            "qnum" | "qfact" | "be" | "qexp" => name.to_string(),
            _ => {
                let mut known: Vec<&str> = vec!["q"];
                known.extend(Symbol::ALL.iter().map(|s| s.name()));
                known.extend(["qnum", "qfact", "be", "qexp"]);
                let mut err = self.error(&[]);
                err.expected = known.iter().map(|k| format!("`{k}`")).collect();
                return Err(err);
            }
        };
        self.advance();
        self.expect(&Tok::LParen)?;
        let e = match func.as_str() {
            "qnum" => Expr::QNum(self.signed_int()?),
            "qfact" => Expr::QFact(self.signed_int()?),
            other => {
                let arg = self.expr()?;
                self.expect(&Tok::Comma)?;
                let m = self.small_int("nonnegative integer")?;
                if other == "be" {
                    Expr::Be(Box::new(arg), m)
                } else {
                    Expr::QExp(Box::new(arg), m)
                }
            }
        };
        self.expect(&Tok::RParen)?;
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        text,
        toks: lex(text)?,
        pos: 0,
        tried: Vec::new(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["end of input"]));
    }
    Ok(e)
}
