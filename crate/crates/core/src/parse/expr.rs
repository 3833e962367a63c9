//! Infix Boolean-expression grammar.
//!
//! Variables are `x<int>` (1-based), constants `0` and `1`, operators in
//! decreasing precedence `!`, `&`, `|`, `^`, `->`, `<->`, with parentheses.
//! All binary operators associate to the left. Errors carry a byte offset.

use crate::error::{Error, Result};
use crate::formula::BoolExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Var(u32),
    Const(bool),
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    LParen,
    RParen,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn tokenize(mut self) -> Result<Vec<(Token, usize)>> {
        let mut tokens = Vec::new();
        while self.pos < self.bytes.len() {
            let start = self.pos;
            let b = self.bytes[self.pos];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'!' => {
                    self.pos += 1;
                    tokens.push((Token::Not, start));
                }
                b'&' => {
                    self.pos += 1;
                    tokens.push((Token::And, start));
                }
                b'|' => {
                    self.pos += 1;
                    tokens.push((Token::Or, start));
                }
                b'^' => {
                    self.pos += 1;
                    tokens.push((Token::Xor, start));
                }
                b'(' => {
                    self.pos += 1;
                    tokens.push((Token::LParen, start));
                }
                b')' => {
                    self.pos += 1;
                    tokens.push((Token::RParen, start));
                }
                b'0' => {
                    self.pos += 1;
                    tokens.push((Token::Const(false), start));
                }
                b'1' => {
                    self.pos += 1;
                    tokens.push((Token::Const(true), start));
                }
                b'-' => {
                    if self.bytes.get(self.pos + 1) == Some(&b'>') {
                        self.pos += 2;
                        tokens.push((Token::Implies, start));
                    } else {
                        return Err(Error::parse_byte(start, "expected '->'"));
                    }
                }
                b'<' => {
                    if self.bytes.get(self.pos + 1) == Some(&b'-')
                        && self.bytes.get(self.pos + 2) == Some(&b'>')
                    {
                        self.pos += 3;
                        tokens.push((Token::Iff, start));
                    } else {
                        return Err(Error::parse_byte(start, "expected '<->'"));
                    }
                }
                b'x' => {
                    self.pos += 1;
                    let digits_start = self.pos;
                    while self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    if digits_start == self.pos {
                        return Err(Error::parse_byte(
                            start,
                            "variable 'x' must be followed by an index",
                        ));
                    }
                    let digits = std::str::from_utf8(&self.bytes[digits_start..self.pos])
                        .expect("ascii digits");
                    let index: u32 = digits.parse().map_err(|_| {
                        Error::parse_byte(start, format!("variable index '{digits}' too large"))
                    })?;
                    if index == 0 {
                        return Err(Error::parse_byte(start, "variable indices start at 1"));
                    }
                    tokens.push((Token::Var(index), start));
                }
                other => {
                    return Err(Error::parse_byte(
                        start,
                        format!("unexpected character '{}'", other as char),
                    ));
                }
            }
        }
        Ok(tokens)
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).map(|(t, _)| *t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // Precedence climbing, loosest first: <->, ->, ^, |, &, !.
    fn parse_iff(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_implies()?;
        while self.peek() == Some(Token::Iff) {
            self.advance();
            let rhs = self.parse_implies()?;
            lhs = BoolExpr::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_implies(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_xor()?;
        while self.peek() == Some(Token::Implies) {
            self.advance();
            let rhs = self.parse_xor()?;
            lhs = BoolExpr::implies(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_xor(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_or()?;
        while self.peek() == Some(Token::Xor) {
            self.advance();
            let rhs = self.parse_or()?;
            lhs = BoolExpr::xor(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(Token::Or) {
            self.advance();
            let rhs = self.parse_and()?;
            lhs = BoolExpr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some(Token::And) {
            self.advance();
            let rhs = self.parse_unary()?;
            lhs = BoolExpr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<BoolExpr> {
        match self.peek() {
            Some(Token::Not) => {
                self.advance();
                Ok(BoolExpr::not(self.parse_unary()?))
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<BoolExpr> {
        let offset = self.offset();
        match self.advance() {
            Some(Token::Var(v)) => Ok(BoolExpr::Var(v)),
            Some(Token::Const(b)) => Ok(BoolExpr::Const(b)),
            Some(Token::LParen) => {
                let inner = self.parse_iff()?;
                let close = self.offset();
                match self.advance() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::parse_byte(close, "expected ')'")),
                }
            }
            Some(tok) => Err(Error::parse_byte(
                offset,
                format!("unexpected token {tok:?}"),
            )),
            None => Err(Error::parse_byte(offset, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<BoolExpr> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.parse_iff()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::parse_byte(
            parser.offset(),
            "trailing input after expression",
        ));
    }
    Ok(expr)
}
