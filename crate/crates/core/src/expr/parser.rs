use std::f64::consts::PI;

use crate::arith::Op;
use crate::fuzzy::FuzzyInterval;

use super::ast::{Expr, ExprKind, Shape, Span};
use super::lexer::{tokenize, Tok, Token};
use super::ExprError;

/// Parses an expression.
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := '-' factor | number | call | '(' expr ')'
/// call   := ('tr' | 'trap' | 'interval' | 'point') '(' number (',' number)* ')'
///         | 'load' '(' string ')'
/// number := decimal | 'pi'    (signed inside calls)
/// ```
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, at: 0 };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

const FACTOR_START: &[&str] = &["number", "'pi'", "'-'", "'('", "'tr'", "'trap'", "'interval'", "'point'", "'load'"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let t = self.peek();
        ExprError::Syntax {
            pos: t.span.start,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ExprError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn expect_eof(&self) -> Result<(), ExprError> {
        match self.peek().tok {
            Tok::Eof => Ok(()),
            _ => Err(self.error(&["operator", "end of input"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => Op::Add,
                Tok::Minus => Op::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr { kind: ExprKind::BinOp(op, Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => Op::Mul,
                Tok::Slash => Op::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr { kind: ExprKind::BinOp(op, Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Minus => {
                self.bump();
                let inner = self.factor()?;
                let span = t.span.to(inner.span);
                Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span })
            }
            Tok::Num(v) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Scalar(*v), span: t.span })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen, "')'")?;
                Ok(Expr { kind: ExprKind::Paren(Box::new(inner)), span: t.span.to(close.span) })
            }
            Tok::Ident(name) if name == "pi" => {
                self.bump();
                Ok(Expr { kind: ExprKind::Scalar(PI), span: t.span })
            }
            Tok::Ident(name) if name == "load" => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let arg = self.peek().clone();
                let Tok::Str(file) = arg.tok else {
                    return Err(self.error(&["quoted name"]));
                };
                self.bump();
                let close = self.expect(Tok::RParen, "')'")?;
                Ok(Expr { kind: ExprKind::Load(file), span: t.span.to(close.span) })
            }
            Tok::Ident(name) => match Shape::from_name(name) {
                Some(shape) => self.call(shape, t.span),
                None => Err(self.error(FACTOR_START)),
            },
            _ => Err(self.error(FACTOR_START)),
        }
    }

    fn call(&mut self, shape: Shape, start: Span) -> Result<Expr, ExprError> {
        self.bump();
        self.expect(Tok::LParen, "'('")?;
        let mut args = vec![self.signed_number()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            args.push(self.signed_number()?);
        }
        let close = self.expect(Tok::RParen, "')'").map_err(|_| self.error(&["','", "')'"]))?;
        let span = start.to(close.span);
        if args.len() != shape.arity() {
            return Err(ExprError::Arity { span, name: shape.name(), expected: shape.arity(), got: args.len() });
        }
        build_literal(shape, &args).map_err(|e| ExprError::Order { span, message: e.to_string() })?;
        Ok(Expr { kind: ExprKind::Literal { shape, args }, span })
    }

    fn signed_number(&mut self) -> Result<f64, ExprError> {
        let sign = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                -1.0
            }
            Tok::Plus => {
                self.bump();
                1.0
            }
            _ => 1.0,
        };
        let t = self.peek().clone();
        let v = match t.tok {
            Tok::Num(v) => v,
            Tok::Ident(ref s) if s == "pi" => PI,
            _ => return Err(self.error(&["number", "'pi'"])),
        };
        self.bump();
        Ok(sign * v)
    }
}

/// Constructs the fuzzy interval a literal denotes.
pub fn build_literal(shape: Shape, args: &[f64]) -> crate::Result<FuzzyInterval> {
    match (shape, args) {
        (Shape::Triangle, &[l, m, r]) => FuzzyInterval::triangle(l, m, r),
        (Shape::Trapezoid, &[l, m1, m2, r]) => FuzzyInterval::trapezoid(l, m1, m2, r),
        (Shape::Interval, &[a, b]) => FuzzyInterval::crisp_interval(a, b),
        (Shape::Point, &[v]) if v.is_finite() => Ok(FuzzyInterval::point(v)),
        (Shape::Point, &[v]) => Err(crate::Error::Order(format!("non-finite point {v}"))),
        _ => Err(crate::Error::Shape(format!("{} takes {} arguments", shape.name(), shape.arity()))),
    }
}
