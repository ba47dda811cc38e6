//! A small language of closed fuzzy-arithmetic terms.
//!
//! Scalars stand for crisp numbers, so `2 * tr(1,2,3)` is the product of the
//! point 2 with the triangle. `load("name")` refers to an interval supplied
//! by the caller (the CLI fills these from imported documents).

mod ast;
mod lexer;
mod parser;

use std::collections::HashMap;

use thiserror::Error;

use crate::arith;
use crate::fuzzy::FuzzyInterval;

pub use ast::{Expr, ExprKind, Pos, Shape, Span};
pub use parser::{build_literal, parse};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("{pos}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax { pos: Pos, expected: Vec<String>, found: String },

    #[error("{span}: {name} takes {expected} arguments, got {got}")]
    Arity { span: Span, name: &'static str, expected: usize, got: usize },

    #[error("{span}: {message}")]
    Order { span: Span, message: String },

    #[error("{span}: no interval named \"{name}\" was imported")]
    UnknownName { span: Span, name: String },

    #[error("{span}: {source}")]
    Eval { span: Span, source: crate::Error },
}

/// Named intervals available to `load`.
pub type Env = HashMap<String, FuzzyInterval>;

/// Evaluates bottom-up; errors carry the span of the failing node.
pub fn evaluate(e: &Expr, env: &Env) -> Result<FuzzyInterval, ExprError> {
    let at = |source: crate::Error| ExprError::Eval { span: e.span, source };
    match &e.kind {
        ExprKind::Literal { shape, args } => {
            build_literal(*shape, args).map_err(|err| ExprError::Order { span: e.span, message: err.to_string() })
        }
        ExprKind::Load(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| ExprError::UnknownName { span: e.span, name: name.clone() }),
        ExprKind::Scalar(v) => Ok(FuzzyInterval::point(*v)),
        ExprKind::Paren(inner) => evaluate(inner, env),
        ExprKind::Neg(inner) => arith::negate(&evaluate(inner, env)?).map_err(at),
        ExprKind::BinOp(op, l, r) => {
            let (l, r) = (evaluate(l, env)?, evaluate(r, env)?);
            op.apply(&l, &r).map_err(at)
        }
    }
}

/// Parses and evaluates a closed expression.
pub fn eval_str(src: &str) -> Result<FuzzyInterval, ExprError> {
    evaluate(&parse(src)?, &Env::new())
}
