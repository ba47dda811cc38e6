use std::fmt;

use crate::arith::Op;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
    /// Byte offset into the source.
    pub offset: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Half-open source range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn to(self, other: Span) -> Span {
        Span { start: self.start, end: other.end }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)
    }
}

/// Shape constructors callable from expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Triangle,
    Trapezoid,
    Interval,
    Point,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Triangle, Shape::Trapezoid, Shape::Interval, Shape::Point];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Triangle => "tr",
            Shape::Trapezoid => "trap",
            Shape::Interval => "interval",
            Shape::Point => "point",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Shape::Triangle => 3,
            Shape::Trapezoid => 4,
            Shape::Interval => 2,
            Shape::Point => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Literal { shape: Shape, args: Vec<f64> },
    /// A fuzzy interval imported under a name.
    Load(String),
    Scalar(f64),
    BinOp(Op, Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Paren(Box<Expr>),
}

/// Expression node with its source span. Equality ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for ExprKind {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (self, other) {
            (Literal { shape: a, args: x }, Literal { shape: b, args: y }) => a == b && x == y,
            (Load(a), Load(b)) => a == b,
            (Scalar(a), Scalar(b)) => a == b,
            (BinOp(o, a, b), BinOp(p, c, d)) => o == p && a == c && b == d,
            (Neg(a), Neg(b)) | (Paren(a), Paren(b)) => a == b,
            _ => false,
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Self { kind, span: Span::default() }
    }

    /// The outermost binary operation, looking through parentheses.
    pub fn top_binary(&self) -> Option<(Op, &Expr, &Expr)> {
        match &self.kind {
            ExprKind::BinOp(op, l, r) => Some((*op, l, r)),
            ExprKind::Paren(e) => e.top_binary(),
            _ => None,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Literal { shape, args } => {
                write!(f, "{}(", shape.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            ExprKind::Load(name) => write!(f, "load(\"{name}\")"),
            ExprKind::Scalar(v) => write!(f, "{v}"),
            ExprKind::BinOp(op, l, r) => write!(f, "{l} {op} {r}"),
            ExprKind::Neg(e) => write!(f, "-{e}"),
            ExprKind::Paren(e) => write!(f, "({e})"),
        }
    }
}
