//! Generators and invariant checks shared by the property and acceptance
//! suites.

#![allow(dead_code)]

use fuzzarith::arith::{self, Op};
use fuzzarith::expr::{self, ExprError};
use fuzzarith::piecewise::{Continuity, Direction, MonotoneFn, Piece, SegmentKind};
use fuzzarith::{FuzzyInterval, Interval};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Triangle,
    Trapezoid,
    Crisp,
    Point,
    StepSided,
}

pub const SHAPES: [ShapeKind; 5] =
    [ShapeKind::Triangle, ShapeKind::Trapezoid, ShapeKind::Crisp, ShapeKind::Point, ShapeKind::StepSided];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Mixed,
}

pub const SIGNS: [Sign; 3] = [Sign::Positive, Sign::Negative, Sign::Mixed];

/// Builds a shape from six numbers in `[0, 1]`.
pub fn make_shape(kind: ShapeKind, sign: Sign, u: [f64; 6]) -> FuzzyInterval {
    let l = 0.5 + 4.5 * u[0];
    let (d1, d2, d3) = (0.05 + 3.0 * u[1], 0.05 + 3.0 * u[2], 0.05 + 3.0 * u[3]);
    let f = match kind {
        ShapeKind::Triangle => FuzzyInterval::triangle(l, l + d1, l + d1 + d2).unwrap(),
        ShapeKind::Trapezoid => FuzzyInterval::trapezoid(l, l + d1, l + d1 + d2, l + d1 + d2 + d3).unwrap(),
        ShapeKind::Crisp => FuzzyInterval::crisp_interval(l, l + d1).unwrap(),
        ShapeKind::Point => FuzzyInterval::point(l),
        ShapeKind::StepSided => step_sided(l, l + d1, l + d1 + d2, 0.15 + 0.7 * u[4]),
    };
    match sign {
        Sign::Positive => f,
        Sign::Negative => arith::negate(&f).unwrap(),
        Sign::Mixed => {
            let s = f.support();
            arith::shift(-(s.lo + (0.1 + 0.8 * u[5]) * s.width()), &f).unwrap()
        }
    }
}

/// Triangle-like number whose left flank rises to `alpha` halfway to the
/// peak and then stays flat up to the peak.
pub fn step_sided(l: f64, m: f64, r: f64, alpha: f64) -> FuzzyInterval {
    let half = 0.5 * (l + m);
    let a_d = MonotoneFn::new(
        vec![
            Piece::new(0.0, alpha, SegmentKind::affine((half - l) / alpha, l)).unwrap(),
            Piece::new(alpha, 1.0, SegmentKind::Constant(m)).unwrap(),
        ],
        Direction::Increasing,
        Continuity::Left,
    )
    .unwrap();
    let a_u = MonotoneFn::new(
        vec![Piece::new(0.0, 1.0, SegmentKind::affine(m - r, r)).unwrap()],
        Direction::Decreasing,
        Continuity::Right,
    )
    .unwrap();
    FuzzyInterval::from_endpoints(a_d, a_u).unwrap()
}

pub fn unit6() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(0.0..=1.0f64)
}

pub fn shape(signs: &'static [Sign]) -> impl Strategy<Value = FuzzyInterval> {
    (prop::sample::select(&SHAPES[..]), prop::sample::select(signs), unit6())
        .prop_map(|(k, s, u)| make_shape(k, s, u))
}

pub fn any_shape() -> impl Strategy<Value = FuzzyInterval> {
    shape(&SIGNS)
}

pub fn positive_shape() -> impl Strategy<Value = FuzzyInterval> {
    shape(&[Sign::Positive])
}

pub fn definite_shape() -> impl Strategy<Value = FuzzyInterval> {
    shape(&[Sign::Positive, Sign::Negative])
}

/// Levels on the canonical α grid, where sampled endpoints are exact.
pub fn grid_levels() -> Vec<f64> {
    (1..=32).map(|i| i as f64 / 32.0).collect()
}

fn scale(fs: &[&FuzzyInterval]) -> f64 {
    fs.iter().map(|f| f.support().magnitude()).fold(1.0, f64::max)
}

pub fn cut(f: &FuzzyInterval, alpha: f64) -> Interval {
    f.alpha_cut(alpha).unwrap().interval()
}

/// Cuts agree at every grid level within `tol` relative to the operands'
/// magnitude.
pub fn same_cuts(f: &FuzzyInterval, g: &FuzzyInterval, tol: f64) -> Check {
    let t = tol * (1.0 + scale(&[f, g]));
    for a in grid_levels() {
        let (x, y) = (cut(f, a), cut(g, a));
        prop_assert!(
            (x.lo - y.lo).abs() <= t && (x.hi - y.hi).abs() <= t,
            "cuts at {} differ: {} vs {}",
            a,
            x,
            y
        );
    }
    Ok(())
}

/// Every grid-level cut of `inner` lies inside the cut of `outer`.
pub fn contained(inner: &FuzzyInterval, outer: &FuzzyInterval, tol: f64) -> Check {
    let t = tol * (1.0 + scale(&[inner, outer]));
    for a in grid_levels() {
        let (x, y) = (cut(inner, a), cut(outer, a));
        prop_assert!(y.lo <= x.lo + t && x.hi <= y.hi + t, "cut at {}: {} not inside {}", a, x, y);
    }
    Ok(())
}

// ---- monotone functions ----

/// Increasing piecewise function with flat runs and jumps between strictly
/// increasing end pieces; optionally containing a sampled piece.
#[derive(Debug, Clone)]
pub struct MonotoneCase {
    pub f: MonotoneFn,
    pub sampled: bool,
}

pub fn monotone_case() -> impl Strategy<Value = MonotoneCase> {
    (
        -5.0..5.0f64,
        -5.0..5.0f64,
        prop::collection::vec((0usize..4, 0.05..2.0f64, 0.1..3.0f64, prop::bool::ANY), 0..5),
        (0.05..2.0f64, 0.1..3.0f64),
        (0.05..2.0f64, 0.1..3.0f64),
        prop::bool::ANY,
        prop::bool::ANY,
    )
        .prop_map(|(x0, y0, middle, first, last, left, decreasing)| {
            let mut x = x0;
            let mut y = y0;
            let mut pieces = Vec::new();
            let mut sampled = false;
            let mut push = |kind_id: usize, w: f64, h: f64, jump: bool, x: &mut f64, y: &mut f64| {
                if jump {
                    *y += 0.5 * h;
                }
                let kind = match kind_id {
                    0 => SegmentKind::affine(h / w, *y - h / w * *x),
                    1 => SegmentKind::Constant(*y),
                    2 => {
                        // convex rise from the left end
                        let a = h / (w * w);
                        SegmentKind::quadratic(a, -2.0 * a * *x, a * *x * *x + *y)
                    }
                    _ => {
                        sampled = true;
                        let n = 17;
                        let knots = (0..n)
                            .map(|i| {
                                let t = i as f64 / (n - 1) as f64;
                                let xi = if i == n - 1 { *x + w } else { *x + w * t };
                                (xi, *y + h * t.sqrt())
                            })
                            .collect();
                        SegmentKind::sampled(knots).unwrap()
                    }
                };
                let piece = Piece::new(*x, *x + w, kind).unwrap();
                *y = piece.end_value();
                *x += w;
                piece
            };
            pieces.push(push(0, first.0, first.1, false, &mut x, &mut y));
            for (k, w, h, jump) in middle {
                pieces.push(push(k, w, h, jump, &mut x, &mut y));
            }
            pieces.push(push(0, last.0, last.1, true, &mut x, &mut y));
            let continuity = if left { Continuity::Left } else { Continuity::Right };
            let f = MonotoneFn::new(pieces, Direction::Increasing, continuity).unwrap();
            let f = if decreasing { f.map_output(-1.0, 0.0) } else { f };
            MonotoneCase { f, sampled }
        })
}

pub fn check_roundtrip(c: &MonotoneCase) -> Check {
    let back = fuzzarith::double_inverse_roundtrip(&c.f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let tol = if c.sampled { 1e-6 } else { 1e-9 };
    prop_assert!(back.approx_eq(&c.f, tol), "round trip of {:?}\ngave {:?}", c.f, back);
    Ok(())
}

/// Jumps of a function are plateaus of its inverse and vice versa.
pub fn check_duality(c: &MonotoneCase) -> Check {
    let f = &c.f;
    let g = match f.continuity() {
        Continuity::Right => f.inverse_inf(f.range()),
        Continuity::Left => f.inverse_sup(f.range()),
    }
    .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(g.plateau_count(), f.jump_count(), "inverse {:?}", g);
    prop_assert_eq!(g.jump_count(), f.plateau_count(), "inverse {:?}", g);
    Ok(())
}

// ---- fuzzy arithmetic ----

pub fn apply(op: Op, f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval, TestCaseError> {
    op.apply(f, g).map_err(|e| TestCaseError::fail(format!("{op}: {e}")))
}

pub fn check_nested(f: &FuzzyInterval) -> Check {
    let t = 1e-12 * (1.0 + f.support().magnitude());
    let mut prev = f.support();
    for i in 1..=64 {
        let c = cut(f, i as f64 / 64.0);
        prop_assert!(c.lo <= c.hi + t, "disordered cut {}", c);
        prop_assert!(prev.lo <= c.lo + t && c.hi <= prev.hi + t, "{} not inside {}", c, prev);
        prev = c;
    }
    Ok(())
}

/// Cut endpoints have membership at least α; points just outside have at
/// most α.
pub fn check_membership(f: &FuzzyInterval, alpha: f64) -> Check {
    let c = cut(f, alpha);
    let eps = 1e-6 * (1.0 + f.support().magnitude());
    for x in [c.lo, c.hi, c.midpoint()] {
        prop_assert!(f.membership(x) >= alpha - 1e-9, "mu({}) = {} < {}", x, f.membership(x), alpha);
    }
    for x in [c.lo - eps, c.hi + eps] {
        prop_assert!(f.membership(x) <= alpha + 1e-9, "mu({}) = {} > {}", x, f.membership(x), alpha);
    }
    let s = f.support();
    prop_assert_eq!(f.membership(s.lo - eps), 0.0);
    prop_assert_eq!(f.membership(s.hi + eps), 0.0);
    Ok(())
}

pub fn check_commutative(f: &FuzzyInterval, g: &FuzzyInterval) -> Check {
    for op in [Op::Add, Op::Mul] {
        same_cuts(&apply(op, f, g)?, &apply(op, g, f)?, 1e-12)?;
    }
    Ok(())
}

pub fn check_associative(f: &FuzzyInterval, g: &FuzzyInterval, h: &FuzzyInterval) -> Check {
    for op in [Op::Add, Op::Mul] {
        let left = apply(op, &apply(op, f, g)?, h)?;
        let right = apply(op, f, &apply(op, g, h)?)?;
        same_cuts(&left, &right, 1e-9)?;
    }
    Ok(())
}

pub fn check_identities(f: &FuzzyInterval) -> Check {
    let (zero, one) = (FuzzyInterval::point(0.0), FuzzyInterval::point(1.0));
    same_cuts(&apply(Op::Add, f, &zero)?, f, 1e-12)?;
    same_cuts(&apply(Op::Add, &zero, f)?, f, 1e-12)?;
    same_cuts(&apply(Op::Mul, f, &one)?, f, 1e-12)?;
    same_cuts(&apply(Op::Mul, &one, f)?, f, 1e-12)?;
    same_cuts(&apply(Op::Div, f, &one)?, f, 1e-12)?;
    Ok(())
}

/// On positive supports, `supp(F⊙G) = [l_F·l_G, r_F·r_G]`.
pub fn check_support_product(f: &FuzzyInterval, g: &FuzzyInterval) -> Check {
    let p = apply(Op::Mul, f, g)?.support();
    let (a, b) = (f.support(), g.support());
    let t = 1e-12 * (1.0 + a.hi * b.hi);
    prop_assert!((p.lo - a.lo * b.lo).abs() <= t && (p.hi - a.hi * b.hi).abs() <= t, "support {}", p);
    Ok(())
}

/// `F⊙(G⊕H) ⊆ (F⊙G)⊕(F⊙H)`.
pub fn check_subdistributive(f: &FuzzyInterval, g: &FuzzyInterval, h: &FuzzyInterval) -> Check {
    let lhs = apply(Op::Mul, f, &apply(Op::Add, g, h)?)?;
    let rhs = apply(Op::Add, &apply(Op::Mul, f, g)?, &apply(Op::Mul, f, h)?)?;
    contained(&lhs, &rhs, 1e-9)
}

/// `F ⊆ (F⊘G)⊙G` for sign-definite `G`.
pub fn check_division_containment(f: &FuzzyInterval, g: &FuzzyInterval) -> Check {
    let back = apply(Op::Mul, &apply(Op::Div, f, g)?, g)?;
    contained(f, &back, 1e-9)
}

/// `F⊖F` is symmetric about zero with support `[l−r, r−l]`.
pub fn check_self_difference(f: &FuzzyInterval) -> Check {
    let d = apply(Op::Sub, f, f)?;
    let s = f.support();
    let t = 1e-12 * (1.0 + s.magnitude());
    let ds = d.support();
    prop_assert!((ds.lo - (s.lo - s.hi)).abs() <= t && (ds.hi - (s.hi - s.lo)).abs() <= t, "support {}", ds);
    for a in grid_levels() {
        let c = cut(&d, a);
        prop_assert!((c.lo + c.hi).abs() <= t, "asymmetric cut {} at {}", c, a);
    }
    Ok(())
}

// ---- expressions ----

fn number() -> impl Strategy<Value = String> {
    prop_oneof![
        (0u32..100).prop_map(|n| n.to_string()),
        (0.0..50.0f64).prop_map(|x| format!("{x:.3}")),
        Just("pi".to_string()),
    ]
}

/// Ordered literal arguments drawn from `lo..lo+spread`.
fn literal(positive: bool) -> impl Strategy<Value = String> {
    let base = if positive { 0.5..10.0f64 } else { -10.0..10.0f64 };
    (0usize..4, base, prop::array::uniform3(0.0..3.0f64)).prop_map(|(k, l, d)| {
        let p = [l, l + d[0], l + d[0] + d[1], l + d[0] + d[1] + d[2]];
        match k {
            0 => format!("tr({}, {}, {})", p[0], p[1], p[2]),
            1 => format!("trap({}, {}, {}, {})", p[0], p[1], p[2], p[3]),
            2 => format!("interval({}, {})", p[0], p[1]),
            _ => format!("point({})", p[0]),
        }
    })
}

/// Random well-formed source text over the full grammar.
pub fn expression() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![literal(false), number()];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::sample::select(vec!['+', '-', '*', '/']), inner.clone())
                .prop_map(|(l, op, r)| format!("{l} {op} {r}")),
            inner.clone().prop_map(|e| format!("({e})")),
            inner.prop_map(|e| format!("-{e}")),
        ]
    })
}

/// Expressions over positive-support literals and positive scalars that
/// never subtract or negate, so every divisor stays positive.
pub fn positive_expression() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![4 => literal(true), 1 => (1u32..10).prop_map(|n| n.to_string())];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::sample::select(vec!['+', '*', '/']), inner.clone())
                .prop_map(|(l, op, r)| format!("{l} {op} {r}")),
            inner.prop_map(|e| format!("({e})")),
        ]
    })
}

pub fn check_print_parse(src: &str) -> Check {
    let e = expr::parse(src).map_err(|e| TestCaseError::fail(format!("{src}: {e}")))?;
    let printed = e.to_string();
    let again = expr::parse(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
    prop_assert_eq!(&again, &e);
    prop_assert_eq!(again.to_string(), printed);
    Ok(())
}

pub fn check_positive_evaluates(src: &str) -> Check {
    let r: Result<FuzzyInterval, ExprError> = expr::eval_str(src);
    prop_assert!(r.is_ok(), "{} failed: {}", src, r.unwrap_err());
    Ok(())
}
