//! Level-wise arithmetic on fuzzy intervals.
//!
//! Sums act on matching endpoints. Products and quotients take the min/max
//! envelopes of the four endpoint combinations; when the operands' supports
//! have constant sign the envelope is known in advance and only two
//! combinations are formed.

use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyInterval;
use crate::piecewise::{compose_pointwise, Continuity, Direction, MonotoneFn, PiecewiseFn, PointwiseOp};

/// The four arithmetic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Add, Op::Sub, Op::Mul, Op::Div];

    pub fn apply(self, f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
        match self {
            Op::Add => add(f, g),
            Op::Sub => sub(f, g),
            Op::Mul => mul(f, g),
            Op::Div => div(f, g),
        }
    }

    /// The operation on real numbers.
    pub fn real(self, x: f64, y: f64) -> f64 {
        match self {
            Op::Add => x + y,
            Op::Sub => x - y,
            Op::Mul => x * y,
            Op::Div => x / y,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Op::Add => '+',
            Op::Sub => '-',
            Op::Mul => '*',
            Op::Div => '/',
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

fn lower(f: &FuzzyInterval) -> &PiecewiseFn {
    f.a_d().as_piecewise()
}

fn upper(f: &FuzzyInterval) -> &PiecewiseFn {
    f.a_u().as_piecewise()
}

fn pointwise(op: PointwiseOp, x: &PiecewiseFn, y: &PiecewiseFn) -> Result<PiecewiseFn> {
    compose_pointwise(op, &[x, y])
}

/// Wraps pointwise endpoint results, reporting shape or ordering failures
/// as internal errors: correct inputs never produce them.
fn assemble(a_d: PiecewiseFn, a_u: PiecewiseFn) -> Result<FuzzyInterval> {
    let a_d = MonotoneFn::from_piecewise(a_d, Direction::Increasing, Continuity::Left)
        .map_err(|e| Error::NonMonotoneResult(format!("lower endpoint: {e}")))?;
    let a_u = MonotoneFn::from_piecewise(a_u, Direction::Decreasing, Continuity::Right)
        .map_err(|e| Error::NonMonotoneResult(format!("upper endpoint: {e}")))?;
    FuzzyInterval::from_endpoints(a_d, a_u).map_err(|e| match e {
        Error::Order(m) => Error::Internal(format!("disordered result endpoints: {m}")),
        other => other,
    })
}

pub fn add(f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    assemble(
        pointwise(PointwiseOp::Add, lower(f), lower(g))?,
        pointwise(PointwiseOp::Add, upper(f), upper(g))?,
    )
}

/// `-F`: the endpoints swap roles and change sign.
pub fn negate(f: &FuzzyInterval) -> Result<FuzzyInterval> {
    let a_d = f.a_u().map_output(-1.0, 0.0).with_continuity(Continuity::Left);
    let a_u = f.a_d().map_output(-1.0, 0.0).with_continuity(Continuity::Right);
    FuzzyInterval::from_endpoints(a_d, a_u)
}

/// `F ⊕ (−G)`.
pub fn sub(f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    add(f, &negate(g)?)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    NonNeg,
    NonPos,
    Mixed,
}

fn sign(f: &FuzzyInterval) -> Sign {
    let s = f.support();
    if s.lo >= 0.0 {
        Sign::NonNeg
    } else if s.hi <= 0.0 {
        Sign::NonPos
    } else {
        Sign::Mixed
    }
}

pub fn mul(f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    use Sign::*;
    let (fd, fu, gd, gu) = (lower(f), upper(f), lower(g), upper(g));
    let (lo, hi) = match (sign(f), sign(g)) {
        (NonNeg, NonNeg) => ((fd, gd), (fu, gu)),
        (NonNeg, NonPos) => ((fu, gd), (fd, gu)),
        (NonPos, NonNeg) => ((fd, gu), (fu, gd)),
        (NonPos, NonPos) => ((fu, gu), (fd, gd)),
        _ => return mul_general(f, g),
    };
    assemble(
        pointwise(PointwiseOp::Mul, lo.0, lo.1)?,
        pointwise(PointwiseOp::Mul, hi.0, hi.1)?,
    )
}

/// Product through the envelopes of all four endpoint products.
pub fn mul_general(f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    general(PointwiseOp::Mul, f, g)
}

fn check_divisor(g: &FuzzyInterval) -> Result<()> {
    let s = g.support();
    if s.contains(0.0) {
        return Err(Error::DivisorSpansZero { lo: s.lo, hi: s.hi });
    }
    Ok(())
}

pub fn div(f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    check_divisor(g)?;
    let (fd, fu, gd, gu) = (lower(f), upper(f), lower(g), upper(g));
    let positive = g.is_positive();
    let (lo, hi) = match (sign(f), positive) {
        (Sign::NonNeg, true) => ((fd, gu), (fu, gd)),
        (Sign::NonNeg, false) => ((fu, gu), (fd, gd)),
        (Sign::NonPos, true) => ((fd, gd), (fu, gu)),
        (Sign::NonPos, false) => ((fu, gd), (fd, gu)),
        (Sign::Mixed, _) => return div_general(f, g),
    };
    assemble(
        pointwise(PointwiseOp::Div, lo.0, lo.1)?,
        pointwise(PointwiseOp::Div, hi.0, hi.1)?,
    )
}

/// Quotient through the envelopes of all four endpoint quotients.
pub fn div_general(f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    check_divisor(g)?;
    general(PointwiseOp::Div, f, g)
}

fn general(op: PointwiseOp, f: &FuzzyInterval, g: &FuzzyInterval) -> Result<FuzzyInterval> {
    let mut candidates = Vec::with_capacity(4);
    for x in [lower(f), upper(f)] {
        for y in [lower(g), upper(g)] {
            candidates.push(pointwise(op, x, y)?);
        }
    }
    let refs: Vec<&PiecewiseFn> = candidates.iter().collect();
    assemble(
        compose_pointwise(PointwiseOp::Min, &refs)?,
        compose_pointwise(PointwiseOp::Max, &refs)?,
    )
}

/// `λ ⊙ F`.
pub fn scale(lambda: f64, f: &FuzzyInterval) -> Result<FuzzyInterval> {
    if lambda == 0.0 {
        return Ok(FuzzyInterval::point(0.0));
    }
    if lambda < 0.0 {
        return negate(&scale(-lambda, f)?);
    }
    FuzzyInterval::from_endpoints(f.a_d().map_output(lambda, 0.0), f.a_u().map_output(lambda, 0.0))
}

/// `λ ⊕ F`.
pub fn shift(lambda: f64, f: &FuzzyInterval) -> Result<FuzzyInterval> {
    FuzzyInterval::from_endpoints(f.a_d().map_output(1.0, lambda), f.a_u().map_output(1.0, lambda))
}

/// `(1/n) ⊙ (F₁ ⊕ … ⊕ Fₙ)`.
pub fn mean(fs: &[FuzzyInterval]) -> Result<FuzzyInterval> {
    let (first, rest) = fs.split_first().ok_or(Error::EmptyList)?;
    let mut acc = first.clone();
    for f in rest {
        acc = add(&acc, f)?;
    }
    scale(1.0 / fs.len() as f64, &acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::piecewise::SegmentKind;

    fn tr(l: f64, m: f64, r: f64) -> FuzzyInterval {
        FuzzyInterval::triangle(l, m, r).unwrap()
    }

    fn kinds(f: &MonotoneFn) -> Vec<SegmentKind> {
        f.pieces().iter().map(|p| p.kind.clone()).collect()
    }

    #[test]
    fn triangle_sum_stays_linear() {
        let s = add(&tr(1.0, 2.0, 3.0), &tr(5.0, 7.0, 10.0)).unwrap();
        assert_eq!(kinds(s.a_d()), vec![SegmentKind::Affine { slope: 3.0, intercept: 6.0 }]);
        assert_eq!(kinds(s.a_u()), vec![SegmentKind::Affine { slope: -4.0, intercept: 13.0 }]);
        assert_eq!(s.core(), Interval::point(9.0));
        for i in 0..=30 {
            let x = 6.0 + i as f64 * 0.1;
            assert!((s.membership(x) - (x / 3.0 - 2.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn additive_identity() {
        let f = tr(1.0, 2.0, 3.0);
        assert_eq!(add(&f, &FuzzyInterval::point(0.0)).unwrap(), f);
        assert_eq!(sub(&f, &FuzzyInterval::point(0.0)).unwrap(), f);
    }

    #[test]
    fn subtraction_is_ordered() {
        let d = sub(&tr(1.0, 2.0, 3.0), &tr(5.0, 7.0, 10.0)).unwrap();
        for a in [0.0, 0.25, 0.5, 1.0] {
            assert!((d.a_d().at(a) - (4.0 * a - 9.0)).abs() < 1e-12);
            assert!((d.a_u().at(a) - (-3.0 * a - 2.0)).abs() < 1e-12);
        }
        let z = sub(&tr(1.0, 2.0, 3.0), &tr(1.0, 2.0, 3.0)).unwrap();
        assert_eq!(z.support(), Interval::new(-2.0, 2.0).unwrap());
        assert_eq!(z.core(), Interval::point(0.0));
    }

    #[test]
    fn triangle_product_quadratics() {
        let p = mul(&tr(1.0, 2.0, 3.0), &tr(5.0, 7.0, 10.0)).unwrap();
        assert_eq!(kinds(p.a_d()), vec![SegmentKind::Quadratic { a: 2.0, b: 7.0, c: 5.0 }]);
        assert_eq!(kinds(p.a_u()), vec![SegmentKind::Quadratic { a: 3.0, b: -19.0, c: 30.0 }]);
        assert_eq!(p.membership(14.0), 1.0);
        let g = mul_general(&tr(1.0, 2.0, 3.0), &tr(5.0, 7.0, 10.0)).unwrap();
        assert!(g.approx_eq(&p, 1e-12));
    }

    #[test]
    fn crisp_product() {
        let a = FuzzyInterval::crisp_interval(2.0, 3.0).unwrap();
        let b = FuzzyInterval::crisp_interval(5.0, 6.0).unwrap();
        let p = mul(&a, &b).unwrap();
        assert_eq!(kinds(p.a_d()), vec![SegmentKind::Constant(10.0)]);
        assert_eq!(kinds(p.a_u()), vec![SegmentKind::Constant(18.0)]);
        assert_eq!(mul_general(&a, &b).unwrap(), p);
    }

    #[test]
    fn mixed_sign_product_support() {
        let p = mul(&tr(-1.0, 1.0, 2.0), &tr(-2.0, 1.0, 3.0)).unwrap();
        assert_eq!(p.support(), Interval::new(-4.0, 6.0).unwrap());
        assert_eq!(p.core(), Interval::point(1.0));
    }

    #[test]
    fn triangle_quotient_is_linear_fractional() {
        let q = div(&tr(1.0, 2.0, 3.0), &tr(5.0, 7.0, 10.0)).unwrap();
        for i in 0..=10 {
            let a = i as f64 / 10.0;
            assert!((q.a_d().at(a) - (a + 1.0) / (10.0 - 3.0 * a)).abs() < 1e-15);
            assert!((q.a_u().at(a) - (3.0 - a) / (2.0 * a + 5.0)).abs() < 1e-15);
        }
        let g = div_general(&tr(1.0, 2.0, 3.0), &tr(5.0, 7.0, 10.0)).unwrap();
        assert!(g.approx_eq(&q, 1e-12));
    }

    #[test]
    fn division_identities_and_errors() {
        let f = tr(1.0, 2.0, 3.0);
        assert_eq!(div(&f, &FuzzyInterval::point(1.0)).unwrap(), f);
        let c = FuzzyInterval::crisp_interval(1.0, 2.0).unwrap();
        let one = div(&c, &c).unwrap();
        assert_eq!(one, FuzzyInterval::crisp_interval(0.5, 2.0).unwrap());
        let z = FuzzyInterval::crisp_interval(0.0, 1.0).unwrap();
        assert!(matches!(div(&f, &z), Err(Error::DivisorSpansZero { .. })));
        assert!(matches!(div(&f, &tr(-1.0, 1.0, 2.0)), Err(Error::DivisorSpansZero { .. })));
    }

    #[test]
    fn negative_divisors() {
        let f = tr(1.0, 2.0, 3.0);
        let g = tr(-10.0, -7.0, -5.0);
        let q = div(&f, &g).unwrap();
        let r = div_general(&f, &g).unwrap();
        assert!(q.approx_eq(&r, 1e-12));
        assert!((q.support().lo - (-0.6)).abs() < 1e-15);
        assert!((q.support().hi - (-0.1)).abs() < 1e-15);
    }

    #[test]
    fn scalar_laws() {
        let f = tr(1.0, 2.0, 4.0);
        assert_eq!(scale(1.0, &f).unwrap(), f);
        assert_eq!(scale(2.0, &f).unwrap(), mul(&FuzzyInterval::point(2.0), &f).unwrap());
        assert_eq!(shift(3.0, &f).unwrap(), add(&FuzzyInterval::point(3.0), &f).unwrap());
        let n = scale(-2.0, &f).unwrap();
        assert_eq!(n.support(), Interval::new(-8.0, -2.0).unwrap());
        assert_eq!(scale(0.0, &f).unwrap(), FuzzyInterval::point(0.0));
    }

    #[test]
    fn means() {
        let f = tr(1.0, 2.0, 3.0);
        assert!(mean(&[f.clone(), f.clone(), f.clone()]).unwrap().approx_eq(&f, 1e-12));
        let m = mean(&[FuzzyInterval::point(2.0), FuzzyInterval::point(4.0)]).unwrap();
        assert_eq!(m, FuzzyInterval::point(3.0));
        let m = mean(&[f, tr(5.0, 7.0, 10.0)]).unwrap();
        assert!((m.a_d().at(0.4) - (3.0 * 0.4 + 6.0) / 2.0).abs() < 1e-12);
        assert!((m.a_u().at(0.4) - (13.0 - 4.0 * 0.4) / 2.0).abs() < 1e-12);
        assert_eq!(mean(&[]), Err(Error::EmptyList));
    }
}
