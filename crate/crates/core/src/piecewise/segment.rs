//! Closed-form and sampled segment kinds.
//!
//! Every kind is a function of one real variable that is evaluated on a
//! closed sub-interval of its parent function's domain. Constant, affine and
//! quadratic polynomials, the monotone root branch of a quadratic, and
//! linear-fractional maps are closed under the operations the arithmetic
//! needs most often (sums, scalar maps, products of affine functions, ratios
//! of affine functions, and generalized inversion). Everything else falls
//! back to `Sampled` knots with linear interpolation.

use crate::error::{Error, Result};
use crate::interval::Interval;

use super::canonical_knots;

/// Selects the root of `a·t² + b·t + c = x` that lies above (`Plus`) or
/// below (`Minus`) the vertex `-b / 2a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn flipped(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// Pointwise binary operations on segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    pub fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            BinaryOp::Add => x + y,
            BinaryOp::Sub => x - y,
            BinaryOp::Mul => x * y,
            BinaryOp::Div => x / y,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SegmentKind {
    Constant(f64),
    /// `slope·t + intercept`
    Affine { slope: f64, intercept: f64 },
    /// `a·t² + b·t + c`
    Quadratic { a: f64, b: f64, c: f64 },
    /// The root `t(x)` of `a·t² + b·t + c = x` on the chosen branch.
    QuadraticRoot { a: f64, b: f64, c: f64, branch: Branch },
    /// `(p·t + q) / (r·t + s)`
    Mobius { p: f64, q: f64, r: f64, s: f64 },
    /// Knots `(input, output)` with strictly increasing inputs, linearly
    /// interpolated.
    Sampled(Vec<(f64, f64)>),
}

impl SegmentKind {
    pub fn affine(slope: f64, intercept: f64) -> Self {
        if slope == 0.0 {
            SegmentKind::Constant(intercept)
        } else {
            SegmentKind::Affine { slope, intercept }
        }
    }

    pub fn quadratic(a: f64, b: f64, c: f64) -> Self {
        if a == 0.0 {
            Self::affine(b, c)
        } else {
            SegmentKind::Quadratic { a, b, c }
        }
    }

    pub fn quadratic_root(a: f64, b: f64, c: f64, branch: Branch) -> Self {
        if a == 0.0 {
            // b·t + c = x
            Self::affine(1.0 / b, -c / b)
        } else {
            SegmentKind::QuadraticRoot { a, b, c, branch }
        }
    }

    pub fn mobius(p: f64, q: f64, r: f64, s: f64) -> Self {
        if r == 0.0 {
            Self::affine(p / s, q / s)
        } else if p * s - q * r == 0.0 {
            SegmentKind::Constant(p / r)
        } else {
            SegmentKind::Mobius { p, q, r, s }
        }
    }

    /// Builds a sampled segment, validating knot order.
    pub fn sampled(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Shape("sampled segment needs at least two knots".into()));
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::Shape("sampled segment has non-finite knots".into()));
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Shape("sampled knots are not strictly ordered in input".into()));
        }
        Ok(SegmentKind::Sampled(knots))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            SegmentKind::Constant(v) => v,
            SegmentKind::Affine { slope, intercept } => slope * x + intercept,
            SegmentKind::Quadratic { a, b, c } => (a * x + b) * x + c,
            SegmentKind::QuadraticRoot { a, b, c, branch } => solve_quadratic(a, b, c - x, branch),
            SegmentKind::Mobius { p, q, r, s } => (p * x + q) / (r * x + s),
            SegmentKind::Sampled(ref knots) => interpolate(knots, x),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            SegmentKind::Constant(_) => true,
            SegmentKind::Sampled(k) => k.iter().all(|&(_, y)| y == k[0].1),
            _ => false,
        }
    }

    pub fn is_closed_form(&self) -> bool {
        !matches!(self, SegmentKind::Sampled(_))
    }

    /// Coefficients `[c0, c1, c2]` when the kind is a polynomial of degree ≤ 2.
    fn as_poly(&self) -> Option<[f64; 3]> {
        match *self {
            SegmentKind::Constant(v) => Some([v, 0.0, 0.0]),
            SegmentKind::Affine { slope, intercept } => Some([intercept, slope, 0.0]),
            SegmentKind::Quadratic { a, b, c } => Some([c, b, a]),
            _ => None,
        }
    }

    fn poly_degree(&self) -> Option<usize> {
        match self {
            SegmentKind::Constant(_) => Some(0),
            SegmentKind::Affine { .. } => Some(1),
            SegmentKind::Quadratic { .. } => Some(2),
            _ => None,
        }
    }

    fn knots(&self) -> Option<&[(f64, f64)]> {
        match self {
            SegmentKind::Sampled(k) => Some(k),
            _ => None,
        }
    }

    /// `t ↦ f(-t)`.
    pub fn reflect_input(&self) -> Self {
        match *self {
            SegmentKind::Constant(v) => SegmentKind::Constant(v),
            SegmentKind::Affine { slope, intercept } => SegmentKind::Affine { slope: -slope, intercept },
            SegmentKind::Quadratic { a, b, c } => SegmentKind::Quadratic { a, b: -b, c },
            SegmentKind::QuadraticRoot { a, b, c, branch } => {
                SegmentKind::QuadraticRoot { a: -a, b: -b, c: -c, branch }
            }
            SegmentKind::Mobius { p, q, r, s } => SegmentKind::Mobius { p: -p, q, r: -r, s },
            SegmentKind::Sampled(ref knots) => {
                SegmentKind::Sampled(knots.iter().rev().map(|&(x, y)| (-x, y)).collect())
            }
        }
    }

    /// `t ↦ scale·f(t) + offset`.
    pub fn map_output(&self, scale: f64, offset: f64) -> Self {
        if scale == 0.0 {
            return SegmentKind::Constant(offset);
        }
        match *self {
            SegmentKind::Constant(v) => SegmentKind::Constant(scale * v + offset),
            SegmentKind::Affine { slope, intercept } => {
                Self::affine(scale * slope, scale * intercept + offset)
            }
            SegmentKind::Quadratic { a, b, c } => Self::quadratic(scale * a, scale * b, scale * c + offset),
            SegmentKind::QuadraticRoot { a, b, c, branch } => {
                // u = scale·t + offset with a·t² + b·t + c = x
                let inv = 1.0 / scale;
                let a2 = a * inv * inv;
                let b2 = b * inv - 2.0 * a * offset * inv * inv;
                let c2 = a * offset * offset * inv * inv - b * offset * inv + c;
                let branch = if scale > 0.0 { branch } else { branch.flipped() };
                Self::quadratic_root(a2, b2, c2, branch)
            }
            SegmentKind::Mobius { p, q, r, s } => {
                Self::mobius(scale * p + offset * r, scale * q + offset * s, r, s)
            }
            SegmentKind::Sampled(ref knots) => SegmentKind::Sampled(
                knots.iter().map(|&(x, y)| (x, scale * y + offset)).collect(),
            ),
        }
    }

    /// Inverse of a strictly monotone segment on `span`; the result is valid
    /// on the image of `span`. Returns `None` for constant segments.
    pub fn inverse(&self, span: Interval) -> Option<Self> {
        match *self {
            SegmentKind::Constant(_) => None,
            SegmentKind::Affine { slope, intercept } => Some(Self::affine(1.0 / slope, -intercept / slope)),
            SegmentKind::Quadratic { a, b, c } => {
                let vertex = -b / (2.0 * a);
                let branch = if span.midpoint() >= vertex { Branch::Plus } else { Branch::Minus };
                Some(Self::quadratic_root(a, b, c, branch))
            }
            SegmentKind::QuadraticRoot { a, b, c, .. } => Some(Self::quadratic(a, b, c)),
            SegmentKind::Mobius { p, q, r, s } => Some(Self::mobius(-s, q, r, -p)),
            SegmentKind::Sampled(ref knots) => {
                if self.is_constant() {
                    return None;
                }
                let mut swapped: Vec<(f64, f64)> = knots.iter().map(|&(x, y)| (y, x)).collect();
                if swapped[0].0 > swapped[swapped.len() - 1].0 {
                    swapped.reverse();
                }
                // Inputs of the inverse must be strictly ordered; callers split
                // flat runs off beforehand, so only rounding duplicates remain.
                swapped.dedup_by(|b, a| b.0 <= a.0);
                if swapped.len() < 2 {
                    return None;
                }
                Some(SegmentKind::Sampled(swapped))
            }
        }
    }

    /// Restriction to `sub ⊆ span`. Only sampled segments change.
    pub fn restrict(&self, sub: Interval) -> Self {
        match self {
            SegmentKind::Sampled(knots) => {
                let mut out = Vec::with_capacity(knots.len());
                out.push((sub.lo, interpolate(knots, sub.lo)));
                out.extend(knots.iter().copied().filter(|&(x, _)| x > sub.lo && x < sub.hi));
                if sub.hi > sub.lo {
                    out.push((sub.hi, interpolate(knots, sub.hi)));
                } else {
                    // A degenerate restriction keeps two coincident-output knots
                    // so the segment stays well-formed.
                    let y = out[0].1;
                    out = vec![(sub.lo, y), (sub.lo + f64::EPSILON.max(sub.lo.abs() * f64::EPSILON), y)];
                }
                SegmentKind::Sampled(out)
            }
            other => other.clone(),
        }
    }

    /// Checks that the segment is monotone on `span` in the given direction,
    /// within `tol`.
    pub fn is_monotone_on(&self, span: Interval, increasing: bool, tol: f64) -> bool {
        let ordered = |lo: f64, hi: f64| if increasing { lo <= hi + tol } else { lo + tol >= hi };
        match *self {
            SegmentKind::Constant(v) => v.is_finite(),
            SegmentKind::Sampled(ref knots) => knots.windows(2).all(|w| ordered(w[0].1, w[1].1)),
            SegmentKind::Mobius { r, s, .. } => {
                let pole = -s / r;
                if span.contains(pole) {
                    return false;
                }
                ordered(self.eval(span.lo), self.eval(span.hi))
            }
            SegmentKind::Quadratic { a, b, .. } => {
                let (lo, hi) = (self.eval(span.lo), self.eval(span.hi));
                let vertex = -b / (2.0 * a);
                let mid_ok = if vertex > span.lo && vertex < span.hi {
                    let v = self.eval(vertex);
                    ordered(lo, v) && ordered(v, hi)
                } else {
                    true
                };
                ordered(lo, hi) && mid_ok
            }
            SegmentKind::QuadraticRoot { a, b, c, .. } => {
                let disc = |x: f64| b * b - 4.0 * a * (c - x);
                let scale = b * b + (4.0 * a * c).abs() + 1.0;
                let valid = disc(span.lo) >= -1e-9 * scale && disc(span.hi) >= -1e-9 * scale;
                valid && ordered(self.eval(span.lo), self.eval(span.hi))
            }
            SegmentKind::Affine { .. } => ordered(self.eval(span.lo), self.eval(span.hi)),
        }
    }

    /// Pointwise `op(self, other)` on `sub`, keeping a closed form when the
    /// pair admits one and sampling otherwise. `domain` fixes the canonical
    /// sampling grid.
    pub fn combine(&self, op: BinaryOp, other: &Self, sub: Interval, domain: Interval) -> Result<Self> {
        use SegmentKind::*;
        if op == BinaryOp::Sub {
            return self.combine(BinaryOp::Add, &other.map_output(-1.0, 0.0), sub, domain);
        }
        if op == BinaryOp::Div {
            check_divisor(other, sub)?;
        }
        let closed = match (op, self, other) {
            (_, Constant(x), Constant(y)) => Some(Constant(op.apply(*x, *y))),
            (BinaryOp::Add, Constant(c), k) | (BinaryOp::Add, k, Constant(c)) => Some(k.map_output(1.0, *c)),
            (BinaryOp::Mul, Constant(c), k) | (BinaryOp::Mul, k, Constant(c)) => Some(k.map_output(*c, 0.0)),
            (BinaryOp::Div, k, Constant(c)) => Some(k.map_output(1.0 / c, 0.0)),
            (BinaryOp::Add, a, b) if a.as_poly().is_some() && b.as_poly().is_some() => {
                let (p, q) = (a.as_poly().unwrap(), b.as_poly().unwrap());
                Some(Self::quadratic(p[2] + q[2], p[1] + q[1], p[0] + q[0]))
            }
            (BinaryOp::Mul, a, b)
                if a.poly_degree().zip(b.poly_degree()).is_some_and(|(m, n)| m + n <= 2) =>
            {
                let (p, q) = (a.as_poly().unwrap(), b.as_poly().unwrap());
                Some(Self::quadratic(
                    p[2] * q[0] + p[1] * q[1] + p[0] * q[2],
                    p[1] * q[0] + p[0] * q[1],
                    p[0] * q[0],
                ))
            }
            (BinaryOp::Div, a, Affine { slope, intercept }) if a.poly_degree().is_some_and(|d| d <= 1) => {
                let p = a.as_poly().unwrap();
                Some(Self::mobius(p[1], p[0], *slope, *intercept))
            }
            (BinaryOp::Div, Constant(k), Mobius { p, q, r, s }) => Some(Self::mobius(k * r, k * s, *p, *q)),
            _ => None,
        };
        if let Some(kind) = closed {
            return Ok(kind);
        }

        // Sampled fallback: knots of sampled operands, refined onto the
        // canonical grid unless interpolation of the result is exact there.
        let linear_partner = |k: &SegmentKind| match op {
            BinaryOp::Add => k.poly_degree().is_some_and(|d| d <= 1) || k.knots().is_some(),
            _ => matches!(k, Constant(_)),
        };
        let mut knots: Vec<f64> = Vec::new();
        let mut exact = true;
        let mut sampled = false;
        for (k, partner) in [(self, other), (other, self)] {
            if let Some(ks) = k.knots() {
                sampled = true;
                knots.extend(ks.iter().map(|&(x, _)| x).filter(|&x| x > sub.lo && x < sub.hi));
                exact &= linear_partner(partner);
            }
        }
        if !sampled || !exact {
            knots.extend(canonical_knots(domain, sub));
        }
        knots.push(sub.lo);
        knots.push(sub.hi);
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        if knots.len() == 1 {
            let x = knots[0];
            knots.push(x + f64::EPSILON.max(x.abs() * f64::EPSILON));
        }
        let pts = knots
            .into_iter()
            .map(|x| (x, op.apply(self.eval(x), other.eval(x))))
            .collect();
        Self::sampled(pts)
    }
}

fn check_divisor(divisor: &SegmentKind, sub: Interval) -> Result<()> {
    let (lo, hi) = (divisor.eval(sub.lo), divisor.eval(sub.hi));
    if lo == 0.0 || hi == 0.0 || (lo < 0.0) != (hi < 0.0) {
        let at = if lo == 0.0 { sub.lo } else { sub.hi };
        return Err(Error::DivisorVanishes(at));
    }
    if let SegmentKind::Mobius { r, s, .. } = *divisor {
        if sub.contains(-s / r) {
            return Err(Error::DivisorVanishes(-s / r));
        }
    }
    Ok(())
}

/// Root of `a·t² + b·t + c = 0` on the requested branch, using the
/// cancellation-free pair `q / a` and `c / q`.
fn solve_quadratic(a: f64, b: f64, c: f64, branch: Branch) -> f64 {
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let sq = disc.sqrt();
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    if q == 0.0 {
        return -b / (2.0 * a);
    }
    let (r1, r2) = (q / a, c / q);
    match branch {
        Branch::Plus => r1.max(r2),
        Branch::Minus => r1.min(r2),
    }
}

/// Linear interpolation over knots with strictly increasing inputs; values
/// outside the knot range are clamped to the end knots.
pub(crate) fn interpolate(knots: &[(f64, f64)], x: f64) -> f64 {
    let i = knots.partition_point(|&(k, _)| k < x);
    if i == 0 {
        return knots[0].1;
    }
    if i == knots.len() {
        return knots[knots.len() - 1].1;
    }
    let (x1, y1) = knots[i];
    if x1 == x {
        return y1;
    }
    let (x0, y0) = knots[i - 1];
    y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
}
