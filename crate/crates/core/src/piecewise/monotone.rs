use crate::error::{Error, Result};
use crate::interval::Interval;

use super::canonical_grid;
use super::segment::SegmentKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Increasing => Direction::Decreasing,
            Direction::Decreasing => Direction::Increasing,
        }
    }
}

/// Which one-sided limit a function takes at its breakpoints.
///
/// A `Left` continuous function owns each breakpoint value with the piece on
/// its left; a `Right` continuous one with the piece on its right. A
/// zero-width piece may sit at the free end (the start for `Left`, the end
/// for `Right`) to give the boundary value independently of the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    Left,
    Right,
}

impl Continuity {
    pub fn flipped(self) -> Self {
        match self {
            Continuity::Left => Continuity::Right,
            Continuity::Right => Continuity::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub span: Interval,
    pub kind: SegmentKind,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, kind: SegmentKind) -> Result<Self> {
        Ok(Self { span: Interval::new(lo, hi)?, kind })
    }

    pub fn start_value(&self) -> f64 {
        self.kind.eval(self.span.lo)
    }

    pub fn end_value(&self) -> f64 {
        self.kind.eval(self.span.hi)
    }
}

/// Contiguous pieces partitioning a closed domain, with no monotonicity
/// requirement. Used for intermediate pointwise results.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFn {
    domain: Interval,
    pieces: Vec<Piece>,
}

impl PiecewiseFn {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let (first, last) = match (pieces.first(), pieces.last()) {
            (Some(f), Some(l)) => (f.span.lo, l.span.hi),
            _ => return Err(Error::Shape("piecewise function without pieces".into())),
        };
        if pieces.windows(2).any(|w| w[0].span.hi != w[1].span.lo) {
            return Err(Error::Shape("pieces do not partition the domain".into()));
        }
        Ok(Self { domain: Interval { lo: first, hi: last }, pieces })
    }

    pub fn from_kind(domain: Interval, kind: SegmentKind) -> Self {
        Self { domain, pieces: vec![Piece { span: domain, kind }] }
    }

    pub fn constant(domain: Interval, value: f64) -> Self {
        Self::from_kind(domain, SegmentKind::Constant(value))
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Value at `x` (clamped into the domain) under the given ownership.
    pub fn value(&self, x: f64, continuity: Continuity) -> f64 {
        let x = x.clamp(self.domain.lo, self.domain.hi);
        let i = match continuity {
            Continuity::Left => self.pieces.partition_point(|p| p.span.hi < x),
            Continuity::Right => self.pieces.partition_point(|p| p.span.lo <= x) - 1,
        };
        self.pieces[i].kind.eval(x)
    }

    /// Sorted distinct piece boundaries, domain endpoints included.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![self.domain.lo];
        for p in &self.pieces {
            if p.span.hi != *out.last().unwrap() {
                out.push(p.span.hi);
            }
        }
        out
    }

    /// The kind of the non-degenerate piece covering `sub`.
    pub(crate) fn kind_over(&self, sub: Interval) -> &SegmentKind {
        let mid = sub.midpoint();
        let i = self
            .pieces
            .iter()
            .position(|p| p.span.lo <= mid && mid <= p.span.hi && !p.span.is_degenerate())
            .unwrap_or(0);
        &self.pieces[i].kind
    }

    pub fn map_output(&self, scale: f64, offset: f64) -> Self {
        Self {
            domain: self.domain,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { span: p.span, kind: p.kind.map_output(scale, offset) })
                .collect(),
        }
    }

    /// `t ↦ f(-t)` on the mirrored domain.
    pub fn reflect_input(&self) -> Self {
        Self {
            domain: Interval { lo: -self.domain.hi, hi: -self.domain.lo },
            pieces: self
                .pieces
                .iter()
                .rev()
                .map(|p| Piece {
                    span: Interval { lo: -p.span.hi, hi: -p.span.lo },
                    kind: p.kind.reflect_input(),
                })
                .collect(),
        }
    }

    /// Largest absolute value at piece endpoints.
    pub fn magnitude(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.start_value().abs().max(p.end_value().abs()))
            .fold(0.0, f64::max)
    }

    fn without_degenerate(&self) -> Self {
        if self.domain.is_degenerate() {
            return self.clone();
        }
        Self {
            domain: self.domain,
            pieces: self.pieces.iter().filter(|p| !p.span.is_degenerate()).cloned().collect(),
        }
    }
}

/// Monotone piecewise function on a closed interval with declared direction
/// and one-sided continuity.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneFn {
    pw: PiecewiseFn,
    direction: Direction,
    continuity: Continuity,
}

fn tolerance(scale: f64) -> f64 {
    1e-9 * (1.0 + scale)
}

impl MonotoneFn {
    pub fn new(pieces: Vec<Piece>, direction: Direction, continuity: Continuity) -> Result<Self> {
        Self::from_piecewise(PiecewiseFn::new(pieces)?, direction, continuity)
    }

    /// Validates direction, piece placement and finiteness.
    pub fn from_piecewise(pw: PiecewiseFn, direction: Direction, continuity: Continuity) -> Result<Self> {
        let n = pw.pieces.len();
        let tol = tolerance(pw.magnitude());
        let increasing = direction == Direction::Increasing;
        for (i, p) in pw.pieces.iter().enumerate() {
            if !p.start_value().is_finite() || !p.end_value().is_finite() {
                return Err(Error::Shape(format!("non-finite value on {}", p.span)));
            }
            if p.span.is_degenerate() && n > 1 {
                let allowed = match continuity {
                    Continuity::Left => i == 0,
                    Continuity::Right => i == n - 1,
                };
                if !allowed {
                    return Err(Error::Shape(format!(
                        "zero-width piece at {} conflicts with {:?} continuity",
                        p.span.lo, continuity
                    )));
                }
            }
            if !p.kind.is_monotone_on(p.span, increasing, tol) {
                return Err(Error::Shape(format!("piece on {} is not {:?}", p.span, direction)));
            }
        }
        for w in pw.pieces.windows(2) {
            let (a, b) = (w[0].end_value(), w[1].start_value());
            let ok = if increasing { a <= b + tol } else { a + tol >= b };
            if !ok {
                return Err(Error::Shape(format!(
                    "values {a} -> {b} at {} violate {:?} direction",
                    w[0].span.hi, direction
                )));
            }
        }
        Ok(Self { pw, direction, continuity })
    }

    pub fn constant(domain: Interval, value: f64, direction: Direction, continuity: Continuity) -> Self {
        Self { pw: PiecewiseFn::constant(domain, value), direction, continuity }
    }

    /// A single affine piece; the direction follows the slope sign.
    pub fn affine(domain: Interval, slope: f64, intercept: f64, continuity: Continuity) -> Self {
        let direction = if slope < 0.0 { Direction::Decreasing } else { Direction::Increasing };
        Self {
            pw: PiecewiseFn::from_kind(domain, SegmentKind::affine(slope, intercept)),
            direction,
            continuity,
        }
    }

    pub fn domain(&self) -> Interval {
        self.pw.domain
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pw.pieces
    }

    pub fn as_piecewise(&self) -> &PiecewiseFn {
        &self.pw
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let d = self.domain();
        if !(d.lo <= x && x <= d.hi) {
            return Err(Error::Domain { x, lo: d.lo, hi: d.hi });
        }
        Ok(self.at(x))
    }

    /// Value at `x` clamped into the domain.
    pub fn at(&self, x: f64) -> f64 {
        self.pw.value(x, self.continuity)
    }

    /// Limit from the left (the value itself at the domain start).
    pub fn left_limit(&self, x: f64) -> f64 {
        self.pw.value(x, Continuity::Left)
    }

    pub fn right_limit(&self, x: f64) -> f64 {
        self.pw.value(x, Continuity::Right)
    }

    /// `[f(lo), f(hi)]` in increasing order.
    pub fn range(&self) -> Interval {
        let d = self.domain();
        let (a, b) = (self.at(d.lo), self.at(d.hi));
        Interval { lo: a.min(b), hi: a.max(b) }
    }

    /// Same pieces under the other ownership convention. Zero-width pieces
    /// that the new convention cannot hold are dropped.
    pub fn with_continuity(&self, continuity: Continuity) -> Self {
        if continuity == self.continuity {
            return self.clone();
        }
        Self { pw: self.pw.without_degenerate(), direction: self.direction, continuity }
    }

    /// Removes zero-width end pieces so boundary values equal the limits.
    pub fn without_degenerate(&self) -> Self {
        Self { pw: self.pw.without_degenerate(), ..self.clone() }
    }

    /// `t ↦ scale·f(t) + offset`, keeping the ownership convention.
    pub fn map_output(&self, scale: f64, offset: f64) -> Self {
        let direction = if scale < 0.0 { self.direction.flipped() } else { self.direction };
        Self { pw: self.pw.map_output(scale, offset), direction, continuity: self.continuity }
    }

    /// `t ↦ f(-t)`; direction and continuity both flip.
    pub fn reflect_input(&self) -> Self {
        Self {
            pw: self.pw.reflect_input(),
            direction: self.direction.flipped(),
            continuity: self.continuity.flipped(),
        }
    }

    /// Generalized inverse with left-continuous output, defined on `target`:
    /// `inf{x : f(x) ≥ y}` for increasing `f`, `sup{x : f(x) ≥ y}` for
    /// decreasing `f`. Levels outside the range of `f` map to the nearest
    /// domain end. Requires a right-continuous input.
    pub fn inverse_inf(&self, target: Interval) -> Result<Self> {
        if self.continuity != Continuity::Right {
            return Err(Error::Shape("inverse_inf needs a right-continuous function".into()));
        }
        self.inverse(target, Continuity::Left)
    }

    /// Generalized inverse with right-continuous output, defined on `target`:
    /// `sup{x : f(x) ≤ y}` for increasing `f`, `inf{x : f(x) ≤ y}` for
    /// decreasing `f`. Requires a left-continuous input.
    pub fn inverse_sup(&self, target: Interval) -> Result<Self> {
        if self.continuity != Continuity::Left {
            return Err(Error::Shape("inverse_sup needs a left-continuous function".into()));
        }
        self.inverse(target, Continuity::Right)
    }

    fn inverse(&self, target: Interval, out: Continuity) -> Result<Self> {
        let pw = match self.direction {
            Direction::Increasing => invert_increasing(&self.pw, target, out)?,
            Direction::Decreasing => {
                // sup/inf over x of the mirrored set: negate the inverse of f(-t).
                invert_increasing(&self.pw.reflect_input(), target, out)?.map_output(-1.0, 0.0)
            }
        };
        Self::from_piecewise(pw, self.direction, out).map_err(|e| Error::Internal(format!("inverse: {e}")))
    }

    /// Number of jump discontinuities, counting a zero-width end piece whose
    /// value differs from the adjacent limit. Steps below `1e-7·(1 + |f|)`
    /// are ignored: inverting a quadratic at its vertex leaves steps of
    /// about the square root of the rounding error.
    pub fn jump_count(&self) -> usize {
        let tol = 1e-7 * (1.0 + self.pw.magnitude());
        self.pw.pieces.windows(2).filter(|w| (w[0].end_value() - w[1].start_value()).abs() > tol).count()
    }

    /// Number of maximal constant runs of positive width.
    pub fn plateau_count(&self) -> usize {
        let tol = tolerance(self.pw.magnitude());
        let min_width = 1e-7 * (1.0 + self.domain().magnitude());
        let increasing = match self.direction {
            Direction::Increasing => self.pw.clone(),
            Direction::Decreasing => self.pw.reflect_input(),
        };
        // Runs as (start, end, value); slivers narrower than `min_width` are
        // the image of sub-tolerance steps and are not counted.
        let mut runs: Vec<(f64, f64, f64)> = Vec::new();
        let mut open = false;
        for atom in atoms(&increasing) {
            if atom.span.is_degenerate() {
                continue;
            }
            if atom.flat {
                match runs.last_mut() {
                    Some(r) if open && r.1 == atom.span.lo && (r.2 - atom.start).abs() <= tol => r.1 = atom.span.hi,
                    _ => runs.push((atom.span.lo, atom.span.hi, atom.start)),
                }
                open = true;
            } else {
                open = false;
            }
        }
        runs.iter().filter(|r| r.1 - r.0 > min_width).count()
    }

    /// `n` evenly spaced samples `(x, f(x))` over the domain.
    pub fn tabulate(&self, n: usize) -> Vec<(f64, f64)> {
        let d = self.domain();
        if n <= 1 {
            return vec![(d.lo, self.at(d.lo))];
        }
        (0..n)
            .map(|i| {
                let x = if i == n - 1 { d.hi } else { d.lo + d.width() * i as f64 / (n - 1) as f64 };
                (x, self.at(x))
            })
            .collect()
    }

    /// Pointwise agreement within `tol·(1 + |value|)` on the canonical grid,
    /// both functions' breakpoints and the midpoints between them.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let (a, b) = (self.domain(), other.domain());
        let dtol = tol * (1.0 + a.magnitude());
        if (a.lo - b.lo).abs() > dtol || (a.hi - b.hi).abs() > dtol {
            return false;
        }
        let mut xs = canonical_grid(a);
        for bp in self.pw.breakpoints().into_iter().chain(other.pw.breakpoints()) {
            xs.push(bp);
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mids: Vec<f64> = xs.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        xs.into_iter().chain(mids).all(|x| {
            let (u, v) = (self.at(x), other.at(x));
            (u - v).abs() <= tol * (1.0 + u.abs().max(v.abs()))
        })
    }
}

/// Applies the inverse matching the function's continuity twice:
/// `inverse_sup(inverse_inf(f))` for right-continuous `f`, the other order
/// for left-continuous `f`. The intermediate function lives on `[0, 1]`, or
/// on the range of `f` when that leaves the unit interval.
pub fn double_inverse_roundtrip(f: &MonotoneFn) -> Result<MonotoneFn> {
    let range = f.range();
    let levels = if range.is_subset_of(&Interval::UNIT, 0.0) { Interval::UNIT } else { range };
    match f.continuity() {
        Continuity::Right => f.inverse_inf(levels)?.inverse_sup(f.domain()),
        Continuity::Left => f.inverse_sup(levels)?.inverse_inf(f.domain()),
    }
}

/// A piece that is either flat or strictly increasing.
struct Atom {
    span: Interval,
    kind: SegmentKind,
    start: f64,
    end: f64,
    flat: bool,
}

/// Splits an increasing function into flat and strictly increasing atoms.
/// Sampled pieces are split at the boundaries of their flat knot runs.
fn atoms(f: &PiecewiseFn) -> Vec<Atom> {
    let mut out = Vec::new();
    for p in &f.pieces {
        let (s, e) = (p.start_value(), p.end_value());
        match &p.kind {
            SegmentKind::Sampled(knots) if !p.span.is_degenerate() => {
                let mut run: Vec<(f64, f64)> = vec![knots[0]];
                let mut run_flat: Option<bool> = None;
                let mut level = knots[0].1;
                for &(x, y) in &knots[1..] {
                    // Clamp rounding dips so runs stay weakly increasing.
                    let y = y.max(level);
                    let flat = y == level;
                    if run_flat.is_some_and(|rf| rf != flat) {
                        out.push(atom_from_run(std::mem::take(&mut run), run_flat.unwrap()));
                        run.push((out.last().unwrap().span.hi, level));
                    }
                    run_flat = Some(flat);
                    run.push((x, y));
                    level = y;
                }
                out.push(atom_from_run(run, run_flat.unwrap_or(true)));
            }
            kind => {
                let flat = p.span.is_degenerate() || kind.is_constant() || e <= s;
                out.push(Atom { span: p.span, kind: kind.clone(), start: s, end: e.max(s), flat });
            }
        }
    }
    // Closed-form ends miss a neighbouring value by rounding; snap them
    // together, trusting a flat neighbour's exact value.
    let tol = tolerance(f.magnitude());
    for i in 1..out.len() {
        let (prev_end, next_start) = (out[i - 1].end, out[i].start);
        if prev_end != next_start && (prev_end - next_start).abs() <= tol {
            if out[i].flat && !out[i - 1].flat {
                out[i - 1].end = next_start.max(out[i - 1].start);
            } else {
                out[i].start = prev_end;
                out[i].end = out[i].end.max(prev_end);
            }
        }
    }
    out
}

fn atom_from_run(run: Vec<(f64, f64)>, flat: bool) -> Atom {
    let (first, last) = (run[0], run[run.len() - 1]);
    let span = Interval { lo: first.0, hi: last.0 };
    let kind = if flat { SegmentKind::Constant(first.1) } else { SegmentKind::Sampled(run) };
    Atom { span, kind, start: first.1, end: last.1, flat }
}

/// Generalized inverse of an increasing function restricted to `target`.
/// `Left` output gives `inf{x : f(x) ≥ y}`, `Right` gives `sup{x : f(x) ≤ y}`.
fn invert_increasing(f: &PiecewiseFn, target: Interval, out: Continuity) -> Result<PiecewiseFn> {
    let atoms = atoms(f);
    let (x_lo, x_hi) = (f.domain.lo, f.domain.hi);
    let mut pieces: Vec<Piece> = Vec::new();
    let mut cur = atoms[0].start;
    if cur >= target.lo {
        pieces.push(Piece { span: Interval { lo: target.lo, hi: cur }, kind: SegmentKind::Constant(x_lo) });
    }
    for atom in atoms {
        if atom.start > cur {
            // A jump of f becomes a constant run of the inverse.
            pieces.push(Piece {
                span: Interval { lo: cur, hi: atom.start },
                kind: SegmentKind::Constant(atom.span.lo),
            });
            cur = atom.start;
        }
        if !atom.flat && atom.end > cur {
            let inv = atom
                .kind
                .inverse(atom.span)
                .ok_or_else(|| Error::Internal("strict piece without inverse".into()))?;
            let span = Interval { lo: cur, hi: atom.end };
            pieces.push(Piece { span, kind: inv.restrict(span) });
            cur = atom.end;
        }
    }
    if target.hi >= cur {
        pieces.push(Piece { span: Interval { lo: cur, hi: target.hi }, kind: SegmentKind::Constant(x_hi) });
    }
    normalize(clip(pieces, target), target, out)
}

fn clip(pieces: Vec<Piece>, target: Interval) -> Vec<Piece> {
    pieces
        .into_iter()
        .filter_map(|p| {
            let span = p.span.intersect(&target)?;
            let kind = if span.is_degenerate() {
                SegmentKind::Constant(p.kind.eval(span.lo))
            } else if span != p.span {
                p.kind.restrict(span)
            } else {
                p.kind
            };
            Some(Piece { span, kind })
        })
        .collect()
}

/// Drops zero-width pieces that the ownership convention cannot hold or
/// that repeat the adjacent value, and merges equal adjacent constants.
fn normalize(pieces: Vec<Piece>, target: Interval, out: Continuity) -> Result<PiecewiseFn> {
    if pieces.is_empty() {
        return Err(Error::Internal("inverse produced no pieces".into()));
    }
    if target.is_degenerate() {
        let p = match out {
            Continuity::Left => &pieces[0],
            Continuity::Right => &pieces[pieces.len() - 1],
        };
        return Ok(PiecewiseFn::constant(target, p.kind.eval(target.lo)));
    }
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs());
    let n = pieces.len();
    let mut kept: Vec<Piece> = Vec::with_capacity(n);
    for (i, p) in pieces.iter().enumerate() {
        if p.span.is_degenerate() {
            let v = p.kind.eval(p.span.lo);
            let keep = match out {
                Continuity::Left => {
                    i == 0 && pieces.get(1).is_some_and(|q| !same(v, q.start_value()))
                }
                Continuity::Right => {
                    i == n - 1 && i > 0 && !same(v, pieces[i - 1].end_value())
                }
            };
            if !keep {
                continue;
            }
        }
        if let (Some(last), SegmentKind::Constant(v)) = (kept.last_mut(), &p.kind) {
            if let SegmentKind::Constant(u) = last.kind {
                if u == *v && !last.span.is_degenerate() && !p.span.is_degenerate() {
                    last.span.hi = p.span.hi;
                    continue;
                }
            }
        }
        kept.push(p.clone());
    }
    PiecewiseFn::new(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn c(v: f64) -> SegmentKind {
        SegmentKind::Constant(v)
    }

    /// Right component of the step-sided interval: 1 at x = 1, 0.3 on
    /// (1, 2], 0.1 on (2, 4].
    fn step_right() -> MonotoneFn {
        MonotoneFn::new(
            vec![
                Piece::new(1.0, 1.0, c(1.0)).unwrap(),
                Piece::new(1.0, 2.0, c(0.3)).unwrap(),
                Piece::new(2.0, 4.0, c(0.1)).unwrap(),
            ],
            Direction::Decreasing,
            Continuity::Left,
        )
        .unwrap()
    }

    #[test]
    fn eval_respects_ownership() {
        let f = step_right();
        assert_eq!(f.eval(1.5).unwrap(), 0.3);
        assert_eq!(f.eval(1.0).unwrap(), 1.0);
        assert_eq!(f.eval(2.0).unwrap(), 0.3);
        assert_eq!(f.eval(2.5).unwrap(), 0.1);
        assert!(matches!(f.eval(4.5), Err(Error::Domain { .. })));

        let k = MonotoneFn::constant(iv(0.25, 1.0), 1.0, Direction::Increasing, Continuity::Right);
        assert_eq!(k.eval(0.7).unwrap(), 1.0);
        let a = MonotoneFn::affine(iv(0.125, 0.25), 8.0, -1.0, Continuity::Right);
        assert_eq!(a.eval(0.25).unwrap(), 1.0);
    }

    #[test]
    fn rejects_shape_violations() {
        let bad = MonotoneFn::new(
            vec![Piece::new(0.0, 1.0, c(2.0)).unwrap(), Piece::new(1.0, 2.0, c(1.0)).unwrap()],
            Direction::Increasing,
            Continuity::Left,
        );
        assert!(matches!(bad, Err(Error::Shape(_))));
        let misplaced = MonotoneFn::new(
            vec![Piece::new(0.0, 0.0, c(0.0)).unwrap(), Piece::new(0.0, 1.0, c(1.0)).unwrap()],
            Direction::Increasing,
            Continuity::Right,
        );
        assert!(matches!(misplaced, Err(Error::Shape(_))));
        let gap = MonotoneFn::new(
            vec![Piece::new(0.0, 0.5, c(0.0)).unwrap(), Piece::new(0.6, 1.0, c(1.0)).unwrap()],
            Direction::Increasing,
            Continuity::Left,
        );
        assert!(gap.is_err());
    }

    #[test]
    fn inverse_inf_of_linear_flank() {
        let xi_l = MonotoneFn::affine(iv(1.0, 2.0), 1.0, -1.0, Continuity::Right);
        let a_d = xi_l.inverse_inf(Interval::UNIT).unwrap();
        assert_eq!(a_d.pieces().len(), 1);
        assert_eq!(a_d.pieces()[0].kind, SegmentKind::Affine { slope: 1.0, intercept: 1.0 });
        assert_eq!(a_d.continuity(), Continuity::Left);
        assert_eq!(a_d.at(0.0), 1.0);
        assert_eq!(a_d.at(1.0), 2.0);
    }

    #[test]
    fn inverse_sup_of_linear_flank() {
        let xi_r = MonotoneFn::affine(iv(2.0, 3.0), -1.0, 3.0, Continuity::Left);
        let a_u = xi_r.inverse_sup(Interval::UNIT).unwrap();
        for i in 0..=10 {
            let a = i as f64 / 10.0;
            assert!((a_u.at(a) - (3.0 - a)).abs() < 1e-15);
        }
        assert_eq!(a_u.at(1.0), 2.0);
    }

    #[test]
    fn inverse_of_point_indicator_is_constant() {
        let delta = MonotoneFn::constant(iv(5.0, 5.0), 1.0, Direction::Increasing, Continuity::Right);
        let g = delta.inverse_inf(Interval::UNIT).unwrap();
        for a in [0.0, 0.3, 1.0] {
            assert_eq!(g.at(a), 5.0);
        }
    }

    #[test]
    fn inverse_sup_of_step_matches_half_open_runs() {
        let a_u = step_right().inverse_sup(Interval::UNIT).unwrap();
        assert_eq!(a_u.continuity(), Continuity::Right);
        let expect = [(0.0, 4.0), (0.05, 4.0), (0.1, 2.0), (0.2, 2.0), (0.3, 1.0), (0.7, 1.0), (1.0, 1.0)];
        for (a, v) in expect {
            assert_eq!(a_u.at(a), v, "alpha {a}");
        }
        assert_eq!(a_u.left_limit(0.1), 4.0);
        assert_eq!(a_u.left_limit(0.3), 2.0);
    }

    #[test]
    fn inverse_sup_of_indicator_plateau() {
        // χ on [2, 3] viewed as a decreasing right flank: 1 on [2, 3].
        let chi = MonotoneFn::constant(iv(2.0, 3.0), 1.0, Direction::Decreasing, Continuity::Left);
        let g = chi.inverse_sup(Interval::UNIT).unwrap();
        assert_eq!(g.at(0.0), 3.0);
        assert_eq!(g.at(0.999), 3.0);
        assert_eq!(g.at(1.0), 2.0);
    }

    #[test]
    fn step_roundtrip_is_identity() {
        let f = step_right();
        let back = double_inverse_roundtrip(&f).unwrap();
        for x in [1.0, 1.0 + 1e-12, 1.5, 2.0, 2.0 + 1e-12, 3.0, 4.0] {
            assert_eq!(back.at(x), f.at(x), "x={x}");
        }
        assert!(back.approx_eq(&f, 1e-12));
    }

    #[test]
    fn linear_roundtrip_is_identity() {
        let f = MonotoneFn::affine(iv(1.0, 2.0), 1.0, -1.0, Continuity::Right);
        let back = double_inverse_roundtrip(&f).unwrap();
        assert_eq!(back.pieces().len(), 1);
        assert_eq!(back.pieces()[0].kind, f.pieces()[0].kind);
    }

    fn mixed_pieces() -> MonotoneFn {
        let n = 400;
        let (a, b) = (2.0 / 3.0, 6.0 / 7.0);
        let sine: Vec<(f64, f64)> = (0..=n)
            .map(|i| {
                let x = if i == n { b } else { a + (b - a) * i as f64 / n as f64 };
                (x, (3.0 * x - 1.0).sin() - 0.5)
            })
            .collect();
        MonotoneFn::new(
            vec![
                Piece::new(0.25, 2.0 / 3.0, SegmentKind::affine(0.25, 0.0)).unwrap(),
                Piece::new(a, b, SegmentKind::sampled(sine).unwrap()).unwrap(),
                Piece::new(b, 9.0 / 8.0, c(5.0 / 8.0)).unwrap(),
                Piece::new(9.0 / 8.0, 1.2, SegmentKind::affine(5.0 / 6.0, 0.0)).unwrap(),
            ],
            Direction::Increasing,
            Continuity::Right,
        )
        .unwrap()
    }

    #[test]
    fn mixed_inverse_structure() {
        let f = mixed_pieces();
        let g = f.inverse_inf(Interval::UNIT).unwrap();
        let kinds: Vec<&SegmentKind> = g.pieces().iter().map(|p| &p.kind).collect();
        assert_eq!(kinds.len(), 7, "{kinds:?}");
        let constants: Vec<f64> = kinds
            .iter()
            .filter_map(|k| if let SegmentKind::Constant(v) = k { Some(*v) } else { None })
            .collect();
        assert_eq!(constants.len(), 4);
        assert_eq!(constants[0], 0.25);
        assert_eq!(constants[1], 2.0 / 3.0);
        assert_eq!(constants[2], 6.0 / 7.0);
        assert_eq!(constants[3], 9.0 / 8.0);
        // jumps of f are plateaus of the inverse and vice versa
        assert_eq!(f.jump_count(), 3);
        assert_eq!(g.plateau_count(), 4);
        assert_eq!(f.plateau_count(), 1);
        // 4α and 6α/5 pieces
        assert!((g.at(0.1) - 0.4).abs() < 1e-15);
        assert!((g.at(0.95) - 1.14).abs() < 1e-14);
        assert!(f.approx_eq(&double_inverse_roundtrip(&f).unwrap(), 1e-9));
    }

    #[test]
    fn continuity_mismatch_is_a_shape_error() {
        let f = MonotoneFn::affine(iv(1.0, 2.0), 1.0, -1.0, Continuity::Left);
        assert!(matches!(f.inverse_inf(Interval::UNIT), Err(Error::Shape(_))));
    }
}
