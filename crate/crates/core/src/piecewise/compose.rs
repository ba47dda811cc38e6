use crate::error::{Error, Result};
use crate::interval::Interval;

use super::canonical_knots;
use super::monotone::{Piece, PiecewiseFn};
use super::segment::{BinaryOp, SegmentKind};

/// Pointwise operations accepted by [`compose_pointwise`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseOp {
    Add,
    Sub,
    Mul,
    Div,
    Min,
    Max,
}

/// Folds `fs` pointwise with `op` over their shared domain. Arithmetic
/// operations fold left; `Min`/`Max` take the envelope of all inputs.
pub fn compose_pointwise(op: PointwiseOp, fs: &[&PiecewiseFn]) -> Result<PiecewiseFn> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::Shape("pointwise composition of no functions".into()))?;
    for f in rest {
        let (a, b) = (first.domain(), f.domain());
        if a != b {
            return Err(Error::Shape(format!("domains {a} and {b} differ")));
        }
    }
    let bin = match op {
        PointwiseOp::Add => BinaryOp::Add,
        PointwiseOp::Sub => BinaryOp::Sub,
        PointwiseOp::Mul => BinaryOp::Mul,
        PointwiseOp::Div => BinaryOp::Div,
        PointwiseOp::Min => return envelope(fs, true),
        PointwiseOp::Max => return envelope(fs, false),
    };
    let mut acc = (*first).clone();
    for f in rest {
        acc = combine(bin, &acc, f)?;
    }
    Ok(acc)
}

fn merged_breakpoints(fs: &[&PiecewiseFn]) -> Vec<f64> {
    let mut bps: Vec<f64> = fs.iter().flat_map(|f| f.breakpoints()).collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    bps
}

fn kind_on(f: &PiecewiseFn, sub: Interval) -> SegmentKind {
    f.kind_over(sub).restrict(sub)
}

fn combine(op: BinaryOp, f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    let domain = f.domain();
    if domain.is_degenerate() {
        let (x, y) = (f.value(domain.lo, super::Continuity::Left), g.value(domain.lo, super::Continuity::Left));
        if op == BinaryOp::Div && y == 0.0 {
            return Err(Error::DivisorVanishes(domain.lo));
        }
        return Ok(PiecewiseFn::constant(domain, op.apply(x, y)));
    }
    let mut pieces = Vec::new();
    for w in merged_breakpoints(&[f, g]).windows(2) {
        let sub = Interval { lo: w[0], hi: w[1] };
        let kind = kind_on(f, sub).combine(op, &kind_on(g, sub), sub, domain)?;
        pieces.push(Piece { span: sub, kind });
    }
    PiecewiseFn::new(merge_equal(pieces))
}

/// Lower (`min = true`) or upper envelope of functions on a common domain.
///
/// Each merged sub-interval is scanned on the canonical grid; where the
/// leading function changes, the crossing is located by bisection to 1e-12
/// and the leading function's own kind is kept on each side.
pub fn envelope(fs: &[&PiecewiseFn], min: bool) -> Result<PiecewiseFn> {
    let domain = fs
        .first()
        .ok_or_else(|| Error::Shape("envelope of no functions".into()))?
        .domain();
    let pick = |a: f64, b: f64| if min { a.min(b) } else { a.max(b) };
    if domain.is_degenerate() {
        let v = fs
            .iter()
            .map(|f| f.value(domain.lo, super::Continuity::Left))
            .reduce(pick)
            .unwrap();
        return Ok(PiecewiseFn::constant(domain, v));
    }
    // Strictly better by more than rounding noise.
    let beats = |a: f64, b: f64| {
        let tol = 1e-12 * (1.0 + a.abs().max(b.abs()));
        if min {
            a < b - tol
        } else {
            a > b + tol
        }
    };
    let mut pieces = Vec::new();
    for w in merged_breakpoints(fs).windows(2) {
        let sub = Interval { lo: w[0], hi: w[1] };
        let kinds: Vec<SegmentKind> = fs.iter().map(|f| kind_on(f, sub)).collect();
        let leader = |t: f64, incumbent: usize| {
            let vals: Vec<f64> = kinds.iter().map(|k| k.eval(t)).collect();
            let mut best = incumbent;
            for (i, &v) in vals.iter().enumerate() {
                if beats(v, vals[best]) {
                    best = i;
                }
            }
            best
        };
        let strictly = |a: f64, b: f64| if min { a < b } else { a > b };
        let mut current = leader(sub.lo, 0);
        let mut start = sub.lo;
        let mut prev = sub.lo;
        let grid = canonical_knots(domain, sub).into_iter().chain(std::iter::once(sub.hi));
        for t in grid {
            // The leader at `t` need not be the first to overtake: retire
            // leaders one crossing at a time.
            let mut lo = prev;
            for _ in 0..2 * kinds.len() {
                if leader(t, current) == current {
                    break;
                }
                let inc = &kinds[current];
                let cross = bisect(
                    |x| {
                        let v = inc.eval(x);
                        kinds.iter().any(|k| strictly(k.eval(x), v))
                    },
                    lo,
                    t,
                );
                let (v, probe) = (inc.eval(cross), 0.5 * (cross + t));
                let next = (0..kinds.len())
                    .filter(|&i| i != current && strictly(kinds[i].eval(cross), v))
                    .reduce(|a, b| {
                        let (x, y) = (kinds[a].eval(cross), kinds[b].eval(cross));
                        let tie = (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()));
                        let b_wins = if tie {
                            strictly(kinds[b].eval(probe), kinds[a].eval(probe))
                        } else {
                            strictly(y, x)
                        };
                        if b_wins { b } else { a }
                    })
                    .unwrap_or_else(|| leader(t, current));
                if cross > start {
                    let span = Interval { lo: start, hi: cross };
                    pieces.push(Piece { span, kind: inc.restrict(span) });
                    start = cross;
                }
                current = next;
                lo = cross;
            }
            prev = t;
        }
        if start < sub.hi || sub.is_degenerate() {
            let span = Interval { lo: start, hi: sub.hi };
            pieces.push(Piece { span, kind: kinds[current].restrict(span) });
        }
    }
    PiecewiseFn::new(merge_equal(pieces))
}

/// Smallest point (to 1e-12) in `(lo, hi]` where `switched` holds, given it
/// fails at `lo` and holds at `hi`.
fn bisect(switched: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if switched(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Joins neighbouring pieces that carry the same closed form.
fn merge_equal(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last.kind == p.kind && p.kind.is_closed_form() {
                last.span.hi = p.span.hi;
                continue;
            }
        }
        out.push(p);
    }
    out
}
