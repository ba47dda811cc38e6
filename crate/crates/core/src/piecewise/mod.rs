//! Monotone piecewise functions with one-sided continuity, their generalized
//! inverses, and pointwise composition.

mod compose;
mod monotone;
mod segment;

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::interval::Interval;

pub use compose::{compose_pointwise, envelope, PointwiseOp};
pub use monotone::{double_inverse_roundtrip, Continuity, Direction, MonotoneFn, Piece, PiecewiseFn};
pub use segment::{BinaryOp, Branch, SegmentKind};

/// Default number of knots on the canonical sampling grid.
pub const DEFAULT_ALPHA_RESOLUTION: usize = 1025;

static ALPHA_RESOLUTION: AtomicUsize = AtomicUsize::new(0);

/// Number of knots on the canonical sampling grid of a domain.
///
/// Read once from `FUZZ_ALPHA_RES` when set to an integer ≥ 2, otherwise
/// [`DEFAULT_ALPHA_RESOLUTION`].
pub fn alpha_resolution() -> usize {
    match ALPHA_RESOLUTION.load(Ordering::Relaxed) {
        0 => {
            let n = std::env::var("FUZZ_ALPHA_RES")
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&n| n >= 2)
                .unwrap_or(DEFAULT_ALPHA_RESOLUTION);
            ALPHA_RESOLUTION.store(n, Ordering::Relaxed);
            n
        }
        n => n,
    }
}

/// Overrides the canonical resolution for the rest of the process.
pub fn set_alpha_resolution(n: usize) {
    ALPHA_RESOLUTION.store(n.max(2), Ordering::Relaxed);
}

/// Canonical grid points of `domain` lying strictly inside `sub`.
pub(crate) fn canonical_knots(domain: Interval, sub: Interval) -> Vec<f64> {
    if domain.is_degenerate() || sub.is_degenerate() {
        return Vec::new();
    }
    let steps = (alpha_resolution() - 1) as f64;
    let w = domain.width();
    let at = |k: f64| if k == steps { domain.hi } else { domain.lo + w * (k / steps) };
    let first = (((sub.lo - domain.lo) / w) * steps).floor().max(0.0);
    let last = (((sub.hi - domain.lo) / w) * steps).ceil().min(steps);
    let mut out = Vec::new();
    let mut k = first;
    while k <= last {
        let t = at(k);
        if t > sub.lo && t < sub.hi {
            out.push(t);
        }
        k += 1.0;
    }
    out
}

/// Points of the canonical grid of `domain`, endpoints included.
pub fn canonical_grid(domain: Interval) -> Vec<f64> {
    let mut out = vec![domain.lo];
    out.extend(canonical_knots(domain, domain));
    if domain.hi > domain.lo {
        out.push(domain.hi);
    }
    out
}
