//! Brute-force sup-min extension principle on discretized grids.
//!
//! `(F ∘ G)(z) = sup{ min(μ_F(x), μ_G(y)) : x ∘ y = z }` is approximated by
//! sampling both supports, binning every `x ∘ y` into uniform bins over the
//! interval-arithmetic image, and keeping the maximum grade per bin.

use std::fmt;

use rayon::prelude::*;

use crate::arith::Op;
use crate::error::{Error, Result};
use crate::fuzzy::{AlphaCut, FuzzyInterval};
use crate::interval::Interval;

pub const DEFAULT_GRID: usize = 2001;
pub const DEFAULT_TOL_BINS: f64 = 2.0;

/// Default comparison levels 0.1, 0.2, …, 0.9.
pub fn default_levels() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    /// Samples per operand and number of output bins.
    pub n_per_axis: usize,
}

impl GridSpec {
    pub fn new(n_per_axis: usize) -> Result<Self> {
        if n_per_axis < 3 {
            return Err(Error::Grid(format!("need at least 3 points per axis, got {n_per_axis}")));
        }
        Ok(Self { n_per_axis })
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_per_axis: DEFAULT_GRID }
    }
}

/// Membership grades on uniform bins; each point is a bin centre.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMembership {
    pub points: Vec<(f64, f64)>,
    /// Bin width; zero when the image is a single point.
    pub bin_width: f64,
    /// Interval-arithmetic image covered by the bins.
    pub range: Interval,
}

/// Image of two supports under `op` by interval arithmetic.
pub fn image(op: Op, a: Interval, b: Interval) -> Result<Interval> {
    if op == Op::Div && b.contains(0.0) {
        return Err(Error::DivisorSpansZero { lo: b.lo, hi: b.hi });
    }
    let c = [op.real(a.lo, b.lo), op.real(a.lo, b.hi), op.real(a.hi, b.lo), op.real(a.hi, b.hi)];
    let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Interval::new(lo, hi).map_err(|e| Error::Grid(e.to_string()))
}

/// Operand samples with their grades: `n` uniform points on the support plus
/// the core ends. Divisor grids are uniform in `1/y`.
fn operand_samples(f: &FuzzyInterval, n: usize, divisor: bool) -> Vec<(f64, f64)> {
    let (s, core) = (f.support(), f.core());
    let mut xs: Vec<f64> = if s.is_degenerate() {
        vec![s.lo]
    } else if divisor {
        let (u0, u1) = (1.0 / s.hi, 1.0 / s.lo);
        (0..n).map(|i| 1.0 / (u0 + (u1 - u0) * i as f64 / (n - 1) as f64)).collect()
    } else {
        (0..n).map(|i| s.lo + s.width() * i as f64 / (n - 1) as f64).collect()
    };
    if !s.is_degenerate() {
        xs[0] = s.lo;
        xs[n - 1] = s.hi;
        xs.push(core.lo);
        xs.push(core.hi);
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.into_iter().map(|x| (x, f.membership(x))).collect()
}

/// Extension of `op` to `f` and `g` on the given grid.
pub fn extend(op: Op, f: &FuzzyInterval, g: &FuzzyInterval, grid: GridSpec) -> Result<SampledMembership> {
    let n = grid.n_per_axis;
    if n < 3 {
        return Err(Error::Grid(format!("need at least 3 points per axis, got {n}")));
    }
    let range = image(op, f.support(), g.support())?;
    let xs = operand_samples(f, n, false);
    let ys = operand_samples(g, n, op == Op::Div);
    let bins = if range.is_degenerate() { 1 } else { n };
    let width = range.width() / bins as f64;
    let bin_of = |z: f64| -> usize {
        if width == 0.0 {
            return 0;
        }
        (((z - range.lo) / width).floor().max(0.0) as usize).min(bins - 1)
    };
    let grades = xs
        .par_iter()
        .fold(
            || vec![0.0f64; bins],
            |mut acc, &(x, mx)| {
                if mx > 0.0 {
                    for &(y, my) in &ys {
                        let m = mx.min(my);
                        if m > 0.0 {
                            let k = bin_of(op.real(x, y));
                            if m > acc[k] {
                                acc[k] = m;
                            }
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0.0f64; bins],
            |mut a, b| {
                for (u, v) in a.iter_mut().zip(b) {
                    *u = u.max(v);
                }
                a
            },
        );
    let points = grades
        .into_iter()
        .enumerate()
        .map(|(k, m)| (range.lo + width * (k as f64 + 0.5), m))
        .collect();
    Ok(SampledMembership { points, bin_width: width, range })
}

/// The α-cut of sampled grades: outer edges of the first and last bins
/// reaching `α`, clipped to the image.
pub fn cuts_of(s: &SampledMembership, alpha: f64) -> Result<AlphaCut> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Range(alpha));
    }
    let reaches = |&(_, m): &(f64, f64)| m >= alpha - 1e-12;
    let first = s.points.iter().find(|p| reaches(p)).ok_or(Error::EmptyCut(alpha))?;
    let last = s.points.iter().rev().find(|p| reaches(p)).ok_or(Error::EmptyCut(alpha))?;
    let half = 0.5 * s.bin_width;
    Ok(AlphaCut {
        lo: (first.0 - half).max(s.range.lo),
        hi: (last.0 + half).min(s.range.hi),
        alpha,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub alpha: f64,
    pub method: Interval,
    /// `None` when no bin reaches the level.
    pub oracle: Option<Interval>,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub levels: Vec<LevelReport>,
    pub bin_width: f64,
    pub tolerance: f64,
    pub max_distance: f64,
    pub pass: bool,
}

/// Per-level Hausdorff distances between the cuts of `result` and of `s`;
/// passes when every distance is within `tol_bins` bin widths.
pub fn compare(result: &FuzzyInterval, s: &SampledMembership, levels: &[f64], tol_bins: f64) -> Result<Report> {
    let tolerance = tol_bins * s.bin_width;
    let mut out = Vec::with_capacity(levels.len());
    for &alpha in levels {
        let method = result.alpha_cut(alpha)?.interval();
        let (oracle, distance) = match cuts_of(s, alpha) {
            Ok(c) => (Some(c.interval()), method.hausdorff(&c.interval())),
            Err(Error::EmptyCut(_)) => (None, f64::INFINITY),
            Err(e) => return Err(e),
        };
        out.push(LevelReport { alpha, method, oracle, distance });
    }
    let max_distance = out.iter().map(|l| l.distance).fold(0.0, f64::max);
    // Relative slack absorbs rounding in the bin arithmetic itself.
    let slack = 1e-12 * (1.0 + s.range.magnitude());
    Ok(Report { levels: out, bin_width: s.bin_width, tolerance, max_distance, pass: max_distance <= tolerance + slack })
}

/// Computes `op(f, g)` and checks it against the extension principle.
pub fn verify(
    op: Op,
    f: &FuzzyInterval,
    g: &FuzzyInterval,
    grid: GridSpec,
    levels: &[f64],
    tol_bins: f64,
) -> Result<Report> {
    let result = op.apply(f, g)?;
    let sampled = extend(op, f, g, grid)?;
    compare(&result, &sampled, levels, tol_bins)
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6}  {:>27}  {:>27}  {:>11}", "alpha", "method cut", "oracle cut", "distance")?;
        for l in &self.levels {
            let oracle = match l.oracle {
                Some(c) => format!("[{:.6}, {:.6}]", c.lo, c.hi),
                None => "(empty)".to_string(),
            };
            writeln!(
                f,
                "{:>6.3}  {:>27}  {:>27}  {:>11.3e}",
                l.alpha,
                format!("[{:.6}, {:.6}]", l.method.lo, l.method.hi),
                oracle,
                l.distance
            )?;
        }
        writeln!(f, "bin width {:.3e}, tolerance {:.3e}", self.bin_width, self.tolerance)?;
        write!(f, "{} (max distance {:.3e})", if self.pass { "PASS" } else { "FAIL" }, self.max_distance)
    }
}
