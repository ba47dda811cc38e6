//! The fuzzy interval value type.
//!
//! A fuzzy interval is stored as its pair of fuzzy endpoints: `a_d`, the
//! increasing left-continuous lower endpoint of the α-cuts, and `a_u`, the
//! decreasing right-continuous upper endpoint, both on `α ∈ [0, 1]`. The
//! membership (x-space) view is obtained by generalized inversion and cached.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::piecewise::{canonical_grid, Continuity, Direction, MonotoneFn};

/// Membership view: rising flank, plateau of full membership, falling flank.
#[derive(Debug, Clone, PartialEq)]
pub struct CharView {
    /// Non-decreasing, right-continuous, on `[l, m̲]`.
    pub xi_l: MonotoneFn,
    pub plateau: Interval,
    /// Non-increasing, left-continuous, on `[m̄, r]`.
    pub xi_r: MonotoneFn,
}

/// The α-cut `{x : μ(x) ≥ α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaCut {
    pub lo: f64,
    pub hi: f64,
    pub alpha: f64,
}

impl AlphaCut {
    pub fn interval(&self) -> Interval {
        Interval { lo: self.lo, hi: self.hi }
    }
}

impl fmt::Display for AlphaCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone)]
pub struct FuzzyInterval {
    a_d: MonotoneFn,
    a_u: MonotoneFn,
    view: OnceLock<CharView>,
}

impl PartialEq for FuzzyInterval {
    fn eq(&self, other: &Self) -> bool {
        self.a_d == other.a_d && self.a_u == other.a_u
    }
}

fn tol(scale: f64) -> f64 {
    1e-9 * (1.0 + scale)
}

impl FuzzyInterval {
    /// Builds a fuzzy interval from its endpoint functions.
    ///
    /// Zero-width end pieces are dropped so that `a_d` is continuous at
    /// `α = 0` and `a_u` at `α = 1`; the cuts must then be ordered.
    pub fn from_endpoints(a_d: MonotoneFn, a_u: MonotoneFn) -> Result<Self> {
        for (name, f, dir, cont) in [
            ("a_d", &a_d, Direction::Increasing, Continuity::Left),
            ("a_u", &a_u, Direction::Decreasing, Continuity::Right),
        ] {
            if f.domain() != Interval::UNIT {
                return Err(Error::Shape(format!("{name} must be defined on [0, 1], got {}", f.domain())));
            }
            if f.direction() != dir && f.range().width() > 0.0 {
                return Err(Error::Shape(format!("{name} must be {dir:?}")));
            }
            if f.continuity() != cont {
                return Err(Error::Shape(format!("{name} must be {cont:?} continuous")));
            }
        }
        let a_d = a_d.without_degenerate();
        let a_u = a_u.without_degenerate();
        let t = tol(a_d.as_piecewise().magnitude().max(a_u.as_piecewise().magnitude()));
        let mut levels = canonical_grid(Interval::UNIT);
        for f in [&a_d, &a_u] {
            levels.extend(f.as_piecewise().breakpoints());
        }
        for a in levels {
            let (lo, hi) = (a_d.at(a), a_u.at(a).max(a_u.left_limit(a)));
            if lo > hi + t {
                return Err(Error::Order(format!("cut at level {a} is [{lo}, {hi}]")));
            }
        }
        Ok(Self { a_d, a_u, view: OnceLock::new() })
    }

    /// Triangular fuzzy number with support `[l, r]` and peak `m`.
    pub fn triangle(l: f64, m: f64, r: f64) -> Result<Self> {
        Self::trapezoid(l, m, m, r)
    }

    /// Trapezoidal fuzzy interval with support `[l, r]` and core `[m1, m2]`.
    pub fn trapezoid(l: f64, m1: f64, m2: f64, r: f64) -> Result<Self> {
        let ps = [l, m1, m2, r];
        if ps.iter().any(|p| !p.is_finite()) {
            return Err(Error::Order(format!("non-finite parameters {ps:?}")));
        }
        if !(l <= m1 && m1 <= m2 && m2 <= r) {
            return Err(Error::Order(format!("parameters {ps:?} must be non-decreasing")));
        }
        let a_d = MonotoneFn::affine(Interval::UNIT, m1 - l, l, Continuity::Left);
        let a_u = MonotoneFn::affine(Interval::UNIT, -(r - m2), r, Continuity::Right)
            .with_direction(Direction::Decreasing);
        Self::from_endpoints(a_d, a_u)
    }

    /// The crisp number `λ`.
    pub fn point(lambda: f64) -> Self {
        Self::crisp_interval(lambda, lambda).expect("a point is an ordered interval")
    }

    /// The crisp interval `[a, b]`.
    pub fn crisp_interval(a: f64, b: f64) -> Result<Self> {
        Self::trapezoid(a, a, b, b)
    }

    /// Builds a fuzzy interval from its membership flanks and plateau.
    pub fn from_components(xi_l: MonotoneFn, plateau: Interval, xi_r: MonotoneFn) -> Result<Self> {
        if xi_l.continuity() != Continuity::Right || xi_r.continuity() != Continuity::Left {
            return Err(Error::Shape("left flank must be right-continuous, right flank left-continuous".into()));
        }
        if xi_l.range().width() > 0.0 && xi_l.direction() != Direction::Increasing
            || xi_r.range().width() > 0.0 && xi_r.direction() != Direction::Decreasing
        {
            return Err(Error::Shape("flanks must rise on the left and fall on the right".into()));
        }
        if xi_l.domain().hi != plateau.lo || xi_r.domain().lo != plateau.hi {
            return Err(Error::Shape(format!(
                "flanks on {} and {} do not meet the plateau {plateau}",
                xi_l.domain(),
                xi_r.domain()
            )));
        }
        for (name, f) in [("left", &xi_l), ("right", &xi_r)] {
            if !f.range().is_subset_of(&Interval::UNIT, 1e-12) {
                return Err(Error::Shape(format!("{name} flank leaves [0, 1]: {}", f.range())));
            }
        }
        let (top_l, top_r) = (xi_l.at(plateau.lo), xi_r.at(plateau.hi));
        if (top_l - 1.0).abs() > 1e-9 || (top_r - 1.0).abs() > 1e-9 {
            return Err(Error::Gap(format!("flanks reach {top_l} and {top_r} at {plateau}")));
        }
        let a_d = xi_l.inverse_inf(Interval::UNIT)?;
        let a_u = xi_r.inverse_sup(Interval::UNIT)?;
        Self::from_endpoints(a_d, a_u)
    }

    pub fn a_d(&self) -> &MonotoneFn {
        &self.a_d
    }

    pub fn a_u(&self) -> &MonotoneFn {
        &self.a_u
    }

    /// `[a_d(0), a_u(0)]`.
    pub fn support(&self) -> Interval {
        Interval { lo: self.a_d.at(0.0), hi: self.a_u.at(0.0) }
    }

    /// `[a_d(1), a_u(1)]`.
    pub fn core(&self) -> Interval {
        Interval { lo: self.a_d.at(1.0), hi: self.a_u.at(1.0) }
    }

    pub fn is_positive(&self) -> bool {
        self.support().lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.support().hi < 0.0
    }

    /// The α-cut for `α ∈ (0, 1]`.
    ///
    /// The upper end is the limit of `a_u` from below `α`, so the cut is
    /// exactly `{x : μ(x) ≥ α}` also at levels where `a_u` jumps.
    pub fn alpha_cut(&self, alpha: f64) -> Result<AlphaCut> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Range(alpha));
        }
        Ok(AlphaCut { lo: self.a_d.at(alpha), hi: self.a_u.left_limit(alpha), alpha })
    }

    /// Lazily computed membership view.
    pub fn char_view(&self) -> &CharView {
        self.view.get_or_init(|| {
            let (core, support) = (self.core(), self.support());
            let xi_l = self
                .a_d
                .inverse_sup(Interval { lo: support.lo, hi: core.lo })
                .expect("validated endpoints are invertible");
            let xi_r = self
                .a_u
                .inverse_inf(Interval { lo: core.hi, hi: support.hi })
                .expect("validated endpoints are invertible");
            CharView { xi_l, plateau: core, xi_r }
        })
    }

    /// Membership grade of `x`; upper semi-continuous.
    pub fn membership(&self, x: f64) -> f64 {
        let (support, core) = (self.support(), self.core());
        if !support.contains(x) {
            return 0.0;
        }
        if core.contains(x) {
            return 1.0;
        }
        let view = self.char_view();
        let mu = if x < core.lo { view.xi_l.at(x) } else { view.xi_r.at(x) };
        mu.clamp(0.0, 1.0)
    }

    /// Agreement of both endpoint functions within `tol` (relative).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.a_d.approx_eq(&other.a_d, tol) && self.a_u.approx_eq(&other.a_u, tol)
    }
}

impl MonotoneFn {
    /// Relabels a constant function's direction; other functions are returned
    /// unchanged.
    pub(crate) fn with_direction(self, direction: Direction) -> Self {
        if self.range().width() == 0.0 && self.direction() != direction {
            MonotoneFn::from_piecewise(self.as_piecewise().clone(), direction, self.continuity())
                .expect("constant functions are monotone both ways")
        } else {
            self
        }
    }
}
