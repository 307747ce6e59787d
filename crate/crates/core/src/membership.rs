//! Piecewise-linear membership functions.
//!
//! Two shapes cover everything the controller needs: triangles and
//! trapezoids over a closed real interval. Degenerate breakpoints
//! (`a == b` or `b == c`) are legal and denote shoulders, e.g.
//! `TRI 0 0 15` is a left shoulder that starts at full membership.

use crate::error::FuzzyError;

/// A triangular or trapezoidal membership function.
///
/// Breakpoints are non-decreasing and in the owning variable's units. The
/// evaluated degree is always within `[0, 1]`, exactly `0` outside the
/// support, and exactly `1` at the apex (triangles) or plateau (trapezoids).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

impl MembershipFunction {
    /// Builds a triangle, rejecting non-finite or decreasing breakpoints.
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        check_breakpoints(&[a, b, c])?;
        Ok(MembershipFunction::Triangular { a, b, c })
    }

    /// Builds a trapezoid, rejecting non-finite or decreasing breakpoints.
    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        check_breakpoints(&[a, b, c, d])?;
        Ok(MembershipFunction::Trapezoidal { a, b, c, d })
    }

    /// Membership degree of `x`, a total function into `[0, 1]`.
    pub fn evaluate(&self, x: f64) -> f64 {
        match *self {
            MembershipFunction::Triangular { a, b, c } => {
                if x < a || x > c {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else if x > b {
                    (c - x) / (c - b)
                } else {
                    1.0
                }
            }
            MembershipFunction::Trapezoidal { a, b, c, d } => {
                if x < a || x > d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else if x > c {
                    (d - x) / (d - c)
                } else {
                    1.0
                }
            }
        }
    }

    /// The closed interval outside of which the degree is exactly zero.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            MembershipFunction::Triangular { a, c, .. } => (a, c),
            MembershipFunction::Trapezoidal { a, d, .. } => (a, d),
        }
    }

    /// Breakpoints in order (3 for triangles, 4 for trapezoids).
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            MembershipFunction::Triangular { a, b, c } => vec![a, b, c],
            MembershipFunction::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }
}

fn check_breakpoints(points: &[f64]) -> Result<(), FuzzyError> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(FuzzyError::Membership("breakpoints must be finite".into()));
    }
    if points.windows(2).any(|w| w[0] > w[1]) {
        return Err(FuzzyError::Membership(format!(
            "breakpoints must be non-decreasing, got {points:?}"
        )));
    }
    Ok(())
}
