//! Numerical tolerance policy shared by every checker.
//!
//! An inequality `L <= R` counts as satisfied when
//! `L <= R + rel * max(1, |L|, |R|)`. Identities are held to a much tighter
//! relative residual.

/// Default relative tolerance for inequality verdicts.
pub const INEQUALITY_REL_TOL: f64 = 1e-9;

/// Relative residual allowed for algebraic identities.
pub const IDENTITY_REL_TOL: f64 = 1e-12;

/// How far `‖e‖` may drift from 1 before `e` is rejected as non-unit.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Minimum hypothesis slack for a fuzz sample to count toward soundness.
pub const DEFAULT_SLACK_GUARD: f64 = 1e-7;

/// Non-integer Hile exponents need `|‖x‖ - ‖y‖|` at least this large.
pub const HILE_SINGULAR_GAP: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: INEQUALITY_REL_TOL,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64) -> Self {
        Tolerance { rel }
    }

    /// `lhs <= rhs` up to the relative tolerance.
    pub fn le(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs + self.rel * scale(lhs, rhs)
    }

    /// Signed normalized margin of `lhs <= rhs`; negative means violated
    /// before the tolerance is applied.
    pub fn margin(lhs: f64, rhs: f64) -> f64 {
        (rhs - lhs) / scale(lhs, rhs)
    }
}

/// `max(1, |a|, |b|)`.
pub fn scale(a: f64, b: f64) -> f64 {
    1f64.max(a.abs()).max(b.abs())
}

/// Residual `|a - b|` relative to `max(1, magnitude)`.
pub fn relative_residual(a: f64, b: f64, magnitude: f64) -> f64 {
    (a - b).abs() / 1f64.max(magnitude.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn le_absorbs_rounding_only() {
        let tol = Tolerance::default();
        assert!(tol.le(1.0 + 1e-12, 1.0));
        assert!(!tol.le(1.0 + 1e-6, 1.0));
        assert!(tol.le(1e6 + 1e-4, 1e6));
        assert!(!tol.le(1e6 + 1e-2, 1e6));
    }

    #[test]
    fn margin_sign() {
        assert!(Tolerance::margin(1.0, 2.0) > 0.0);
        assert!(Tolerance::margin(2.0, 1.0) < 0.0);
    }
}
