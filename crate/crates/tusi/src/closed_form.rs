//! Closed-form real-root solvers: the radical formula for the single-root
//! regimes and the quadratic formula. No complex arithmetic anywhere — the
//! formula is only applied where its radicand is nonnegative, and the
//! three-real-root regime is refused outright (that regime belongs to the
//! interval-based iterative path).

use serde::Serialize;

use crate::classify::{self, near_boundary};
use crate::error::{Error, Result};
use crate::forms::{NormalForm, QuadraticTusiForm, ReducedForm, Sign};

/// The intermediate quantities of the radical formula, kept for inspection:
/// `root = cbrt(-q/2 + s) + cbrt(-q/2 - s)` with `s = sqrt(q^2/4 + p^3/27)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormTrace {
    /// The auxiliary radical, always >= 0 in the accepted regimes.
    pub s: f64,
    /// `(-q/2 + s, -q/2 - s)`.
    pub cube_args: (f64, f64),
    pub root: f64,
}

/// Core of the formula for `x^3 + p x + q` given a nonnegative radicand.
///
/// When `q != 0` one cube argument loses digits to cancellation; it is
/// recovered from the product identity
/// `(-q/2 + s)(-q/2 - s) = -p^3/27`.
fn cardano_core(p: f64, q: f64) -> ClosedFormTrace {
    let radicand = q * q / 4.0 + p * p * p / 27.0;
    debug_assert!(radicand >= 0.0, "cardano_core called with negative radicand");
    let s = radicand.sqrt();
    let product = -p * p * p / 27.0;
    let (u, v) = if q > 0.0 {
        let v = -q / 2.0 - s; // large magnitude, safe
        (if v != 0.0 { product / v } else { -q / 2.0 + s }, v)
    } else if q < 0.0 {
        let u = -q / 2.0 + s;
        (u, if u != 0.0 { product / u } else { -q / 2.0 - s })
    } else {
        (s, -s)
    };
    ClosedFormTrace { s, cube_args: (u, v), root: u.cbrt() + v.cbrt() }
}

/// The unique real root of `x^3 + x + q` (always exists: the function is
/// strictly increasing).
pub fn cardano_normal(f: &NormalForm) -> Result<ClosedFormTrace> {
    if f.sign != Sign::Positive {
        return Err(Error::Precondition(
            "closed form requires the positive normal form x^3 + x + q".into(),
        ));
    }
    Ok(cardano_core(1.0, f.q))
}

/// The unique real root of a reduced form in a single-root regime.
///
/// Accepted: `p > 0`; `p = 0` (plain cube root); `p < 0` with negative
/// discriminant. A nonnegative discriminant with `p < 0` means three real
/// roots (possibly merged) — the formula would need complex intermediates,
/// so it is refused and the caller is pointed at the iterative path.
pub fn cardano_reduced(r: &ReducedForm) -> Result<ClosedFormTrace> {
    if r.p < 0.0 {
        let d = classify::discriminant(r);
        if d.delta_cap >= 0.0 || near_boundary(d.delta_cap, 0.0) {
            return Err(Error::Regime(
                "three-real-root regime: use the iterative path".into(),
            ));
        }
    }
    Ok(cardano_core(r.p, r.q))
}

/// Real roots of `x^2 - b x + c`, ascending; empty when `c > b^2/4`, a
/// single double root on the (snapped) boundary.
pub fn quadratic_roots(qt: &QuadraticTusiForm) -> Vec<f64> {
    let delta = qt.delta();
    if near_boundary(delta, 1.0) {
        return vec![qt.b / 2.0];
    }
    if delta > 1.0 {
        return vec![];
    }
    let disc = qt.b * qt.b - 4.0 * qt.c;
    let sq = disc.sqrt();
    // b > 0, so b + sq never cancels
    let r_big = (qt.b + sq) / 2.0;
    let r_small = if r_big != 0.0 { qt.c / r_big } else { 0.0 };
    vec![r_small, r_big]
}
