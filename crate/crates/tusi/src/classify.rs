//! Root counting, multiplicity and isolation intervals for every canonical
//! form.
//!
//! Classification is structural: each input is matched to one regime of the
//! relevant case analysis, multiplicities are read off the regime (never
//! inferred numerically), and every unbounded case is tightened to a finite
//! sign-verified bracket before being returned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{
    reduced_to_tusi, GeneralizedTusiForm, QuadraticTusiForm, ReducedForm, TusiForm,
    TusiGeneralForm,
};

/// Relative tolerance for snapping a value onto a regime boundary.
pub const EPS_CLASS: f64 = 1e-12;

/// True when `x` lies within the classification band around `boundary`.
pub fn near_boundary(x: f64, boundary: f64) -> bool {
    (x - boundary).abs() <= EPS_CLASS * (1.0 + x.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalKind {
    /// Both endpoints excluded; contains exactly one root.
    Open,
    /// Lower endpoint included, upper excluded.
    HalfOpen,
    /// `lo == hi` is the root itself.
    ExactPoint,
}

/// An isolation interval together with how its endpoints are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootInterval {
    pub lo: f64,
    pub hi: f64,
    pub kind: IntervalKind,
}

impl RootInterval {
    pub fn open(lo: f64, hi: f64) -> Self {
        RootInterval { lo, hi, kind: IntervalKind::Open }
    }

    pub fn half_open(lo: f64, hi: f64) -> Self {
        RootInterval { lo, hi, kind: IntervalKind::HalfOpen }
    }

    pub fn exact(x: f64) -> Self {
        RootInterval { lo: x, hi: x, kind: IntervalKind::ExactPoint }
    }

    pub fn contains(&self, x: f64) -> bool {
        match self.kind {
            IntervalKind::Open => self.lo < x && x < self.hi,
            IntervalKind::HalfOpen => self.lo <= x && x < self.hi,
            IntervalKind::ExactPoint => x == self.lo,
        }
    }
}

/// Outcome of a classification: distinct-root count, isolation intervals in
/// ascending order, aligned multiplicities, and the regime tag that matched.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub count: usize,
    pub intervals: Vec<RootInterval>,
    pub multiplicities: Vec<u32>,
    pub regime: &'static str,
    /// Set when the input was within `EPS_CLASS` of a boundary and was
    /// classified as the boundary case.
    pub boundary_snapped: bool,
}

impl Classification {
    fn new(
        regime: &'static str,
        intervals: Vec<RootInterval>,
        multiplicities: Vec<u32>,
        boundary_snapped: bool,
    ) -> Self {
        debug_assert_eq!(intervals.len(), multiplicities.len());
        Classification {
            count: intervals.len(),
            intervals,
            multiplicities,
            regime,
            boundary_snapped,
        }
    }
}

impl Classification {
    /// The same classification expressed in an outer variable via
    /// `x = scale * y + shift`; intervals are re-oriented and re-sorted
    /// when the scale is negative.
    pub fn mapped(&self, map: &crate::forms::AffineMap) -> Classification {
        let mut intervals: Vec<(RootInterval, u32)> = self
            .intervals
            .iter()
            .zip(&self.multiplicities)
            .map(|(iv, &m)| {
                let (a, b) = (map.apply(iv.lo), map.apply(iv.hi));
                (RootInterval { lo: a.min(b), hi: a.max(b), kind: iv.kind }, m)
            })
            .collect();
        intervals.sort_by(|a, b| a.0.lo.partial_cmp(&b.0.lo).unwrap());
        let (intervals, multiplicities) = intervals.into_iter().unzip();
        Classification::new(self.regime, intervals, multiplicities, self.boundary_snapped)
    }
}

/// The discriminant of a reduced form, with its Tusi-form delta when `p < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discriminant {
    /// `-(q^2/4 + p^3/27)`.
    pub delta_cap: f64,
    /// `1/2 + 3 sqrt(3) q / (4 sqrt(-p^3))`, present only when `p < 0`.
    pub delta_tusi: Option<f64>,
}

/// Computes the discriminant and, for `p < 0`, the Tusi delta.
///
/// The two views agree: `delta_tusi` in (0, 1) iff `delta_cap > 0`. This is
/// cross-checked (outside the snapping band) in debug builds.
pub fn discriminant(r: &ReducedForm) -> Discriminant {
    let delta_cap = -(r.q * r.q / 4.0 + r.p.powi(3) / 27.0);
    let delta_tusi = if r.p < 0.0 {
        let neg_p = -r.p;
        Some(0.5 + 3.0 * 3.0_f64.sqrt() * r.q / (4.0 * (neg_p * neg_p * neg_p).sqrt()))
    } else {
        None
    };
    if let Some(d) = delta_tusi {
        if !near_boundary(d, 0.0) && !near_boundary(d, 1.0) {
            debug_assert_eq!(
                d > 0.0 && d < 1.0,
                delta_cap > 0.0,
                "delta/discriminant cross-check failed: delta={d}, Delta={delta_cap}"
            );
        }
    }
    Discriminant { delta_cap, delta_tusi }
}

/// The five cases for `alpha^3 - alpha^2 + (4/27) delta = 0`.
///
/// Intervals are returned ascending; the unbounded cases come back as
/// finite sign-verified brackets.
pub fn classify_tusi(t: &TusiForm) -> Classification {
    let d = t.delta;
    if near_boundary(d, 1.0) {
        return Classification::new(
            "delta_eq_1",
            vec![RootInterval::exact(-1.0 / 3.0), RootInterval::exact(2.0 / 3.0)],
            vec![1, 2],
            d != 1.0,
        );
    }
    if near_boundary(d, 0.0) {
        return Classification::new(
            "delta_eq_0",
            vec![RootInterval::exact(0.0), RootInterval::exact(1.0)],
            vec![2, 1],
            d != 0.0,
        );
    }
    if d > 1.0 {
        let (lo, hi) = tusi_outer_bracket(d);
        Classification::new("delta_above_1", vec![RootInterval::open(lo, hi)], vec![1], false)
    } else if d < 0.0 {
        let (lo, hi) = tusi_outer_bracket(d);
        Classification::new("delta_below_0", vec![RootInterval::open(lo, hi)], vec![1], false)
    } else {
        Classification::new(
            "delta_in_0_1",
            vec![
                RootInterval::open(-1.0 / 3.0, 0.0),
                RootInterval::open(0.0, 2.0 / 3.0),
                RootInterval::open(2.0 / 3.0, 1.0),
            ],
            vec![1, 1, 1],
            false,
        )
    }
}

/// Finite bracket for the single root of a Tusi form with `delta` outside
/// `[0, 1]`. The outer endpoint is the Cauchy-style bound `1 + |4 delta/27|`.
fn tusi_outer_bracket(delta: f64) -> (f64, f64) {
    let c = 4.0 * delta / 27.0;
    if delta > 1.0 {
        (-(1.0 + c), -1.0 / 3.0)
    } else {
        (1.0, 1.0 + c.abs())
    }
}

/// The five cases for `x^3 - b x^2 + c = 0`, `b > 0`: the unit-form
/// classification with every interval scaled by `b`.
pub fn classify_tusi_general(g: &TusiGeneralForm) -> Classification {
    let unit = classify_tusi(&TusiForm { delta: g.delta() });
    let b = g.b;
    let scaled = unit
        .intervals
        .iter()
        .map(|iv| RootInterval { lo: b * iv.lo, hi: b * iv.hi, kind: iv.kind })
        .collect();
    let regime = match unit.regime {
        "delta_above_1" => "c_above_4b3_27",
        "delta_eq_1" => "c_eq_4b3_27",
        "delta_in_0_1" => "c_in_0_4b3_27",
        "delta_eq_0" => "c_eq_0",
        _ => "c_below_0",
    };
    Classification::new(regime, scaled, unit.multiplicities, unit.boundary_snapped)
}

/// Classifies a reduced form `x^3 + p x + q`.
///
/// `p < 0` inputs are routed through the Tusi form; its intervals (or exact
/// boundary roots) are mapped back with the accumulated affine map.
pub fn classify_reduced(r: &ReducedForm) -> Classification {
    if r.p.abs() <= EPS_CLASS {
        let snapped = r.p != 0.0;
        if r.q.abs() <= EPS_CLASS {
            return Classification::new(
                "p_zero_q_zero",
                vec![RootInterval::exact(0.0)],
                vec![3],
                snapped || r.q != 0.0,
            );
        }
        // single real root, directly constructive
        return Classification::new(
            "p_zero_single",
            vec![RootInterval::exact((-r.q).cbrt())],
            vec![1],
            snapped,
        );
    }
    if r.p > 0.0 {
        let iv = if r.q.abs() <= EPS_CLASS {
            RootInterval::exact(0.0)
        } else if r.q < 0.0 {
            let hi = (-r.q / r.p).min((-r.q).cbrt());
            RootInterval::half_open(0.0, next_up(hi))
        } else {
            let lo = (-(r.q / r.p).min(r.q.cbrt())).min(0.0);
            RootInterval::half_open(next_down(lo), 0.0)
        };
        return Classification::new("p_positive_single", vec![iv], vec![1], false);
    }

    // p < 0: go through the Tusi form.
    let (t, map) = reduced_to_tusi(r).expect("p < 0 checked above");
    let unit = classify_tusi(&t);
    let mapped: Vec<RootInterval> = unit
        .intervals
        .iter()
        .map(|iv| RootInterval {
            lo: map.apply(iv.lo),
            hi: map.apply(iv.hi),
            kind: iv.kind,
        })
        .collect();
    let regime = match unit.regime {
        "delta_in_0_1" => "three_real_roots",
        "delta_eq_1" => "double_root_high",
        "delta_eq_0" => "double_root_low",
        _ => "p_negative_single",
    };
    Classification::new(regime, mapped, unit.multiplicities, unit.boundary_snapped)
}

fn next_up(x: f64) -> f64 {
    x + 1e-15 * (1.0 + x.abs())
}

fn next_down(x: f64) -> f64 {
    x - 1e-15 * (1.0 + x.abs())
}

/// The quadratic case analysis for `x^2 - b x + c`, `b > 0`; constructive,
/// so all intervals are exact points.
pub fn classify_quadratic(qt: &QuadraticTusiForm) -> Classification {
    let d = qt.delta();
    if near_boundary(d, 1.0) {
        return Classification::new(
            "delta_eq_1",
            vec![RootInterval::exact(qt.b / 2.0)],
            vec![2],
            d != 1.0,
        );
    }
    if d > 1.0 {
        return Classification::new("no_real_roots", vec![], vec![], false);
    }
    let disc = qt.b * qt.b - 4.0 * qt.c;
    let sq = disc.sqrt();
    let r_big = (qt.b + sq) / 2.0;
    let r_small = if r_big != 0.0 { qt.c / r_big } else { 0.0 };
    Classification::new(
        "two_real_roots",
        vec![RootInterval::exact(r_small), RootInterval::exact(r_big)],
        vec![1, 1],
        false,
    )
}

/// The parity-dependent case analysis for `phi_n(alpha) = delta phi_n_star`.
///
/// Counts match the case table; the single negative root for odd `n`,
/// `delta > 1` is bracketed inside `(-(1 + delta phi_n_star), 0)` — the
/// function is strictly monotone there, so the bracket isolates it.
pub fn classify_generalized(g: &GeneralizedTusiForm) -> Result<Classification> {
    if g.n < 2 {
        return Err(Error::InvalidInput(format!("degree n must be >= 2, got {}", g.n)));
    }
    let n = g.n;
    let d = g.delta;
    let even = n.is_multiple_of(2);
    let (alpha_star, phi_star) = maximizer(n);

    if near_boundary(d, 0.0) {
        return Ok(Classification::new(
            "delta_eq_0",
            vec![RootInterval::exact(0.0), RootInterval::exact(1.0)],
            vec![n - 1, 1],
            d != 0.0,
        ));
    }
    if near_boundary(d, 1.0) {
        return Ok(if even {
            Classification::new(
                "delta_eq_1_even",
                vec![RootInterval::exact(alpha_star)],
                vec![2],
                d != 1.0,
            )
        } else {
            Classification::new(
                "delta_eq_1_odd",
                vec![
                    RootInterval::half_open(-alpha_star, 0.0),
                    RootInterval::exact(alpha_star),
                ],
                vec![1, 2],
                d != 1.0,
            )
        });
    }
    let outer = 1.0 + (d * phi_star).abs();
    Ok(if d < 0.0 {
        if even {
            Classification::new(
                "delta_below_0_even",
                vec![RootInterval::open(-outer, 0.0), RootInterval::open(1.0, outer)],
                vec![1, 1],
                false,
            )
        } else {
            Classification::new(
                "delta_below_0_odd",
                vec![RootInterval::open(1.0, outer)],
                vec![1],
                false,
            )
        }
    } else if d > 1.0 {
        if even {
            Classification::new("delta_above_1_even", vec![], vec![], false)
        } else {
            Classification::new(
                "delta_above_1_odd",
                vec![RootInterval::open(-outer, 0.0)],
                vec![1],
                false,
            )
        }
    } else if even {
        Classification::new(
            "delta_in_0_1_even",
            vec![
                RootInterval::open(0.0, alpha_star),
                RootInterval::open(alpha_star, 1.0),
            ],
            vec![1, 1],
            false,
        )
    } else {
        Classification::new(
            "delta_in_0_1_odd",
            vec![
                RootInterval::open(-alpha_star, 0.0),
                RootInterval::open(0.0, alpha_star),
                RootInterval::open(alpha_star, 1.0),
            ],
            vec![1, 1, 1],
            false,
        )
    })
}

/// The maximizer of `phi_n` on `[0, inf)` and its value:
/// `((n-1)/n, (n-1)^(n-1)/n^n)`.
///
/// Above `n = 30` the value is computed in log space to dodge overflow of
/// the intermediate powers.
pub fn maximizer(n: u32) -> (f64, f64) {
    assert!(n >= 2, "maximizer requires n >= 2");
    let nf = n as f64;
    let alpha_star = (nf - 1.0) / nf;
    let phi_star = if n > 30 {
        ((nf - 1.0) * (nf - 1.0).ln() - nf * nf.ln()).exp()
    } else {
        (nf - 1.0).powi(n as i32 - 1) / nf.powi(n as i32)
    };
    (alpha_star, phi_star)
}

/// A regime whose natural root interval is unbounded on one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnboundedCase {
    /// Negative root of `x^3 - x + q'`, `q' > 0`: lies in `[L, 0)` with
    /// `L = min{-sqrt(2), -(2 q')^(1/3)}`.
    NormalNegativeRoot { q_prime: f64 },
    /// Positive root of `x^3 + x + q`, `q < 0`: lies in `(0, -q)`.
    NormalPositiveRoot { q: f64 },
    /// Single root of a Tusi form with `delta` outside `[0, 1]`.
    TusiSingle { delta: f64 },
    /// Negative-side root of a generalized form.
    GeneralizedNegative { n: u32, delta: f64 },
}

/// Replaces an unbounded case-table interval with a finite bracket guaranteed
/// to contain the root (sign change verified by the caller's function).
pub fn bound_tightening(case: UnboundedCase) -> (f64, f64) {
    match case {
        UnboundedCase::NormalNegativeRoot { q_prime } => {
            let l = (-2.0_f64.sqrt()).min(-(2.0 * q_prime).cbrt());
            (l, 0.0)
        }
        UnboundedCase::NormalPositiveRoot { q } => {
            let mq = -q;
            (0.0, mq.min(mq.cbrt()))
        }
        UnboundedCase::TusiSingle { delta } => tusi_outer_bracket(delta),
        UnboundedCase::GeneralizedNegative { n, delta } => {
            let (_, phi_star) = maximizer(n);
            (-(1.0 + (delta * phi_star).abs()), 0.0)
        }
    }
}
