//! Bracketed iterative refinement: bisection, safeguarded Newton, and the
//! chord-conic iteration, driven by the isolation intervals from `classify`.
//!
//! The `solve_*` orchestrators tie the pipeline together: classify, pick a
//! method per regime, refine each isolation interval, and map roots back to
//! the caller's variable.

use serde::Serialize;

use crate::classify::{self, Classification, IntervalKind, RootInterval};
use crate::closed_form;
use crate::error::{Error, Result};
use crate::forms::{
    normalize, phi, reduce_general, tusi_to_reduced, AffineMap, GeneralCubic,
    GeneralizedTusiForm, NormalForm, QuadraticTusiForm, ReducedForm, Sign, TusiForm,
};

/// An interval with a verified sign change (or an exact zero endpoint).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both endpoints and verifies the sign change.
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        // NaN endpoints fail this comparison too
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Err(Error::Precondition(format!("bracket needs lo < hi, got [{lo}, {hi}]")));
        }
        let f_lo = f(lo);
        let f_hi = f(hi);
        if f_lo * f_hi > 0.0 {
            return Err(Error::Precondition(format!(
                "no sign change on [{lo}, {hi}]: f = ({f_lo}, {f_hi})"
            )));
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Bisection,
    Newton,
    Chord,
    Cardano,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Absolute root tolerance in the solved form's own variable.
    pub tol: f64,
    pub max_iter: u32,
    pub method: Method,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-12, max_iter: 200, method: Method::Auto }
    }
}

impl SolveOptions {
    pub fn validated(self) -> Result<Self> {
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidInput(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be at least 1".into()));
        }
        Ok(self)
    }
}

/// Bisects to `tol`. Iteration count never exceeds
/// `ceil(log2(width / tol)) + 1`.
pub fn bisect(f: impl Fn(f64) -> f64, b: Bracket, opts: &SolveOptions) -> Result<(f64, u32)> {
    if b.f_lo == 0.0 {
        return Ok((b.lo, 0));
    }
    if b.f_hi == 0.0 {
        return Ok((b.hi, 0));
    }
    let mut lo = b.lo;
    let mut hi = b.hi;
    let mut f_lo = b.f_lo;
    let mut iterations = 0u32;
    while hi - lo > opts.tol {
        if iterations >= opts.max_iter {
            return Err(Error::Convergence { lo, hi, iterations });
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        let fm = f(mid);
        iterations += 1;
        if fm == 0.0 {
            return Ok((mid, iterations));
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
        debug_assert!(f_lo * f(hi) <= 0.0, "bisection lost the sign change");
    }
    Ok((0.5 * (lo + hi), iterations))
}

/// One Newton step `x - f(x)/f'(x)`, guarded against a vanishing derivative.
pub fn newton_step(
    f: impl Fn(f64) -> f64,
    f_prime: impl Fn(f64) -> f64,
    x: f64,
) -> Result<f64> {
    let fx = f(x);
    let dfx = f_prime(x);
    if dfx.abs() < 1e-300 * (1.0 + fx.abs()) {
        return Err(Error::DerivativeVanished { x });
    }
    Ok(x - fx / dfx)
}

/// Safeguarded Newton inside a bracket: any step that leaves the bracket
/// (or a vanishing derivative) falls back to a bisection step, so the
/// sign-change invariant always holds.
pub fn newton_refine(
    f: impl Fn(f64) -> f64,
    f_prime: impl Fn(f64) -> f64,
    b: Bracket,
    opts: &SolveOptions,
) -> Result<(f64, u32)> {
    if b.f_lo == 0.0 {
        return Ok((b.lo, 0));
    }
    if b.f_hi == 0.0 {
        return Ok((b.hi, 0));
    }
    let mut lo = b.lo;
    let mut hi = b.hi;
    let mut f_lo = b.f_lo;
    let mut x = 0.5 * (lo + hi);
    let mut iterations = 0u32;
    loop {
        if hi - lo <= opts.tol {
            return Ok((x.clamp(lo, hi), iterations));
        }
        if iterations >= opts.max_iter {
            return Err(Error::Convergence { lo, hi, iterations });
        }
        let fx = f(x);
        iterations += 1;
        if fx == 0.0 {
            return Ok((x, iterations));
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        let next = match newton_step(&f, &f_prime, x) {
            Ok(n) if n > lo && n < hi => n,
            _ => 0.5 * (lo + hi),
        };
        // a sub-tol Newton step only happens near the root (a small
        // derivative would blow the step up, not shrink it)
        if (next - x).abs() <= opts.tol {
            return Ok((next.clamp(lo, hi), iterations));
        }
        x = next;
    }
}

/// Coefficients `(a2, a1, a0)` of the chord-circle intersection quadratic
/// `((A+B)^2 + 1) x^2 + (q - 2AB(A+B)) x + A^2 B^2 = 0`.
pub fn chord_quadratic(a: f64, b: f64, q: f64) -> Result<(f64, f64, f64)> {
    if a < 0.0 || b < 0.0 {
        return Err(Error::Precondition(format!("chord endpoints must be >= 0, got {a}, {b}")));
    }
    if a == b {
        return Err(Error::Precondition("chord endpoints must differ".into()));
    }
    if q >= 0.0 {
        return Err(Error::Precondition(format!("chord iteration requires q < 0, got {q}")));
    }
    let s = a + b;
    let p = a * b;
    Ok((s * s + 1.0, q - 2.0 * p * s, p * p))
}

/// Progress of one chord iteration: the bracket `(A, B)` on the parabola
/// and the latest chord-circle abscissa `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordState {
    pub a: f64,
    pub b: f64,
    pub q: f64,
    pub c: f64,
}

/// Initial bracket for the positive root of `x^3 + x + q`, `q < 0`.
///
/// The crossover between the two sub-intervals of `(0, -q)` sits at
/// `-q = 2`, where the root is exactly 1. Each candidate is sign-verified;
/// the full `(0, -q)` interval is the fallback.
fn chord_initial_bracket(q: f64) -> (f64, f64) {
    let f = |x: f64| (x * x + 1.0) * x + q;
    let mq = -q;
    let (lo, hi) = if mq < 2.0 {
        (mq / 2.0, mq.min(1.0))
    } else {
        (1.0, mq / 2.0)
    };
    if lo < hi && f(lo) * f(hi) <= 0.0 {
        (lo, hi)
    } else {
        (0.0, mq)
    }
}

/// Solves `x^3 + x + q = 0`, `q < 0`, by chord-conic iteration: the root is
/// the nontrivial intersection of the parabola `y = x^2` with the circle
/// through the origin centered at `(-q/2, 0)`. Each step intersects the
/// chord through `(A, A^2)`, `(B, B^2)` with the circle and moves the
/// endpoint whose side of the circle the new abscissa shares.
pub fn khayyam_chord_solve(f: &NormalForm, opts: &SolveOptions) -> Result<(f64, u32)> {
    if f.sign != Sign::Positive || f.q >= 0.0 {
        return Err(Error::Precondition(
            "chord iteration applies to x^3 + x + q with q < 0".into(),
        ));
    }
    let q = f.q;
    if -q == 2.0 {
        return Ok((1.0, 0)); // root exactly 1
    }
    let eval = |x: f64| (x * x + 1.0) * x + q;
    let (mut a, mut b) = chord_initial_bracket(q);
    let mut f_a = eval(a);
    let mut f_b = eval(b);
    if f_a == 0.0 {
        return Ok((a, 0));
    }
    if f_b == 0.0 {
        return Ok((b, 0));
    }
    let mut c_prev = f64::NAN;
    for iterations in 0..opts.max_iter {
        debug_assert!(f_a * f_b < 0.0, "chord bracket lost the sign change");
        if b - a <= opts.tol {
            return Ok((0.5 * (a + b), iterations));
        }
        let c = match chord_abscissa(a, b, q) {
            Some(c) if c > a && c < b => c,
            // degenerate chord geometry: take a bisection step instead
            _ => 0.5 * (a + b),
        };
        let f_c = eval(c);
        if f_c == 0.0 || (c - c_prev).abs() <= opts.tol {
            return Ok((c, iterations + 1));
        }
        // The parabola sits above the half-circle exactly where f > 0, so
        // f's sign tells which endpoint C replaces.
        if (f_c < 0.0) == (f_a < 0.0) {
            a = c;
            f_a = f_c;
        } else {
            b = c;
            f_b = f_c;
        }
        c_prev = c;
    }
    Err(Error::Convergence { lo: a, hi: b, iterations: opts.max_iter })
}

/// The chord-circle intersection abscissa inside `(A, B)`, if any.
fn chord_abscissa(a: f64, b: f64, q: f64) -> Option<f64> {
    let (a2, a1, a0) = chord_quadratic(a, b, q).ok()?;
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // stable quadratic roots
    let q_big = -0.5 * (a1 + a1.signum() * sq);
    let r1 = q_big / a2;
    let r2 = if q_big != 0.0 { a0 / q_big } else { -a1 / a2 };
    let (lo, hi) = (a.min(b), a.max(b));
    let in1 = r1 > lo && r1 < hi;
    let in2 = r2 > lo && r2 < hi;
    match (in1, in2) {
        (true, false) => Some(r1),
        (false, true) => Some(r2),
        (true, true) => {
            // cannot happen for a convex-concave crossing, but guarded:
            // prefer the one closer to the cubic's zero
            let f = |x: f64| (x * x + 1.0) * x + q;
            Some(if f(r1).abs() <= f(r2).abs() { r1 } else { r2 })
        }
        (false, false) => None,
    }
}

/// One solved root with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootFinding {
    pub value: f64,
    pub residual: f64,
    pub multiplicity: u32,
    pub interval: RootInterval,
    pub method: &'static str,
    pub iterations: u32,
}

/// All roots of one solve, ascending, plus anything non-fatal that came up.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct RootReport {
    pub roots: Vec<RootFinding>,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
}

impl RootReport {
    fn sort(&mut self) {
        self.roots.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    }
}

/// Refines every interval of a classification against `f` (derivative
/// `fp`), honoring the method choice. Exact points are reported as-is.
fn refine_classification(
    f: &dyn Fn(f64) -> f64,
    fp: &dyn Fn(f64) -> f64,
    cls: &Classification,
    opts: &SolveOptions,
    use_newton: bool,
) -> RootReport {
    let mut report = RootReport::default();
    if cls.boundary_snapped {
        report.warnings.push("input within tolerance of a regime boundary; classified as the boundary case".into());
    }
    for (iv, &m) in cls.intervals.iter().zip(&cls.multiplicities) {
        if iv.kind == IntervalKind::ExactPoint {
            report.roots.push(RootFinding {
                value: iv.lo,
                residual: f(iv.lo).abs(),
                multiplicity: m,
                interval: *iv,
                method: "structural",
                iterations: 0,
            });
            continue;
        }
        let bracket = match Bracket::new(f, iv.lo, iv.hi) {
            Ok(b) => b,
            Err(e) => {
                report.errors.push(format!("interval [{}, {}]: {e}", iv.lo, iv.hi));
                continue;
            }
        };
        let outcome = if use_newton {
            newton_refine(f, fp, bracket, opts)
        } else {
            bisect(f, bracket, opts)
        };
        match outcome {
            Ok((x, iterations)) => report.roots.push(RootFinding {
                value: x,
                residual: f(x).abs(),
                multiplicity: m,
                interval: *iv,
                method: if use_newton { "newton" } else { "bisection" },
                iterations,
            }),
            Err(e) => report.errors.push(format!("interval [{}, {}]: {e}", iv.lo, iv.hi)),
        }
    }
    report.sort();
    report
}

fn map_interval(iv: &RootInterval, map: &AffineMap) -> RootInterval {
    let (a, b) = (map.apply(iv.lo), map.apply(iv.hi));
    RootInterval { lo: a.min(b), hi: a.max(b), kind: iv.kind }
}

/// Solves a reduced form. `Auto` takes the closed form in single-root
/// regimes and interval refinement in the three-root regime; explicit
/// methods are honored or refused if the regime does not admit them.
pub fn solve_reduced(r: &ReducedForm, opts: &SolveOptions) -> Result<RootReport> {
    let opts = opts.validated()?;
    let cls = classify::classify_reduced(r);
    let f = |x: f64| r.eval(x);
    let fp = |x: f64| 3.0 * x * x + r.p;
    let single_simple = cls.count == 1 && cls.multiplicities == [1];

    match opts.method {
        Method::Cardano => {
            if !single_simple {
                return Err(Error::Regime(
                    "closed form refused: not a single-real-root regime".into(),
                ));
            }
            let trace = closed_form::cardano_reduced(r)?;
            let mut report = RootReport::default();
            if cls.boundary_snapped {
                report.warnings.push("input within tolerance of a regime boundary".into());
            }
            report.roots.push(RootFinding {
                value: trace.root,
                residual: f(trace.root).abs(),
                multiplicity: 1,
                interval: cls.intervals[0],
                method: "cardano",
                iterations: 0,
            });
            Ok(report)
        }
        Method::Chord => solve_reduced_chord(r, &cls, &opts),
        Method::Bisection => Ok(refine_classification(&f, &fp, &cls, &opts, false)),
        Method::Newton => Ok(refine_classification(&f, &fp, &cls, &opts, true)),
        Method::Auto => {
            if single_simple {
                // cardano_reduced covers every single-simple-root regime
                match closed_form::cardano_reduced(r) {
                    Ok(trace) => {
                        let mut report = RootReport::default();
                        if cls.boundary_snapped {
                            report
                                .warnings
                                .push("input within tolerance of a regime boundary".into());
                        }
                        report.roots.push(RootFinding {
                            value: trace.root,
                            residual: f(trace.root).abs(),
                            multiplicity: 1,
                            interval: cls.intervals[0],
                            method: "cardano",
                            iterations: 0,
                        });
                        Ok(report)
                    }
                    Err(_) => Ok(refine_classification(&f, &fp, &cls, &opts, true)),
                }
            } else {
                Ok(refine_classification(&f, &fp, &cls, &opts, true))
            }
        }
    }
}

/// Chord method on a reduced form: requires `p > 0`; a `q > 0` input is
/// reflected through `x -> -x` first.
fn solve_reduced_chord(
    r: &ReducedForm,
    cls: &Classification,
    opts: &SolveOptions,
) -> Result<RootReport> {
    if r.p <= 0.0 {
        return Err(Error::Regime(
            "chord iteration requires the positive-linear-term regime (p > 0)".into(),
        ));
    }
    let mut report = RootReport::default();
    if r.q == 0.0 {
        report.roots.push(RootFinding {
            value: 0.0,
            residual: 0.0,
            multiplicity: 1,
            interval: RootInterval::exact(0.0),
            method: "structural",
            iterations: 0,
        });
        return Ok(report);
    }
    let reflected = r.q > 0.0;
    let work = if reflected { ReducedForm { p: r.p, q: -r.q } } else { *r };
    let (nf, map) = normalize(&work)?;
    let (y, iterations) = khayyam_chord_solve(&nf, opts)?;
    let x = map.apply(y);
    let value = if reflected { -x } else { x };
    report.roots.push(RootFinding {
        value,
        residual: r.eval(value).abs(),
        multiplicity: 1,
        interval: cls.intervals[0],
        method: "chord",
        iterations,
    });
    Ok(report)
}

/// Solves a general cubic: depress, solve, shift every root (and interval)
/// back, and recompute residuals against the original coefficients.
pub fn solve_general(c: &GeneralCubic, opts: &SolveOptions) -> Result<RootReport> {
    let (r, map) = reduce_general(c);
    let mut report = solve_reduced(&r, opts)?;
    for root in &mut report.roots {
        root.value = map.apply(root.value);
        root.interval = map_interval(&root.interval, &map);
        root.residual = c.eval(root.value).abs();
    }
    report.sort();
    Ok(report)
}

/// Solves a Tusi form. The three-root regime refines the unit intervals
/// directly; single-root regimes go through the reduced form's closed form
/// and shift back by 1/3.
pub fn solve_tusi(t: &TusiForm, opts: &SolveOptions) -> Result<RootReport> {
    let opts = opts.validated()?;
    let cls = classify::classify_tusi(t);
    let f = |a: f64| t.eval(a);
    let fp = |a: f64| 3.0 * a * a - 2.0 * a;
    if cls.count == 1 && cls.multiplicities == [1] && matches!(opts.method, Method::Auto | Method::Cardano) {
        let (r, map) = tusi_to_reduced(t);
        let trace = closed_form::cardano_reduced(&r)?;
        let alpha = map.apply(trace.root);
        let mut report = RootReport::default();
        report.roots.push(RootFinding {
            value: alpha,
            residual: f(alpha).abs(),
            multiplicity: 1,
            interval: cls.intervals[0],
            method: "cardano",
            iterations: 0,
        });
        return Ok(report);
    }
    if opts.method == Method::Cardano {
        return Err(Error::Regime("closed form refused: not a single-real-root regime".into()));
    }
    if opts.method == Method::Chord {
        return Err(Error::Regime("chord iteration does not apply to this form".into()));
    }
    let use_newton = matches!(opts.method, Method::Auto | Method::Newton);
    Ok(refine_classification(&f, &fp, &cls, &opts, use_newton))
}

/// Solves the degree-n family by bisection on the classified intervals.
pub fn solve_generalized(g: &GeneralizedTusiForm, opts: &SolveOptions) -> Result<RootReport> {
    let opts = opts.validated()?;
    let cls = classify::classify_generalized(g)?;
    let n = g.n;
    let f = |a: f64| g.eval(a);
    let fp = move |a: f64| {
        let k = n as i32;
        (k as f64 - 1.0) * a.powi(k - 2) - k as f64 * a.powi(k - 1)
    };
    Ok(refine_classification(&f, &fp, &cls, &opts, false))
}

/// Solves the quadratic form constructively.
pub fn solve_quadratic(qt: &QuadraticTusiForm) -> RootReport {
    let cls = classify::classify_quadratic(qt);
    let mut report = RootReport::default();
    if cls.boundary_snapped {
        report.warnings.push("input within tolerance of a regime boundary".into());
    }
    for (iv, &m) in cls.intervals.iter().zip(&cls.multiplicities) {
        report.roots.push(RootFinding {
            value: iv.lo,
            residual: qt.eval(iv.lo).abs(),
            multiplicity: m,
            interval: *iv,
            method: "quadratic_formula",
            iterations: 0,
        });
    }
    report.sort();
    report
}

/// Precomputed table of `phi(alpha) = alpha^2 - alpha^3` over `[-1/3, 1]`,
/// split into its three monotone segments; inverse lookup approximates the
/// three roots of the delta-in-(0,1) regime to within one grid cell.
#[derive(Debug, Clone)]
pub struct LookupTable {
    /// One sampled grid per monotone segment: [-1/3, 0] (decreasing),
    /// [0, 2/3] (increasing), [2/3, 1] (decreasing). Each segment's values
    /// span the full [0, 4/27] range.
    segments: [Segment; 3],
}

#[derive(Debug, Clone)]
struct Segment {
    alphas: Vec<f64>,
    values: Vec<f64>,
    increasing: bool,
}

impl Segment {
    fn sample(lo: f64, hi: f64, n: usize, increasing: bool) -> Self {
        let step = (hi - lo) / n as f64;
        let alphas: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
        let values = alphas.iter().map(|&a| phi(a)).collect();
        Segment { alphas, values, increasing }
    }

    /// Inverse lookup of a monotone segment by binary search plus linear
    /// interpolation within the bracketing cell.
    fn invert(&self, target: f64) -> f64 {
        let i = if self.increasing {
            self.values.partition_point(|&v| v < target)
        } else {
            self.values.partition_point(|&v| v > target)
        };
        if i == 0 {
            return self.alphas[0];
        }
        if i == self.values.len() {
            return *self.alphas.last().unwrap();
        }
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        if v0 == v1 {
            return 0.5 * (self.alphas[i - 1] + self.alphas[i]);
        }
        let t = (target - v0) / (v1 - v0);
        self.alphas[i - 1] + t.clamp(0.0, 1.0) * (self.alphas[i] - self.alphas[i - 1])
    }

    fn step(&self) -> f64 {
        self.alphas[1] - self.alphas[0]
    }
}

impl LookupTable {
    pub fn build(resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidInput("lookup table resolution must be >= 2".into()));
        }
        let n = resolution;
        Ok(LookupTable {
            segments: [
                Segment::sample(-1.0 / 3.0, 0.0, n, false),
                Segment::sample(0.0, 2.0 / 3.0, n, true),
                Segment::sample(2.0 / 3.0, 1.0, n, false),
            ],
        })
    }

    /// The coarsest per-segment grid spacing.
    pub fn grid_step(&self) -> f64 {
        self.segments.iter().map(Segment::step).fold(0.0, f64::max)
    }

    /// Approximate roots of `alpha^2 - alpha^3 = (4/27) delta` for
    /// `delta` in `[0, 1]`. One hit per monotone segment (coincident hits
    /// at segment seams deduplicated); each within one grid cell of truth.
    pub fn query(&self, delta: f64) -> Vec<f64> {
        let target = (delta * 4.0 / 27.0).clamp(0.0, 4.0 / 27.0);
        let mut out: Vec<f64> = self.segments.iter().map(|s| s.invert(target)).collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() <= self.grid_step());
        out
    }
}
